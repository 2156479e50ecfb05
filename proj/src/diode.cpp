#include "pvt/diode.hpp"
#include "pvt/constants.hpp"
#include "pvt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pvt {

namespace {

constexpr double kResidualTol = 1e-9; // amperes
constexpr int kNewtonMaxIter = 100;
constexpr int kMaxHalvings = 8;

// exp with the argument capped so a wildly off Newton iterate cannot overflow.
double safe_exp(double x) {
    return std::exp(std::min(x, 500.0));
}

} // namespace

const char* to_string(CircuitVariant v) {
    switch (v) {
    case CircuitVariant::ideal: return "ideal";
    case CircuitVariant::series: return "series";
    case CircuitVariant::series_shunt: return "series_shunt";
    }
    return "?";
}

CircuitVariant circuit_variant_from_string(const std::string& name) {
    if (name == "ideal") return CircuitVariant::ideal;
    if (name == "series") return CircuitVariant::series;
    if (name == "series_shunt") return CircuitVariant::series_shunt;
    throw std::invalid_argument("unknown circuit variant \"" + name + "\"");
}

double ideality_factor(const DatasheetSpec& ds) {
    validate(ds);
    const double ratio = ds.I_mp_ref / ds.I_sc_ref;
    const double denom = ds.I_mp_ref / (ds.I_sc_ref - ds.I_mp_ref) + std::log(1.0 - ratio);
    if (std::abs(denom) < 1e-12)
        throw validation_error("ideality_factor: degenerate datasheet (denominator ~ 0)");
    return (2.0 * ds.V_mp_ref - ds.V_oc_ref) / denom;
}

double reverse_saturation_current(const DatasheetSpec& ds, double a_ref) {
    if (!(a_ref > 0.0))
        throw std::invalid_argument("reverse_saturation_current: a_ref must be > 0");
    return ds.I_sc_ref * std::exp(-ds.V_oc_ref / a_ref);
}

double series_resistance(const DatasheetSpec& ds, double a_ref) {
    if (!(a_ref > 0.0))
        throw std::invalid_argument("series_resistance: a_ref must be > 0");
    const double rs = (a_ref * std::log(1.0 - ds.I_mp_ref / ds.I_sc_ref) - ds.V_mp_ref +
                       ds.V_oc_ref) /
                      ds.I_mp_ref;
    if (rs < -1e-3)
        throw validation_error("series_resistance: datasheet inconsistent, R_s = " +
                               std::to_string(rs) + " ohm");
    return std::max(rs, 0.0);
}

ReferenceParams extract_reference_params(const DatasheetSpec& ds) {
    ReferenceParams ref{};
    ref.a_ref = ideality_factor(ds);
    ref.I_RS_ref = reverse_saturation_current(ds, ref.a_ref);
    ref.R_s = series_resistance(ds, ref.a_ref);
    ref.R_sh = ds.R_sh_fixed;
    return ref;
}

double photocurrent(const DatasheetSpec& ds, double G, double T_c) {
    if (G < 0.0)
        throw std::invalid_argument("photocurrent: G must be >= 0, got " + std::to_string(G));
    return (ds.I_sc_ref + ds.K_I * (T_c - ds.T_ref)) * G / ds.G_ref;
}

double saturation_current(const ReferenceParams& ref, const DatasheetSpec& ds, double T_c) {
    const double T = to_kelvin(T_c);
    const double T_r = to_kelvin(ds.T_ref);
    if (!(T > 0.0))
        throw std::invalid_argument("saturation_current: T_c below absolute zero");
    const double a_cell_ref = ref.a_ref / ds.N_s;
    const double exponent = constants::silicon_band_gap / a_cell_ref * (1.0 - T_r / T);
    const double cube = (T / T_r) * (T / T_r) * (T / T_r);
    return ref.I_RS_ref * cube * std::exp(exponent);
}

DiodeModel build_model(const ReferenceParams& ref, const DatasheetSpec& ds, double G, double T_c,
                       CircuitVariant variant) {
    DiodeModel m{};
    m.variant = variant;
    m.I_ph = photocurrent(ds, G, T_c);
    m.a = ref.a_ref * to_kelvin(T_c) / to_kelvin(ds.T_ref);
    m.R_s = variant == CircuitVariant::ideal ? 0.0 : ref.R_s;
    m.R_sh = variant == CircuitVariant::series_shunt ? ref.R_sh
                                                     : std::numeric_limits<double>::infinity();

    // Saturation anchor: the variant's open-circuit point must sit at V_oc_ref
    // under reference conditions. Without a shunt this reduces to
    // I_sc exp(-Voc/a); with one, the leakage I_sh(Voc) comes off the top.
    const double I_ph_ref = ds.I_sc_ref;
    const double leak = variant == CircuitVariant::series_shunt ? ds.V_oc_ref / ref.R_sh : 0.0;
    const double I_s0 = (I_ph_ref - leak) / (std::exp(ds.V_oc_ref / ref.a_ref) - 1.0);
    const ReferenceParams anchored{ref.a_ref, I_s0, ref.R_s, ref.R_sh};
    m.I_s = saturation_current(anchored, ds, T_c);
    return m;
}

namespace {

// Right-hand side of the implicit relation I = rhs(I) at fixed V.
double rhs_current(const DiodeModel& m, double V, double I) {
    const double V_j = V + I * m.R_s;
    double i = m.I_ph - m.I_s * (safe_exp(V_j / m.a) - 1.0);
    if (std::isfinite(m.R_sh))
        i -= V_j / m.R_sh;
    return i;
}

double residual(const DiodeModel& m, double V, double I) {
    return I - rhs_current(m, V, I);
}

// d residual / dI
double residual_slope(const DiodeModel& m, double V, double I) {
    const double V_j = V + I * m.R_s;
    double slope = 1.0 + m.I_s * safe_exp(V_j / m.a) * (m.R_s / m.a);
    if (std::isfinite(m.R_sh))
        slope += m.R_s / m.R_sh;
    return slope;
}

double bisect_current(const DiodeModel& m, double V) {
    // start from the physical bracket; expand it for reverse-biased points
    // past V_oc where the diode pulls the terminal current far negative
    double lo = -m.I_ph - 1.0;
    double hi = 2.0 * m.I_ph + 1.0;
    double g_lo = residual(m, V, lo);
    double g_hi = residual(m, V, hi);
    for (int i = 0; i < 60 && g_lo > 0.0; ++i) {
        lo = 2.0 * lo - hi;
        g_lo = residual(m, V, lo);
    }
    for (int i = 0; i < 60 && g_hi < 0.0; ++i) {
        hi = 2.0 * hi - lo;
        g_hi = residual(m, V, hi);
    }
    if (g_lo * g_hi > 0.0)
        throw solver_error("solve_current: no bracket on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "] at V = " + std::to_string(V));
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = residual(m, V, mid);
        if (std::abs(g_mid) < kResidualTol)
            return mid;
        if (g_lo * g_mid <= 0.0) {
            hi = mid;
            g_hi = g_mid;
        } else {
            lo = mid;
            g_lo = g_mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

double solve_current(const DiodeModel& model, double V) {
    if (!(model.I_ph >= 0.0) || !(model.I_s > 0.0) || !(model.a > 0.0))
        throw std::invalid_argument("solve_current: model violates its invariants");

    double I = model.I_ph; // short-circuit-side guess
    double g = residual(model, V, I);
    for (int iter = 0; iter < kNewtonMaxIter; ++iter) {
        if (std::abs(g) < kResidualTol)
            return I;
        const double slope = residual_slope(model, V, I);
        double step = g / slope;
        // halve the step until the residual actually shrinks
        double I_next = I - step;
        double g_next = residual(model, V, I_next);
        for (int h = 0; h < kMaxHalvings && std::abs(g_next) >= std::abs(g); ++h) {
            step *= 0.5;
            I_next = I - step;
            g_next = residual(model, V, I_next);
        }
        if (std::abs(g_next) >= std::abs(g))
            break; // damping exhausted; bisection below
        I = I_next;
        g = g_next;
    }
    if (std::abs(g) < kResidualTol)
        return I;
    return bisect_current(model, V);
}

double open_circuit_voltage(const DiodeModel& model) {
    if (model.I_ph <= 0.0)
        return 0.0;
    // analytic point for the unshunted diode, upper bound for the shunted one
    double hi = model.a * std::log(model.I_ph / model.I_s + 1.0);
    double lo = 0.0;
    double I_hi = solve_current(model, hi);
    for (int i = 0; i < 8 && I_hi > 0.0; ++i) {
        lo = hi;
        hi *= 1.25;
        I_hi = solve_current(model, hi);
    }
    if (I_hi > 0.0)
        throw solver_error("open_circuit_voltage: failed to bracket I(V) = 0");
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (solve_current(model, mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<OperatingPoint> iv_curve(const DiodeModel& model, int n_points) {
    if (n_points < 2)
        throw std::invalid_argument("iv_curve: n_points must be >= 2, got " +
                                    std::to_string(n_points));
    const double V_oc = open_circuit_voltage(model);
    std::vector<OperatingPoint> points;
    points.reserve(static_cast<size_t>(n_points));
    for (int k = 0; k < n_points; ++k) {
        const double V = V_oc * static_cast<double>(k) / static_cast<double>(n_points - 1);
        const double I = solve_current(model, V);
        points.push_back({V, I, V * I});
    }
    return points;
}

OperatingPoint max_power_point(const DiodeModel& model) {
    const double V_oc = open_circuit_voltage(model);
    auto power = [&](double V) { return V * solve_current(model, V); };

    // golden-section search; P(V) is unimodal on [0, V_oc] for physical models
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0, hi = V_oc;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double p1 = power(x1), p2 = power(x2);
    while (hi - lo > 1e-4) {
        if (p1 < p2) {
            lo = x1;
            x1 = x2;
            p1 = p2;
            x2 = lo + inv_phi * (hi - lo);
            p2 = power(x2);
        } else {
            hi = x2;
            x2 = x1;
            p2 = p1;
            x1 = hi - inv_phi * (hi - lo);
            p1 = power(x1);
        }
    }
    const double V = 0.5 * (lo + hi);
    const double I = solve_current(model, V);
    return {V, I, V * I};
}

double electrical_efficiency(const OperatingPoint& mpp, double A_c, double G) {
    if (!(G > 0.0))
        throw std::domain_error("electrical_efficiency: undefined at G = 0");
    if (!(A_c > 0.0))
        throw std::invalid_argument("electrical_efficiency: A_c must be > 0");
    return mpp.P / (A_c * G);
}

} // namespace pvt
