#include "pvt/thermal.hpp"
#include "pvt/constants.hpp"
#include "pvt/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pvt {

double conduction_coefficient(double thickness, double conductivity) {
    if (!(thickness > 0.0))
        throw std::invalid_argument("conduction_coefficient: thickness must be > 0, got " +
                                    std::to_string(thickness));
    if (!(conductivity > 0.0))
        throw std::invalid_argument("conduction_coefficient: conductivity must be > 0, got " +
                                    std::to_string(conductivity));
    return conductivity / thickness;
}

double back_loss_coefficient(const CollectorDesign& d) {
    // insulation conduction in series with the back-surface film
    return 1.0 / (d.L_i / d.K_i + 1.0 / d.h_i);
}

double sky_temperature(double T_a) {
    const double Ta_K = to_kelvin(T_a);
    if (!(Ta_K > 0.0))
        throw std::invalid_argument("sky_temperature: ambient below absolute zero");
    return 0.0375636 * std::pow(Ta_K, 1.5) + 0.32 * Ta_K;
}

double radiative_coefficient(double T_c, double T_sky, double T_a, double emissivity) {
    const double Tc_K = to_kelvin(T_c);
    const double Ta_K = to_kelvin(T_a);
    if (!(Tc_K > Ta_K))
        throw std::domain_error("radiative_coefficient: ambient reference degenerate (T_c <= T_a)");
    const double num = (Tc_K * Tc_K + T_sky * T_sky) * (Tc_K + T_sky) * (Tc_K - T_sky);
    return constants::stefan_boltzmann * emissivity * num / (Tc_K - Ta_K);
}

double radiative_coefficient_sky_referenced(double T_c, double T_sky, double emissivity) {
    const double Tc_K = to_kelvin(T_c);
    return constants::stefan_boltzmann * emissivity * (Tc_K * Tc_K + T_sky * T_sky) *
           (Tc_K + T_sky);
}

double top_loss_coefficient(const CollectorDesign& d, double T_c, double T_a,
                            bool radiative_correction) {
    const double h_wind = 5.7 + 3.8 * d.v;
    double h_out = h_wind;
    if (radiative_correction) {
        const double T_sky = sky_temperature(T_a);
        if (T_c > T_a)
            h_out += radiative_coefficient(T_c, T_sky, T_a, d.emissivity);
        else
            h_out += radiative_coefficient_sky_referenced(T_c, T_sky, d.emissivity);
    }
    return 1.0 / (d.L_g / d.K_g + 1.0 / h_out);
}

double edge_loss_coefficient(const CollectorDesign& d) {
    return d.UA_edge / d.A_c;
}

namespace {

void check_coefficients(const DerivedCoefficients& c, const CollectorDesign& d) {
    auto bad = [](const char* what, double value) {
        throw validation_error(std::string("DerivedCoefficients: ") + what + " (" +
                               std::to_string(value) + ") violates its invariant");
    };
    if (!(c.U_t > 0.0)) bad("U_t", c.U_t);
    if (!(c.U_T > 0.0)) bad("U_T", c.U_T);
    if (!(c.U_b > 0.0)) bad("U_b", c.U_b);
    if (c.U_e < 0.0) bad("U_e", c.U_e);
    if (!(c.h_p1 > 0.0 && c.h_p1 < 1.0)) bad("h_p1", c.h_p1);
    if (!(c.h_p2 > 0.0 && c.h_p2 < 1.0)) bad("h_p2", c.h_p2);
    if (!(c.F_prime > 0.0 && c.F_prime <= 1.0)) bad("F_prime", c.F_prime);
    if (!(c.F_dblprime > 0.0 && c.F_dblprime < 1.0)) bad("F_dblprime", c.F_dblprime);
    if (!(c.F_R < c.F_prime)) bad("F_R", c.F_R);
    if (!(c.U_tT < c.U_t && c.U_tT < c.U_T)) bad("U_tT", c.U_tT);
    if (!(c.U_tw < d.h_T && c.U_tw < c.U_tT)) bad("U_tw", c.U_tw);
    if (!(c.m_decay > 0.0)) bad("m_decay", c.m_decay);
    if (!(c.alpha_tau_eff > 0.0)) bad("alpha_tau_eff", c.alpha_tau_eff);
}

} // namespace

DerivedCoefficients derive_coefficients(const CollectorDesign& d, double T_c_guess, double T_a,
                                        const ThermalOptions& opts) {
    DerivedCoefficients c{};
    c.U_t = top_loss_coefficient(d, T_c_guess, T_a, opts.radiative_correction);
    c.U_T = conduction_coefficient(d.L_T, d.K_T);
    c.U_b = back_loss_coefficient(d);
    c.U_e = opts.edge_loss ? edge_loss_coefficient(d) : 0.0;

    c.U_tT = c.U_t * c.U_T / (c.U_t + c.U_T);
    c.h_p1 = c.U_T / (c.U_t + c.U_T);
    c.h_p2 = d.h_T / (d.h_T + c.U_tT);
    c.U_tw = d.h_T * c.U_tT / (d.h_T + c.U_tT);
    c.U_L = c.U_tw + c.U_b + c.U_e;

    c.alpha_tau_eff =
        d.tau_g * (d.alpha_c * d.beta_c + d.alpha_T * (1.0 - d.beta_c) - d.eta_c_ref * d.beta_c);

    // Hottel-Whillier efficiency factor with a straight fin between tubes.
    const double fin_width = (d.W - d.D) / 2.0;
    const double mu = std::sqrt(c.U_L / d.plate_conductance);
    const double fin_eff = std::tanh(mu * fin_width) / (mu * fin_width);
    const double tube_term = 1.0 / (c.U_L * (d.D + (d.W - d.D) * fin_eff));
    const double film_term = 1.0 / (M_PI * d.D * d.h_T);
    c.F_prime = (1.0 / c.U_L) / (d.W * (tube_term + film_term));

    const double cap_rate = d.m_dot * d.C_w;
    const double ntu = d.A_c * c.U_L * c.F_prime / cap_rate;
    c.F_dblprime = (1.0 - std::exp(-ntu)) / ntu;
    c.F_R = c.F_prime * c.F_dblprime;

    c.m_decay = (d.UA_tank + d.A_c * c.F_R * c.U_L) / (d.M_w * d.C_w);

    check_coefficients(c, d);
    return c;
}

double tank_forcing(const DerivedCoefficients& c, const CollectorDesign& d, double G_avg,
                    double T_a_avg) {
    if (G_avg < 0.0)
        throw std::invalid_argument("tank_forcing: G_avg must be >= 0, got " +
                                    std::to_string(G_avg));
    const double gain = d.A_c * c.F_R * c.h_p1 * c.h_p2 * c.alpha_tau_eff * G_avg;
    const double loss_conductance = d.UA_tank + d.A_c * c.F_R * c.U_L;
    return (gain + T_a_avg * loss_conductance) / (d.M_w * d.C_w);
}

double step_tank(double T_w_prev, double f_bar, double m_decay, double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("step_tank: dt must be > 0, got " + std::to_string(dt));
    if (!(m_decay > 0.0))
        throw std::invalid_argument("step_tank: m_decay must be > 0, got " +
                                    std::to_string(m_decay));
    const double decay = std::exp(-m_decay * dt);
    return (f_bar / m_decay) * (1.0 - decay) + T_w_prev * decay;
}

double back_surface_temperature(const DerivedCoefficients& c, const CollectorDesign& d, double G,
                                double T_a, double T_w) {
    return (c.h_p1 * c.alpha_tau_eff * G + c.U_tT * T_a + d.h_T * T_w) / (c.U_tT + d.h_T);
}

double cell_temperature(const DerivedCoefficients& c, const CollectorDesign& d, double G,
                        double T_a, double T_bs, double eta_c) {
    const double absorbed = d.tau_g * (d.alpha_c * G * d.beta_c + (1.0 - d.beta_c) * d.alpha_T * G);
    const double extracted = eta_c * d.tau_g * G * d.beta_c;
    return (absorbed - extracted + c.U_t * T_a + c.U_T * T_bs) / (c.U_t + c.U_T);
}

double cell_temperature(const DerivedCoefficients& c, const CollectorDesign& d, double G,
                        double T_a, double T_bs) {
    return cell_temperature(c, d, G, T_a, T_bs, d.eta_c_ref);
}

double useful_energy(const DerivedCoefficients& c, const CollectorDesign& d, double G, double T_a,
                     double T_in) {
    return d.A_c * c.F_R *
           (c.h_p1 * c.h_p2 * c.alpha_tau_eff * G - c.U_L * (T_in - T_a));
}

double instantaneous_efficiency(double Q_u, double A_c, double G) {
    if (!(G > 0.0))
        throw std::domain_error("instantaneous_efficiency: undefined at G = 0");
    return Q_u / (A_c * G);
}

} // namespace pvt
