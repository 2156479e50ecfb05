#ifndef PVT_DIODE_HPP
#define PVT_DIODE_HPP

#include "pvt/datasheet.hpp"

#include <vector>

namespace pvt {

/// Which equivalent circuit the model solves.
enum class CircuitVariant {
    ideal,        // current source + diode
    series,       // + series resistance
    series_shunt, // + shunt resistance
};

const char* to_string(CircuitVariant v);
CircuitVariant circuit_variant_from_string(const std::string& name);

/// Constants extracted once from the datasheet at reference conditions.
struct ReferenceParams {
    double a_ref;    // modified ideality factor, V (module level)
    double I_RS_ref; // reverse saturation current at reference, A
    double R_s;      // series resistance, ohm
    double R_sh;     // shunt resistance, ohm
};

/// Single-diode model at one operating condition (G, T_c).
struct DiodeModel {
    double I_ph; // photocurrent, A
    double I_s;  // saturation current, A
    double a;    // modified ideality factor, V
    double R_s;  // series resistance, ohm (0 for ideal)
    double R_sh; // shunt resistance, ohm (infinite for ideal/series)
    CircuitVariant variant = CircuitVariant::series_shunt;
};

struct OperatingPoint {
    double V; // terminal voltage, V
    double I; // terminal current, A
    double P; // power, W; always V * I
};

// --- parameter extraction ---------------------------------------------------

/// Modified ideality factor from the four datasheet points.
/// Throws validation_error when the denominator degenerates.
double ideality_factor(const DatasheetSpec& ds);

/// I_sc_ref * exp(-V_oc_ref / a_ref)
double reverse_saturation_current(const DatasheetSpec& ds, double a_ref);

/// [a_ref ln(1 - Imp/Isc) - Vmp + Voc] / Imp, clamped to 0 when marginally
/// negative; throws validation_error below -1e-3 (inconsistent datasheet).
double series_resistance(const DatasheetSpec& ds, double a_ref);

/// Full chain a_ref -> I_RS_ref -> R_s, with R_sh from the datasheet.
ReferenceParams extract_reference_params(const DatasheetSpec& ds);

// --- operating-condition dependence ------------------------------------------

/// [I_sc_ref + K_I (T_c - T_ref)] * G / G_ref
double photocurrent(const DatasheetSpec& ds, double G, double T_c);

/// Cube-law temperature dependence with the per-cell diode scale a_ref/N_s:
/// I_RS_ref * (T/Tref)^3 * exp[(E_g / (a_ref/N_s)) * (1 - Tref/T)].
double saturation_current(const ReferenceParams& ref, const DatasheetSpec& ds, double T_c);

/// Builds the model solved at (G, T_c). The saturation current is anchored so
/// the variant's own open-circuit point sits at V_oc_ref under reference
/// conditions (for ideal/series this equals the printed extraction formula;
/// for series_shunt it additionally carries the V_oc/R_sh leakage).
DiodeModel build_model(const ReferenceParams& ref, const DatasheetSpec& ds,
                       double G, double T_c,
                       CircuitVariant variant = CircuitVariant::series_shunt);

// --- solving ----------------------------------------------------------------

/// Terminal current at voltage V: damped Newton on g(I) = I - rhs(I) with
/// bisection fallback. Residual |g| < 1e-9 A on return; throws solver_error
/// if no bracket exists (malformed model).
double solve_current(const DiodeModel& model, double V);

/// Open-circuit voltage of the model itself, by root bracketing on I(V) = 0.
double open_circuit_voltage(const DiodeModel& model);

/// n_points operating points at uniform voltage spacing on [0, V_oc_model].
std::vector<OperatingPoint> iv_curve(const DiodeModel& model, int n_points);

/// Golden-section maximum of P(V) = V * I(V) on [0, V_oc_model], voltage
/// tolerance 1e-4 V.
OperatingPoint max_power_point(const DiodeModel& model);

/// (V_mp * I_mp) / (A_c * G); throws std::domain_error when G = 0.
double electrical_efficiency(const OperatingPoint& mpp, double A_c, double G);

} // namespace pvt

#endif
