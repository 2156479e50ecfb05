#ifndef PVT_THERMAL_HPP
#define PVT_THERMAL_HPP

#include "pvt/collector_design.hpp"

namespace pvt {

/// Switches for the two optional loss corrections; both off gives the plain
/// constant-coefficient loss model.
struct ThermalOptions {
    bool radiative_correction = true; // recompute the top loss from wind + sky radiation
    bool edge_loss = true;            // include UA_edge / A_c in the overall loss
};

/// Every heat-transfer coefficient and collector factor derived from a design.
/// Recomputed once per time step; treated as constant within a step.
struct DerivedCoefficients {
    double U_t;      // top loss, cell to ambient through the glass, W/m^2.K
    double U_T;      // cell-to-Tedlar conduction, W/m^2.K
    double U_b;      // back loss through insulation, W/m^2.K
    double U_e;      // edge loss referred to aperture area, W/m^2.K
    double U_tT;     // glass-to-Tedlar overall, W/m^2.K
    double U_tw;     // glass-to-water overall, W/m^2.K
    double U_L;      // overall loss U_tw + U_b + U_e, W/m^2.K
    double h_p1;     // penalty factor, cell/Tedlar interface
    double h_p2;     // penalty factor, Tedlar/fluid interface
    double alpha_tau_eff; // effective transmittance-absorptance product
    double F_prime;  // collector efficiency factor
    double F_dblprime; // collector flow factor
    double F_R;      // heat removal factor = F' * F''
    double m_decay;  // tank relaxation rate, 1/s
};

/// Per-step thermal outputs.
struct ThermalState {
    double T_w;   // tank water temperature, degC
    double T_bs;  // Tedlar back-surface temperature, degC
    double T_c;   // cell temperature, degC
    double Q_u;   // useful energy rate, W (negative values reported as-is)
    double eta_i; // instantaneous efficiency (0 when G = 0)
};

// --- elementary coefficients ---------------------------------------------

/// conductivity / thickness, W/m^2.K
double conduction_coefficient(double thickness, double conductivity);

/// (L_i/K_i + 1/h_i)^-1
double back_loss_coefficient(const CollectorDesign& d);

/// Effective radiative sink temperature of the sky, kelvin.
/// Both terms use ambient kelvin: 0.0375636 * Ta_K^1.5 + 0.32 * Ta_K.
double sky_temperature(double T_a);

/// Cell-to-sky radiation linearized against the cell-ambient difference:
/// sigma*eps*(Tc^2+Tsky^2)(Tc+Tsky)(Tc-Tsky)/(Tc-Ta), all kelvin.
/// Requires T_c > T_a; throws std::domain_error at or below it, in which
/// case callers use the sky-referenced form below.
double radiative_coefficient(double T_c, double T_sky, double T_a, double emissivity);

/// Fallback linearization sigma*eps*(Tc^2+Tsky^2)(Tc+Tsky), used when the
/// ambient reference is degenerate (T_c <= T_a).
double radiative_coefficient_sky_referenced(double T_c, double T_sky, double emissivity);

/// Glass conduction in series with wind convection (5.7 + 3.8 v) plus, when
/// the radiative correction is on, the cell-to-sky radiative coefficient.
/// With the correction off and v = 1 m/s this reproduces the classic 9.24.
double top_loss_coefficient(const CollectorDesign& d, double T_c, double T_a,
                            bool radiative_correction);

/// UA_edge / A_c
double edge_loss_coefficient(const CollectorDesign& d);

// --- the full chain --------------------------------------------------------

/// Populates every derived coefficient. T_c_guess enters only through the
/// radiative top-loss correction (pass the previous step's cell temperature).
/// Throws validation_error if the result violates its own invariants, which
/// signals a bad design record.
DerivedCoefficients derive_coefficients(const CollectorDesign& d, double T_c_guess,
                                        double T_a, const ThermalOptions& opts = {});

// --- per-step relations -----------------------------------------------------

/// Tank forcing term, degC/s, from interval-averaged irradiance and ambient.
double tank_forcing(const DerivedCoefficients& c, const CollectorDesign& d,
                    double G_avg, double T_a_avg);

/// Exact one-step integrator of dTw/dt + m*Tw = f with constant f over dt.
double step_tank(double T_w_prev, double f_bar, double m_decay, double dt);

/// Back-surface temperature from the cell/Tedlar balance.
double back_surface_temperature(const DerivedCoefficients& c, const CollectorDesign& d,
                                double G, double T_a, double T_w);

/// Cell temperature from the top-surface balance. eta_c is the electrical
/// conversion efficiency debited from the absorbed flux; the overload uses
/// the design's constant reference value.
double cell_temperature(const DerivedCoefficients& c, const CollectorDesign& d,
                        double G, double T_a, double T_bs, double eta_c);
double cell_temperature(const DerivedCoefficients& c, const CollectorDesign& d,
                        double G, double T_a, double T_bs);

/// Useful energy rate, W. Negative at night; clamping is engine policy.
double useful_energy(const DerivedCoefficients& c, const CollectorDesign& d,
                     double G, double T_a, double T_in);

/// Q_u / (A_c * G); throws std::domain_error when G = 0.
double instantaneous_efficiency(double Q_u, double A_c, double G);

} // namespace pvt

#endif
