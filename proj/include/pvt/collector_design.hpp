#ifndef PVT_COLLECTOR_DESIGN_HPP
#define PVT_COLLECTOR_DESIGN_HPP

#include <iosfwd>
#include <string>

namespace pvt {

/// Geometric, optical and material constants of one PV/T panel plus its
/// storage tank. Immutable after loading; all simulation state lives elsewhere.
/// Temperatures are degrees Celsius, everything else SI.
struct CollectorDesign {
    double A_c;      // collector aperture area, m^2
    double b;        // breadth, m
    double L;        // length, m
    double W;        // tube spacing, m
    double D;        // tube diameter, m
    double m_dot;    // coolant mass flow rate, kg/s
    double M_w;      // tank water mass, kg
    double C_w;      // specific heat of water, J/kg.K
    double UA_tank;  // tank loss conductance, W/K
    double UA_edge;  // edge loss conductance, W/K
    double L_g, K_g; // glass cover thickness, m / conductivity, W/m.K
    double L_c, K_c; // cell layer thickness / conductivity
    double L_T, K_T; // Tedlar thickness / conductivity
    double L_i, K_i; // insulation thickness / conductivity
    double h_i;      // back convective coefficient, W/m^2.K
    double h_T;      // Tedlar-to-water convective coefficient, W/m^2.K
    double v;        // wind speed, m/s
    double tau_g;    // glass transmissivity
    double alpha_c;  // cell absorptivity
    double alpha_T;  // Tedlar absorptivity
    double beta_c;   // packing factor
    double eta_c_ref; // reference cell efficiency
    double emissivity; // top-surface emissivity
    double T_w0;     // initial tank temperature, degC

    // Absorber plate conductance k*delta used by the fin efficiency factor.
    // Copper sheet, 0.6 mm: 385 * 0.0006 W/K. Optional in the config document.
    double plate_conductance = 385.0 * 0.0006;
};

/// Parses a flat JSON object with the CollectorDesign field names and checks
/// every invariant. Throws parse_error for a missing/ill-typed field,
/// validation_error naming field and bound otherwise.
CollectorDesign load_collector_config(std::istream& source);
CollectorDesign load_collector_config_file(const std::string& path);

/// Serializes back to the same flat JSON document (round-trips exactly).
std::string collector_config_to_json(const CollectorDesign& d);

void validate(const CollectorDesign& d);

} // namespace pvt

#endif
