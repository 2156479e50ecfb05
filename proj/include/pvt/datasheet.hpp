#ifndef PVT_DATASHEET_HPP
#define PVT_DATASHEET_HPP

#include <iosfwd>
#include <string>

namespace pvt {

/// Manufacturer datasheet of the PV module at reference conditions.
/// K_I is stored in A/degC; a document may instead give "K_I_percent"
/// (percent of I_sc per degC) which the loader converts at load time.
struct DatasheetSpec {
    double I_sc_ref;  // short-circuit current, A
    double V_oc_ref;  // open-circuit voltage, V
    double I_mp_ref;  // current at max power, A
    double V_mp_ref;  // voltage at max power, V
    double K_I;       // temperature coefficient of I_sc, A/degC
    double K_V;       // temperature coefficient of V_oc, V/degC (informational)
    double NOCT;      // nominal operating cell temperature, degC
    double T_ref;     // reference cell temperature, degC
    double G_ref;     // reference irradiance, W/m^2
    double R_sh_fixed; // shunt resistance, ohm
    int    N_s = 36;  // cells in series; sets the per-cell diode thermal scale
};

DatasheetSpec load_datasheet(std::istream& source);
DatasheetSpec load_datasheet_file(const std::string& path);

std::string datasheet_to_json(const DatasheetSpec& ds);

void validate(const DatasheetSpec& ds);

} // namespace pvt

#endif
