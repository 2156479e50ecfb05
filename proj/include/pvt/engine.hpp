#ifndef PVT_ENGINE_HPP
#define PVT_ENGINE_HPP

#include "pvt/collector_design.hpp"
#include "pvt/datasheet.hpp"
#include "pvt/thermal.hpp"
#include "pvt/weather.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pvt {

struct SimulationOptions {
    double step = 60.0;               // seconds; weather must be resampled to it
    bool radiative_correction = true;
    bool edge_loss = true;
    bool couple_electrical = false;   // feed MPP efficiency back into the cell balance
    bool clamp_negative_qu = false;   // zero out nocturnal losses in Q_u / eta_i
};

/// One output row per weather grid point.
struct SimulationRecord {
    double t;
    double G;
    double T_a;
    double T_w;
    double T_bs;
    double T_c;
    double Q_u;
    double eta_i;
    // present when couple_electrical is on
    double eta_e = 0.0;
    double P_mp = 0.0;
    double V_mp = 0.0;
    double I_mp = 0.0;
};

struct PairedResidual {
    double t;
    double sim;
    double exp;
    double percent; // 100 * (sim - exp) / sim
};

struct ValidationReport {
    double rms_percent = 0.0;
    std::size_t n = 0;
    std::vector<PairedResidual> residuals;
};

/// Marches the coupled model over the weather grid. Weather must already be
/// uniform at opts.step (resample_weather does that); throws
/// std::invalid_argument otherwise. Solver failures carry the step index.
std::vector<SimulationRecord> run_simulation(const CollectorDesign& design,
                                             const DatasheetSpec& datasheet,
                                             const WeatherSeries& weather,
                                             const SimulationOptions& opts);

/// Tank-side collection efficiency over the whole run:
/// M_w C_w (T_w_final - T_w_initial) / (A_c * step * sum G).
/// Throws std::domain_error when the insolation sum is zero.
double thermal_efficiency(const std::vector<SimulationRecord>& records,
                          const CollectorDesign& design, double step);

/// eta_o = eta_th + eta_e
double overall_efficiency(double eta_th, double eta_e);

/// Root mean square percentage deviation between a simulated and an
/// experimental series, each (t, value). Pairs on nearest timestamp within
/// half the simulated series' grid spacing; normalizes by the simulated value.
ValidationReport rms_deviation(const std::vector<std::pair<double, double>>& sim,
                               const std::vector<std::pair<double, double>>& exp);

/// One full simulation per step size over the same weather, side by side.
std::vector<std::vector<SimulationRecord>> step_size_study(const CollectorDesign& design,
                                                           const DatasheetSpec& datasheet,
                                                           const WeatherSeries& weather,
                                                           const std::vector<double>& steps,
                                                           const SimulationOptions& base_opts);

// --- result I/O ---------------------------------------------------------------

/// CSV per the engine contract: t,G,T_a,T_w,T_bs,T_c,Q_u,eta_i and, when
/// coupled, eta_e,P_mp,V_mp,I_mp. Six significant digits.
void write_records_csv(std::ostream& out, const std::vector<SimulationRecord>& records,
                       bool coupled);

/// Reads (t, column) pairs out of any CSV with a `t` or `time` header cell.
std::vector<std::pair<double, double>> read_time_column_csv(std::istream& in,
                                                            const std::string& column);
std::vector<std::pair<double, double>> read_time_column_csv_file(const std::string& path,
                                                                 const std::string& column);

} // namespace pvt

#endif
