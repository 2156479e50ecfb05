#include "pvt/engine.hpp"
#include "pvt/diode.hpp"
#include "pvt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pvt {

namespace {

void check_uniform_grid(const WeatherSeries& weather, double step) {
    for (size_t i = 1; i < weather.samples.size(); ++i) {
        const double dt = weather.samples[i].t - weather.samples[i - 1].t;
        if (std::abs(dt - step) > 1e-6)
            throw std::invalid_argument(
                "run_simulation: weather grid spacing " + std::to_string(dt) + " at sample " +
                std::to_string(i) + " does not match the requested step " + std::to_string(step) +
                " (resample first)");
    }
}

} // namespace

std::vector<SimulationRecord> run_simulation(const CollectorDesign& design,
                                             const DatasheetSpec& datasheet,
                                             const WeatherSeries& weather,
                                             const SimulationOptions& opts) {
    if (!(opts.step > 0.0))
        throw std::invalid_argument("run_simulation: step must be > 0");
    validate(weather);
    check_uniform_grid(weather, opts.step);

    const ThermalOptions thermal_opts{opts.radiative_correction, opts.edge_loss};
    const ReferenceParams ref =
        opts.couple_electrical ? extract_reference_params(datasheet) : ReferenceParams{};

    std::vector<SimulationRecord> records;
    records.reserve(weather.size());

    double T_w = design.T_w0;
    double T_c_prev = design.T_w0; // coefficient seed before any cell state exists
    double eta_c = design.eta_c_ref;

    for (size_t k = 0; k < weather.size(); ++k) {
        const auto& now = weather.samples[k];
        size_t step_index = k;
        try {
            DerivedCoefficients coeffs = derive_coefficients(design, T_c_prev, now.T_a, thermal_opts);

            if (k > 0) {
                const auto& prev = weather.samples[k - 1];
                const double G_avg = 0.5 * (prev.G + now.G);
                const double T_a_avg = 0.5 * (prev.T_a + now.T_a);
                const double f_bar = tank_forcing(coeffs, design, G_avg, T_a_avg);
                T_w = step_tank(T_w, f_bar, coeffs.m_decay, opts.step);
            }

            SimulationRecord rec{};
            rec.t = now.t;
            rec.G = now.G;
            rec.T_a = now.T_a;
            rec.T_w = T_w;
            rec.T_bs = back_surface_temperature(coeffs, design, now.G, now.T_a, T_w);
            rec.T_c = cell_temperature(coeffs, design, now.G, now.T_a, rec.T_bs, eta_c);
            rec.Q_u = useful_energy(coeffs, design, now.G, now.T_a, T_w);
            if (opts.clamp_negative_qu && rec.Q_u < 0.0)
                rec.Q_u = 0.0;
            rec.eta_i = now.G > 0.0 ? instantaneous_efficiency(rec.Q_u, design.A_c, now.G) : 0.0;

            if (opts.couple_electrical) {
                if (now.G > 0.0) {
                    const DiodeModel model = build_model(ref, datasheet, now.G, rec.T_c);
                    const OperatingPoint mpp = max_power_point(model);
                    rec.P_mp = mpp.P;
                    rec.V_mp = mpp.V;
                    rec.I_mp = mpp.I;
                    rec.eta_e = electrical_efficiency(mpp, design.A_c, now.G);
                    eta_c = rec.eta_e; // feeds the next step's cell balance
                } else {
                    eta_c = design.eta_c_ref;
                }
            }

            T_c_prev = rec.T_c;
            records.push_back(rec);
        } catch (const error& e) {
            throw solver_error("step " + std::to_string(step_index) + " (t=" +
                               std::to_string(now.t) + "): " + e.what());
        }
    }
    return records;
}

double thermal_efficiency(const std::vector<SimulationRecord>& records,
                          const CollectorDesign& design, double step) {
    if (records.size() < 2)
        throw std::invalid_argument("thermal_efficiency: needs at least 2 records");
    if (!(step > 0.0))
        throw std::invalid_argument("thermal_efficiency: step must be > 0");
    // trapezoid over the marched intervals, the same insolation that forced
    // the tank; invariant under re-expression of the grid for smooth G
    double insolation = 0.0; // J/m^2
    for (size_t k = 1; k < records.size(); ++k)
        insolation += 0.5 * (records[k - 1].G + records[k].G) * step;
    if (insolation <= 0.0)
        throw std::domain_error("thermal_efficiency: undefined, insolation sum is zero");
    const double gained = design.M_w * design.C_w * (records.back().T_w - records.front().T_w);
    return gained / (design.A_c * insolation);
}

double overall_efficiency(double eta_th, double eta_e) {
    if (eta_th < 0.0 || eta_th > 1.0 || eta_e < 0.0 || eta_e > 1.0)
        throw std::invalid_argument("overall_efficiency: inputs must be in [0, 1]");
    return eta_th + eta_e;
}

ValidationReport rms_deviation(const std::vector<std::pair<double, double>>& sim,
                               const std::vector<std::pair<double, double>>& exp) {
    if (sim.empty())
        throw std::invalid_argument("rms_deviation: simulated series is empty");
    if (!std::is_sorted(sim.begin(), sim.end(),
                        [](const auto& a, const auto& b) { return a.first < b.first; }))
        throw std::invalid_argument("rms_deviation: simulated series must be time-sorted");

    // pairing window = half the simulated grid spacing (median of the gaps)
    double half_window = std::numeric_limits<double>::infinity();
    if (sim.size() > 1) {
        std::vector<double> gaps;
        gaps.reserve(sim.size() - 1);
        for (size_t i = 1; i < sim.size(); ++i)
            gaps.push_back(sim[i].first - sim[i - 1].first);
        std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
        half_window = gaps[gaps.size() / 2] / 2.0;
    }

    ValidationReport report;
    double sum_sq = 0.0;
    for (const auto& [t, y_exp] : exp) {
        auto it = std::lower_bound(sim.begin(), sim.end(), t,
                                   [](const auto& s, double key) { return s.first < key; });
        const auto* best = it != sim.end() ? &*it : &sim.back();
        if (it != sim.begin()) {
            const auto* before = &*(it - 1);
            if (std::abs(before->first - t) < std::abs(best->first - t))
                best = before;
        }
        if (std::abs(best->first - t) > half_window)
            continue;
        if (best->second == 0.0)
            throw std::domain_error("rms_deviation: simulated value is zero at t=" +
                                    std::to_string(best->first));
        const double percent = 100.0 * (best->second - y_exp) / best->second;
        report.residuals.push_back({best->first, best->second, y_exp, percent});
        sum_sq += percent * percent;
    }
    report.n = report.residuals.size();
    if (report.n == 0)
        throw std::invalid_argument("rms_deviation: no pairs within half a grid step");
    report.rms_percent = std::sqrt(sum_sq / static_cast<double>(report.n));
    return report;
}

std::vector<std::vector<SimulationRecord>> step_size_study(const CollectorDesign& design,
                                                           const DatasheetSpec& datasheet,
                                                           const WeatherSeries& weather,
                                                           const std::vector<double>& steps,
                                                           const SimulationOptions& base_opts) {
    std::vector<std::vector<SimulationRecord>> runs(steps.size());
    std::string first_error;
    bool failed = false;

    // independent runs over the same (read-only) inputs
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(steps.size()); ++i) {
        try {
            SimulationOptions opts = base_opts;
            opts.step = steps[static_cast<size_t>(i)];
            const WeatherSeries grid = resample_weather(weather, opts.step);
            runs[static_cast<size_t>(i)] = run_simulation(design, datasheet, grid, opts);
        } catch (const std::exception& e) {
#pragma omp critical(pvt_study_failure)
            if (!failed) {
                failed = true;
                first_error = "step " + std::to_string(steps[static_cast<size_t>(i)]) + " s: " +
                              e.what();
            }
        }
    }
    if (failed)
        throw solver_error("step_size_study: " + first_error);
    return runs;
}

void write_records_csv(std::ostream& out, const std::vector<SimulationRecord>& records,
                       bool coupled) {
    out << "t,G,T_a,T_w,T_bs,T_c,Q_u,eta_i";
    if (coupled)
        out << ",eta_e,P_mp,V_mp,I_mp";
    out << "\n";
    char buf[64];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.6g%c", v, sep);
        out << buf;
    };
    for (const auto& r : records) {
        put(r.t, ',');
        put(r.G, ',');
        put(r.T_a, ',');
        put(r.T_w, ',');
        put(r.T_bs, ',');
        put(r.T_c, ',');
        put(r.Q_u, ',');
        put(r.eta_i, coupled ? ',' : '\n');
        if (coupled) {
            put(r.eta_e, ',');
            put(r.P_mp, ',');
            put(r.V_mp, ',');
            put(r.I_mp, '\n');
        }
    }
}

std::vector<std::pair<double, double>> read_time_column_csv(std::istream& in,
                                                            const std::string& column) {
    std::string line;
    if (!std::getline(in, line))
        throw parse_error("csv: empty document");

    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' '))
                cell.pop_back();
            cells.push_back(cell);
        }
        return cells;
    };

    const auto header = split(line);
    std::ptrdiff_t t_col = -1, v_col = -1;
    for (size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "t" || header[i] == "time")
            t_col = static_cast<std::ptrdiff_t>(i);
        if (header[i] == column)
            v_col = static_cast<std::ptrdiff_t>(i);
    }
    if (t_col < 0)
        throw parse_error("csv: no `t` or `time` column in header");
    if (v_col < 0)
        throw parse_error("csv: no `" + column + "` column in header");

    std::vector<std::pair<double, double>> out;
    size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r")
            continue;
        const auto cells = split(line);
        if (static_cast<size_t>(std::max(t_col, v_col)) >= cells.size())
            throw parse_error("csv: row " + std::to_string(row) + " too short");
        try {
            out.emplace_back(std::stod(cells[static_cast<size_t>(t_col)]),
                             std::stod(cells[static_cast<size_t>(v_col)]));
        } catch (const std::exception&) {
            throw parse_error("csv: row " + std::to_string(row) + ": bad number");
        }
    }
    return out;
}

std::vector<std::pair<double, double>> read_time_column_csv_file(const std::string& path,
                                                                 const std::string& column) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("csv: cannot open \"" + path + "\"");
    return read_time_column_csv(in, column);
}

} // namespace pvt
