// pvtsim -- command-line front end for the PV/T collector simulator.
//
// Subcommands: simulate, coeffs, extract, iv-curve, mpp, validate, study.
// Exit codes: 0 success, 1 validation/solver error, 2 usage error.

#include "pvt/collector_design.hpp"
#include "pvt/curve_family.hpp"
#include "pvt/datasheet.hpp"
#include "pvt/diode.hpp"
#include "pvt/engine.hpp"
#include "pvt/errors.hpp"
#include "pvt/thermal.hpp"
#include "pvt/weather.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw pvt::error("cannot open output file \"" + path + "\"");
    return out;
}

std::string num6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct SimulateArgs {
    std::string design_path, datasheet_path, weather_path, out_path;
    double step = 60.0;
    bool couple = false, no_rad = false, no_edge = false;
};

int run_simulate(const SimulateArgs& args) {
    const auto design = pvt::load_collector_config_file(args.design_path);
    const auto datasheet = pvt::load_datasheet_file(args.datasheet_path);
    const auto weather = pvt::load_weather_csv_file(args.weather_path);

    pvt::SimulationOptions opts;
    opts.step = args.step;
    opts.couple_electrical = args.couple;
    opts.radiative_correction = !args.no_rad;
    opts.edge_loss = !args.no_edge;

    const auto grid = pvt::resample_weather(weather, opts.step);
    const auto records = pvt::run_simulation(design, datasheet, grid, opts);

    auto out = open_output(args.out_path);
    pvt::write_records_csv(out, records, opts.couple_electrical);

    json summary;
    summary["records"] = records.size();
    summary["flags"] = {{"step", opts.step},
                        {"radiative_correction", opts.radiative_correction},
                        {"edge_loss", opts.edge_loss},
                        {"couple_electrical", opts.couple_electrical},
                        {"clamp_negative_qu", opts.clamp_negative_qu}};

    try {
        summary["eta_th"] = pvt::thermal_efficiency(records, design, opts.step);
    } catch (const std::domain_error&) {
        summary["eta_th"] = nullptr;
    }

    // electrical efficiency at the final record's operating condition
    const auto& last = records.back();
    if (last.G > 0.0) {
        double eta_e;
        if (opts.couple_electrical) {
            eta_e = last.eta_e;
        } else {
            const auto ref = pvt::extract_reference_params(datasheet);
            const auto model = pvt::build_model(ref, datasheet, last.G, last.T_c);
            eta_e = pvt::electrical_efficiency(pvt::max_power_point(model), design.A_c, last.G);
        }
        summary["eta_e"] = eta_e;
        if (summary["eta_th"].is_number())
            summary["eta_o"] = pvt::overall_efficiency(summary["eta_th"].get<double>(), eta_e);
        else
            summary["eta_o"] = nullptr;
    } else {
        summary["eta_e"] = nullptr;
        summary["eta_o"] = nullptr;
    }

    std::cout << summary.dump(2) << "\n";
    return 0;
}

int run_coeffs(const std::string& design_path, double tc, double ta, bool no_rad, bool no_edge) {
    const auto design = pvt::load_collector_config_file(design_path);
    const auto c = pvt::derive_coefficients(design, tc, ta, {!no_rad, !no_edge});
    json doc;
    doc["U_t"] = c.U_t;
    doc["U_T"] = c.U_T;
    doc["U_b"] = c.U_b;
    doc["U_e"] = c.U_e;
    doc["U_tT"] = c.U_tT;
    doc["U_tw"] = c.U_tw;
    doc["U_L"] = c.U_L;
    doc["h_p1"] = c.h_p1;
    doc["h_p2"] = c.h_p2;
    doc["alpha_tau_eff"] = c.alpha_tau_eff;
    doc["F_prime"] = c.F_prime;
    doc["F_dblprime"] = c.F_dblprime;
    doc["F_R"] = c.F_R;
    doc["m_decay"] = c.m_decay;
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int run_extract(const std::string& datasheet_path) {
    const auto datasheet = pvt::load_datasheet_file(datasheet_path);
    const auto ref = pvt::extract_reference_params(datasheet);
    json doc;
    doc["a_ref"] = ref.a_ref;
    doc["I_RS_ref"] = ref.I_RS_ref;
    doc["R_s"] = ref.R_s;
    doc["R_sh"] = ref.R_sh;
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int run_iv_curve(const std::string& datasheet_path, const std::vector<double>& temps,
                 const std::vector<double>& irr, int points, const std::string& variant_name,
                 const std::string& out_path) {
    const auto datasheet = pvt::load_datasheet_file(datasheet_path);
    const auto ref = pvt::extract_reference_params(datasheet);
    const auto variant = pvt::circuit_variant_from_string(variant_name);
    const auto table = pvt::curve_family(ref, datasheet, temps, irr, points, variant);

    auto out = open_output(out_path);
    out << "T_c,G,V,I,P\n";
    for (const auto& row : table)
        out << num6(row.T_c) << ',' << num6(row.G) << ',' << num6(row.V) << ',' << num6(row.I)
            << ',' << num6(row.P) << '\n';
    return 0;
}

int run_mpp(const std::string& datasheet_path, double temp, double irr,
            const std::string& variant_name) {
    const auto datasheet = pvt::load_datasheet_file(datasheet_path);
    const auto ref = pvt::extract_reference_params(datasheet);
    const auto variant = pvt::circuit_variant_from_string(variant_name);
    const auto model = pvt::build_model(ref, datasheet, irr, temp, variant);
    const auto mpp = pvt::max_power_point(model);
    json doc;
    doc["V_mp"] = mpp.V;
    doc["I_mp"] = mpp.I;
    doc["P_mp"] = mpp.P;
    doc["V_oc"] = pvt::open_circuit_voltage(model);
    doc["I_sc"] = pvt::solve_current(model, 0.0);
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int run_validate(const std::string& sim_path, const std::string& exp_path,
                 const std::string& column) {
    const auto sim = pvt::read_time_column_csv_file(sim_path, column);
    const auto exp = pvt::read_time_column_csv_file(exp_path, column);
    const auto report = pvt::rms_deviation(sim, exp);
    json doc;
    doc["column"] = column;
    doc["rms_percent"] = report.rms_percent;
    doc["n"] = report.n;
    json pairs = json::array();
    for (const auto& r : report.residuals)
        pairs.push_back({{"t", r.t}, {"sim", r.sim}, {"exp", r.exp}, {"percent", r.percent}});
    doc["residuals"] = pairs;
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int run_study(const std::string& design_path, const std::string& datasheet_path,
              const std::string& weather_path, const std::vector<double>& steps,
              bool no_rad, bool no_edge, const std::string& out_path) {
    const auto design = pvt::load_collector_config_file(design_path);
    const auto datasheet = pvt::load_datasheet_file(datasheet_path);
    const auto weather = pvt::load_weather_csv_file(weather_path);

    pvt::SimulationOptions opts;
    opts.radiative_correction = !no_rad;
    opts.edge_loss = !no_edge;
    const auto runs = pvt::step_size_study(design, datasheet, weather, steps, opts);

    auto out = open_output(out_path);
    out << "step_s,t,G,T_a,T_w,T_bs,T_c,Q_u,eta_i\n";
    for (size_t i = 0; i < runs.size(); ++i)
        for (const auto& r : runs[i])
            out << num6(steps[i]) << ',' << num6(r.t) << ',' << num6(r.G) << ',' << num6(r.T_a)
                << ',' << num6(r.T_w) << ',' << num6(r.T_bs) << ',' << num6(r.T_c) << ','
                << num6(r.Q_u) << ',' << num6(r.eta_i) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupled thermal/electrical simulator for a water-cooled PV/T collector"};
    app.require_subcommand(1);

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "March the coupled model over a weather series");
    sim->add_option("--design", sim_args.design_path, "Collector design JSON")->required();
    sim->add_option("--datasheet", sim_args.datasheet_path, "PV module datasheet JSON")->required();
    sim->add_option("--weather", sim_args.weather_path, "Weather CSV (time,irradiance,ambient)")
        ->required();
    sim->add_option("--step", sim_args.step, "Time step in seconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_flag("--couple", sim_args.couple, "Feed MPP efficiency back into the cell balance");
    sim->add_flag("--no-rad", sim_args.no_rad, "Disable the radiative top-loss correction");
    sim->add_flag("--no-edge", sim_args.no_edge, "Disable the edge loss");
    sim->add_option("--out", sim_args.out_path, "Result CSV path")->required();

    std::string coeffs_design;
    double coeffs_tc = 45.0, coeffs_ta = 30.0;
    bool coeffs_no_rad = false, coeffs_no_edge = false;
    auto* coeffs = app.add_subcommand("coeffs", "Report the derived heat-transfer coefficients");
    coeffs->add_option("--design", coeffs_design, "Collector design JSON")->required();
    coeffs->add_option("--tc", coeffs_tc, "Cell temperature guess, degC")->capture_default_str();
    coeffs->add_option("--ta", coeffs_ta, "Ambient temperature, degC")->capture_default_str();
    coeffs->add_flag("--no-rad", coeffs_no_rad, "Disable the radiative top-loss correction");
    coeffs->add_flag("--no-edge", coeffs_no_edge, "Disable the edge loss");

    std::string extract_datasheet;
    auto* extract = app.add_subcommand("extract", "Extract the single-diode reference parameters");
    extract->add_option("--datasheet", extract_datasheet, "PV module datasheet JSON")->required();

    std::string iv_datasheet, iv_variant = "series_shunt", iv_out;
    std::vector<double> iv_temps, iv_irr;
    int iv_points = 100;
    auto* iv = app.add_subcommand("iv-curve", "Write I-V/P-V curve families as long-format CSV");
    iv->add_option("--datasheet", iv_datasheet, "PV module datasheet JSON")->required();
    iv->add_option("--temps", iv_temps, "Cell temperatures, degC (comma separated)")
        ->required()
        ->delimiter(',');
    iv->add_option("--irr", iv_irr, "Irradiances, W/m^2 (comma separated)")
        ->required()
        ->delimiter(',');
    iv->add_option("--points", iv_points, "Points per curve")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    iv->add_option("--variant", iv_variant, "Circuit variant: ideal|series|series_shunt")
        ->check(CLI::IsMember({"ideal", "series", "series_shunt"}))
        ->capture_default_str();
    iv->add_option("--out", iv_out, "Output CSV path")->required();

    std::string mpp_datasheet, mpp_variant = "series_shunt";
    double mpp_temp = 25.0, mpp_irr = 1000.0;
    auto* mpp = app.add_subcommand("mpp", "Report the maximum power point at one condition");
    mpp->add_option("--datasheet", mpp_datasheet, "PV module datasheet JSON")->required();
    mpp->add_option("--temp", mpp_temp, "Cell temperature, degC")->capture_default_str();
    mpp->add_option("--irr", mpp_irr, "Irradiance, W/m^2")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    mpp->add_option("--variant", mpp_variant, "Circuit variant: ideal|series|series_shunt")
        ->check(CLI::IsMember({"ideal", "series", "series_shunt"}))
        ->capture_default_str();

    std::string val_sim, val_exp, val_column;
    auto* validate = app.add_subcommand("validate", "RMS percentage deviation between two traces");
    validate->add_option("--sim", val_sim, "Simulated CSV")->required();
    validate->add_option("--exp", val_exp, "Experimental CSV")->required();
    validate->add_option("--column", val_column, "Column to compare")->required();

    std::string study_design, study_datasheet, study_weather, study_out;
    std::vector<double> study_steps;
    bool study_no_rad = false, study_no_edge = false;
    auto* study = app.add_subcommand("study", "Run the same weather at several step sizes");
    study->add_option("--design", study_design, "Collector design JSON")->required();
    study->add_option("--datasheet", study_datasheet, "PV module datasheet JSON")->required();
    study->add_option("--weather", study_weather, "Weather CSV")->required();
    study->add_option("--steps", study_steps, "Step sizes in seconds (comma separated)")
        ->required()
        ->delimiter(',');
    study->add_flag("--no-rad", study_no_rad, "Disable the radiative top-loss correction");
    study->add_flag("--no-edge", study_no_edge, "Disable the edge loss");
    study->add_option("--out", study_out, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (sim->parsed())
            return run_simulate(sim_args);
        if (coeffs->parsed())
            return run_coeffs(coeffs_design, coeffs_tc, coeffs_ta, coeffs_no_rad, coeffs_no_edge);
        if (extract->parsed())
            return run_extract(extract_datasheet);
        if (iv->parsed())
            return run_iv_curve(iv_datasheet, iv_temps, iv_irr, iv_points, iv_variant, iv_out);
        if (mpp->parsed())
            return run_mpp(mpp_datasheet, mpp_temp, mpp_irr, mpp_variant);
        if (validate->parsed())
            return run_validate(val_sim, val_exp, val_column);
        if (study->parsed())
            return run_study(study_design, study_datasheet, study_weather, study_steps,
                             study_no_rad, study_no_edge, study_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
