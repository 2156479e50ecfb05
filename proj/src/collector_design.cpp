#include "pvt/collector_design.hpp"
#include "pvt/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace pvt {

using nlohmann::json;

namespace {

double require_number(const json& doc, const char* key, const char* doc_name) {
    auto it = doc.find(key);
    if (it == doc.end())
        throw parse_error(std::string(doc_name) + ": missing field \"" + key + "\"");
    if (!it->is_number())
        throw parse_error(std::string(doc_name) + ": field \"" + key + "\" is not a number");
    return it->get<double>();
}

void require_positive(double value, const char* field) {
    if (!(value > 0.0))
        throw validation_error(std::string("CollectorDesign: ") + field +
                               " must be > 0, got " + std::to_string(value));
}

void require_unit_interval(double value, const char* field, bool zero_ok) {
    bool ok = zero_ok ? (value >= 0.0 && value < 1.0) : (value > 0.0 && value <= 1.0);
    if (!ok)
        throw validation_error(std::string("CollectorDesign: ") + field + " must be in " +
                               (zero_ok ? "[0, 1)" : "(0, 1]") + ", got " + std::to_string(value));
}

} // namespace

void validate(const CollectorDesign& d) {
    require_positive(d.A_c, "A_c");
    require_positive(d.b, "b");
    require_positive(d.L, "L");
    require_positive(d.W, "W");
    require_positive(d.D, "D");
    require_positive(d.m_dot, "m_dot");
    require_positive(d.M_w, "M_w");
    require_positive(d.C_w, "C_w");
    require_positive(d.UA_tank, "UA_tank");
    if (d.UA_edge < 0.0)
        throw validation_error("CollectorDesign: UA_edge must be >= 0, got " +
                               std::to_string(d.UA_edge));
    require_positive(d.L_g, "L_g");
    require_positive(d.K_g, "K_g");
    require_positive(d.L_c, "L_c");
    require_positive(d.K_c, "K_c");
    require_positive(d.L_T, "L_T");
    require_positive(d.K_T, "K_T");
    require_positive(d.L_i, "L_i");
    require_positive(d.K_i, "K_i");
    require_positive(d.h_i, "h_i");
    require_positive(d.h_T, "h_T");
    if (d.v < 0.0)
        throw validation_error("CollectorDesign: v must be >= 0, got " + std::to_string(d.v));
    require_unit_interval(d.tau_g, "tau_g", false);
    require_unit_interval(d.alpha_c, "alpha_c", false);
    require_unit_interval(d.alpha_T, "alpha_T", false);
    require_unit_interval(d.beta_c, "beta_c", false);
    require_unit_interval(d.eta_c_ref, "eta_c_ref", true);
    require_unit_interval(d.emissivity, "emissivity", false);
    require_positive(d.plate_conductance, "plate_conductance");
    if (!(d.D < d.W))
        throw validation_error("CollectorDesign: D must be < W (tube fits within spacing), got D=" +
                               std::to_string(d.D) + " W=" + std::to_string(d.W));
}

CollectorDesign load_collector_config(std::istream& source) {
    json doc;
    try {
        doc = json::parse(source);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("collector config: ") + e.what());
    }
    if (!doc.is_object())
        throw parse_error("collector config: top-level document must be an object");

    const char* name = "collector config";
    CollectorDesign d{};
    d.A_c = require_number(doc, "A_c", name);
    d.b = require_number(doc, "b", name);
    d.L = require_number(doc, "L", name);
    d.W = require_number(doc, "W", name);
    d.D = require_number(doc, "D", name);
    d.m_dot = require_number(doc, "m_dot", name);
    d.M_w = require_number(doc, "M_w", name);
    d.C_w = require_number(doc, "C_w", name);
    d.UA_tank = require_number(doc, "UA_tank", name);
    d.UA_edge = require_number(doc, "UA_edge", name);
    d.L_g = require_number(doc, "L_g", name);
    d.K_g = require_number(doc, "K_g", name);
    d.L_c = require_number(doc, "L_c", name);
    d.K_c = require_number(doc, "K_c", name);
    d.L_T = require_number(doc, "L_T", name);
    d.K_T = require_number(doc, "K_T", name);
    d.L_i = require_number(doc, "L_i", name);
    d.K_i = require_number(doc, "K_i", name);
    d.h_i = require_number(doc, "h_i", name);
    d.h_T = require_number(doc, "h_T", name);
    d.v = require_number(doc, "v", name);
    d.tau_g = require_number(doc, "tau_g", name);
    d.alpha_c = require_number(doc, "alpha_c", name);
    d.alpha_T = require_number(doc, "alpha_T", name);
    d.beta_c = require_number(doc, "beta_c", name);
    d.eta_c_ref = require_number(doc, "eta_c_ref", name);
    d.emissivity = require_number(doc, "emissivity", name);
    d.T_w0 = require_number(doc, "T_w0", name);
    if (doc.contains("plate_conductance"))
        d.plate_conductance = require_number(doc, "plate_conductance", name);

    validate(d);
    return d;
}

CollectorDesign load_collector_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("collector config: cannot open \"" + path + "\"");
    return load_collector_config(in);
}

std::string collector_config_to_json(const CollectorDesign& d) {
    json doc;
    doc["A_c"] = d.A_c;
    doc["b"] = d.b;
    doc["L"] = d.L;
    doc["W"] = d.W;
    doc["D"] = d.D;
    doc["m_dot"] = d.m_dot;
    doc["M_w"] = d.M_w;
    doc["C_w"] = d.C_w;
    doc["UA_tank"] = d.UA_tank;
    doc["UA_edge"] = d.UA_edge;
    doc["L_g"] = d.L_g;
    doc["K_g"] = d.K_g;
    doc["L_c"] = d.L_c;
    doc["K_c"] = d.K_c;
    doc["L_T"] = d.L_T;
    doc["K_T"] = d.K_T;
    doc["L_i"] = d.L_i;
    doc["K_i"] = d.K_i;
    doc["h_i"] = d.h_i;
    doc["h_T"] = d.h_T;
    doc["v"] = d.v;
    doc["tau_g"] = d.tau_g;
    doc["alpha_c"] = d.alpha_c;
    doc["alpha_T"] = d.alpha_T;
    doc["beta_c"] = d.beta_c;
    doc["eta_c_ref"] = d.eta_c_ref;
    doc["emissivity"] = d.emissivity;
    doc["T_w0"] = d.T_w0;
    doc["plate_conductance"] = d.plate_conductance;
    return doc.dump(2);
}

} // namespace pvt
