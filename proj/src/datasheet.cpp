#include "pvt/datasheet.hpp"
#include "pvt/errors.hpp"

#include <json.hpp>

#include <fstream>

namespace pvt {

using nlohmann::json;

namespace {

double require_number(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end())
        throw parse_error(std::string("datasheet: missing field \"") + key + "\"");
    if (!it->is_number())
        throw parse_error(std::string("datasheet: field \"") + key + "\" is not a number");
    return it->get<double>();
}

} // namespace

void validate(const DatasheetSpec& ds) {
    if (!(ds.I_mp_ref > 0.0 && ds.I_mp_ref < ds.I_sc_ref))
        throw validation_error("DatasheetSpec: requires 0 < I_mp_ref < I_sc_ref, got I_mp_ref=" +
                               std::to_string(ds.I_mp_ref) + " I_sc_ref=" + std::to_string(ds.I_sc_ref));
    if (!(ds.V_mp_ref > 0.0 && ds.V_mp_ref < ds.V_oc_ref))
        throw validation_error("DatasheetSpec: requires 0 < V_mp_ref < V_oc_ref, got V_mp_ref=" +
                               std::to_string(ds.V_mp_ref) + " V_oc_ref=" + std::to_string(ds.V_oc_ref));
    if (!(ds.G_ref > 0.0))
        throw validation_error("DatasheetSpec: G_ref must be > 0, got " + std::to_string(ds.G_ref));
    if (!(ds.R_sh_fixed > 0.0))
        throw validation_error("DatasheetSpec: R_sh_fixed must be > 0, got " +
                               std::to_string(ds.R_sh_fixed));
    if (ds.N_s < 1)
        throw validation_error("DatasheetSpec: N_s must be >= 1, got " + std::to_string(ds.N_s));
}

DatasheetSpec load_datasheet(std::istream& source) {
    json doc;
    try {
        doc = json::parse(source);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("datasheet: ") + e.what());
    }
    if (!doc.is_object())
        throw parse_error("datasheet: top-level document must be an object");

    DatasheetSpec ds{};
    ds.I_sc_ref = require_number(doc, "I_sc_ref");
    ds.V_oc_ref = require_number(doc, "V_oc_ref");
    ds.I_mp_ref = require_number(doc, "I_mp_ref");
    ds.V_mp_ref = require_number(doc, "V_mp_ref");
    // Datasheets quote the short-circuit coefficient either as A/degC or as
    // percent of I_sc per degC; the record always stores A/degC.
    if (doc.contains("K_I_percent"))
        ds.K_I = require_number(doc, "K_I_percent") / 100.0 * ds.I_sc_ref;
    else
        ds.K_I = require_number(doc, "K_I");
    ds.K_V = require_number(doc, "K_V");
    ds.NOCT = require_number(doc, "NOCT");
    ds.T_ref = require_number(doc, "T_ref");
    ds.G_ref = require_number(doc, "G_ref");
    ds.R_sh_fixed = require_number(doc, "R_sh_fixed");
    if (doc.contains("N_s")) {
        double n = require_number(doc, "N_s");
        ds.N_s = static_cast<int>(n);
        if (static_cast<double>(ds.N_s) != n)
            throw parse_error("datasheet: field \"N_s\" must be an integer");
    }

    validate(ds);
    return ds;
}

DatasheetSpec load_datasheet_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("datasheet: cannot open \"" + path + "\"");
    return load_datasheet(in);
}

std::string datasheet_to_json(const DatasheetSpec& ds) {
    json doc;
    doc["I_sc_ref"] = ds.I_sc_ref;
    doc["V_oc_ref"] = ds.V_oc_ref;
    doc["I_mp_ref"] = ds.I_mp_ref;
    doc["V_mp_ref"] = ds.V_mp_ref;
    doc["K_I"] = ds.K_I;
    doc["K_V"] = ds.K_V;
    doc["NOCT"] = ds.NOCT;
    doc["T_ref"] = ds.T_ref;
    doc["G_ref"] = ds.G_ref;
    doc["R_sh_fixed"] = ds.R_sh_fixed;
    doc["N_s"] = ds.N_s;
    return doc.dump(2);
}

} // namespace pvt
