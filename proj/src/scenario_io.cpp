#include "tokeneq/scenario_io.hpp"

#include "tokeneq/report.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace tokeneq {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known)
            ok = ok || key == k;
        if (!ok)
            throw ParseError("unknown field \"" + key + "\" in " + where);
    }
}

double number_field(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key))
        throw ParseError("missing field \"" + std::string(key) + "\" in " + where);
    const auto& v = obj.at(key);
    if (!v.is_number())
        throw ParseError("field \"" + std::string(key) + "\" in " + where + " must be a number");
    return v.get<double>();
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ParseError("scenario must be a JSON object");
    reject_unknown(j, {"traders", "n", "r", "tax_mode", "fiscal"}, "scenario");

    Scenario sc;
    if (!j.contains("traders") || !j.at("traders").is_array())
        throw ParseError("missing or non-array field \"traders\"");
    for (const auto& t : j.at("traders")) {
        if (!t.is_object())
            throw ParseError("each trader must be an object");
        reject_unknown(t, {"id", "s", "t"}, "trader");
        if (!t.contains("id") || !t.at("id").is_string())
            throw ParseError("trader field \"id\" must be a string");
        const std::string id = t.at("id").get<std::string>();
        sc.traders.push_back({id, number_field(t, "s", "trader " + id),
                              number_field(t, "t", "trader " + id)});
    }

    sc.policy.n = number_field(j, "n", "scenario");
    sc.policy.r = number_field(j, "r", "scenario");
    if (j.contains("tax_mode")) {
        if (!j.at("tax_mode").is_string())
            throw ParseError("field \"tax_mode\" must be a string");
        const std::string mode = j.at("tax_mode").get<std::string>();
        if (mode == "purchase")
            sc.policy.mode = TaxMode::purchase;
        else if (mode == "sales")
            sc.policy.mode = TaxMode::sales;
        else
            throw ParseError("field \"tax_mode\" must be \"purchase\" or \"sales\"");
    }
    if (j.contains("fiscal") && !j.at("fiscal").is_null()) {
        const auto& f = j.at("fiscal");
        if (!f.is_object())
            throw ParseError("field \"fiscal\" must be an object or null");
        reject_unknown(f, {"poll_tax", "spend_good"}, "fiscal");
        FiscalPolicy fp;
        fp.poll_tax = number_field(f, "poll_tax", "fiscal");
        const double good = number_field(f, "spend_good", "fiscal");
        fp.spend_good = static_cast<int>(good);
        if (fp.spend_good != good)
            throw ParseError("field \"spend_good\" must be an integer");
        sc.fiscal = fp;
    }

    try {
        sc.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string scenario_to_json(const Scenario& scenario) {
    json j;
    j["traders"] = json::array();
    for (const auto& tr : scenario.traders)
        j["traders"].push_back({{"id", tr.id}, {"s", tr.s}, {"t", tr.t}});
    j["n"] = scenario.policy.n;
    j["r"] = scenario.policy.r;
    j["tax_mode"] = scenario.policy.mode == TaxMode::purchase ? "purchase" : "sales";
    if (scenario.fiscal)
        j["fiscal"] = {{"poll_tax", scenario.fiscal->poll_tax},
                       {"spend_good", scenario.fiscal->spend_good}};
    return j.dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::string& path) {
    write_file_atomic(path, scenario_to_json(scenario));
}

} // namespace tokeneq
