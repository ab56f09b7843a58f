#include "piltz/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace piltz::config {

using nlohmann::json;

FieldConfig parse_field_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw error(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.contains("coeffs") || !j["coeffs"].is_array())
        throw error("config: missing required array \"coeffs\"");

    std::vector<i64> coeffs;
    for (auto& c : j["coeffs"]) {
        if (!c.is_number_integer())
            throw error("config: coeffs must be integers");
        coeffs.push_back(c.get<i64>());
    }
    std::optional<i64> D;
    if (j.contains("D")) D = j["D"].get<i64>();
    std::string label = j.value("label", std::string("field"));

    FieldConfig fc;
    fc.spec = nf::parse_field(coeffs, D, label);

    if (j.contains("local_splitting")) {
        for (auto& [key, val] : j["local_splitting"].items()) {
            i64 p = std::stoll(key);
            std::vector<std::pair<int, int>> factors;
            for (auto& fe : val) {
                if (!fe.is_array() || fe.size() != 2)
                    throw error("config: local_splitting entries must be [f,e] pairs");
                factors.emplace_back(fe[0].get<int>(), fe[1].get<int>());
            }
            fc.spec.local_overrides[p] = std::move(factors);
        }
    }
    if (j.contains("class_number_data")) {
        auto& c = j["class_number_data"];
        ClassNumberData cnd;
        cnd.h = c.value("h", 1.0);
        cnd.regulator = c.value("regulator", 1.0);
        cnd.roots_of_unity = c.value("roots_of_unity", 2);
        fc.class_number_data = cnd;
    }
    if (j.contains("galois_generators")) {
        std::vector<std::vector<int>> gens;
        for (auto& g : j["galois_generators"])
            gens.push_back(g.get<std::vector<int>>());
        fc.galois_generators = std::move(gens);
    }
    return fc;
}

FieldConfig load_field_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_field_config(ss.str());
}

double class_number_residue(const nf::NumberFieldSpec& spec,
                            const ClassNumberData& cnd) {
    constexpr double kPi = 3.14159265358979323846;
    return std::pow(2.0, spec.r1) * std::pow(2.0 * kPi, spec.r2) * cnd.h *
           cnd.regulator / ((double)cnd.roots_of_unity * std::sqrt((double)spec.D));
}

}  // namespace piltz::config
