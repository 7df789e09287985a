#include "nmf/analysis.hpp"

namespace nmf {

nlohmann::json DependencyStructure::to_json() const {
    nlohmann::json j;
    j["t"] = t;
    j["indices"] = indices;
    nlohmann::json w = nlohmann::json::object();
    if (weights) {
        for (const auto& [index, value] : *weights) w[std::to_string(index)] = value;
    }
    j["weights"] = w;
    j["substitutions"] = substitutions;
    j["undecodable"] = undecodable;
    return j;
}

nlohmann::json CheckReport::to_json() const {
    nlohmann::json j;
    j["pass"] = pass;
    nlohmann::json v = nlohmann::json::array();
    for (const Violation& x : violations) v.push_back({{"where", x.where}, {"expected", x.expected}, {"got", x.got}});
    j["violations"] = v;
    j["max_discrepancy"] = max_discrepancy;
    j["cells_checked"] = cells_checked;
    if (dependency) j["dependency"] = dependency->to_json();
    return j;
}

}  // namespace nmf
