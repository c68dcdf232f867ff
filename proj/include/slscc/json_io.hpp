#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "slscc/instance.hpp"
#include "slscc/oracle.hpp"
#include "slscc/solution.hpp"

namespace slscc {

using json = nlohmann::ordered_json;

/// Parses the instance file format: keys T, p, alpha, beta, h, d,
/// scenarios ([{prob, demands}]), epsilon; arrays 0-indexed. Structural
/// problems and semantic violations are both reported in `issues`.
inline bool instance_from_json(const json& js, Instance& out,
                               std::vector<ValidationIssue>& issues) {
    issues.clear();
    const auto need = [&](const char* key, json::value_t kind) -> const json* {
        if (!js.contains(key)) {
            issues.push_back({key, -1, "missing"});
            return nullptr;
        }
        const json& v = js.at(key);
        const bool numberWanted = kind == json::value_t::number_float;
        const bool ok = numberWanted ? v.is_number() : (v.type() == kind || (kind == json::value_t::array && v.is_array()));
        if (!ok) {
            issues.push_back({key, -1, "wrong type"});
            return nullptr;
        }
        return &v;
    };

    const json* T = need("T", json::value_t::number_float);
    const json* p = need("p", json::value_t::number_float);
    const json* alpha = need("alpha", json::value_t::array);
    const json* beta = need("beta", json::value_t::array);
    const json* h = need("h", json::value_t::array);
    const json* d = need("d", json::value_t::array);
    const json* scen = need("scenarios", json::value_t::array);
    const json* eps = need("epsilon", json::value_t::number_float);
    if (!issues.empty()) return false;

    const auto toVec = [&](const json& v, const char* key) {
        std::vector<double> out2;
        for (const auto& e : v) {
            if (!e.is_number()) {
                issues.push_back({key, static_cast<int>(out2.size()), "not a number"});
                out2.push_back(0.0);
            } else {
                out2.push_back(e.get<double>());
            }
        }
        return out2;
    };

    out = Instance{};
    out.T = T->get<int>();
    out.p = p->get<int>();
    out.alpha = toVec(*alpha, "alpha");
    out.beta = toVec(*beta, "beta");
    out.h = toVec(*h, "h");
    out.d = toVec(*d, "d");
    out.epsilon = eps->get<double>();
    int idx = 0;
    for (const auto& e : *scen) {
        Scenario sc;
        if (!e.is_object() || !e.contains("prob") || !e.contains("demands")) {
            issues.push_back({"scenarios", idx, "need {prob, demands}"});
        } else {
            sc.prob = e.at("prob").is_number() ? e.at("prob").get<double>() : -1.0;
            if (e.at("demands").is_array()) sc.demands = toVec(e.at("demands"), "scenarios.demands");
            else issues.push_back({"scenarios.demands", idx, "not an array"});
        }
        out.scenarios.push_back(std::move(sc));
        ++idx;
    }
    if (!issues.empty()) return false;

    issues = validate_instance(out);
    return issues.empty();
}

inline json instance_to_json(const Instance& inst) {
    json js;
    js["T"] = inst.T;
    js["p"] = inst.p;
    js["alpha"] = inst.alpha;
    js["beta"] = inst.beta;
    js["h"] = inst.h;
    js["d"] = inst.d;
    js["scenarios"] = json::array();
    for (const auto& sc : inst.scenarios)
        js["scenarios"].push_back(json{{"prob", sc.prob}, {"demands", sc.demands}});
    js["epsilon"] = inst.epsilon;
    return js;
}

inline bool load_instance_file(const std::string& path, Instance& out,
                               std::vector<ValidationIssue>& issues) {
    std::ifstream in(path);
    if (!in) {
        issues = {{path, -1, "cannot open file"}};
        return false;
    }
    json js = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (js.is_discarded()) {
        issues = {{path, -1, "not valid JSON"}};
        return false;
    }
    return instance_from_json(js, out, issues);
}

/// Solution schema used by the CLI: {objective, y, x, s, s2, z, S, lb, ub, nodes}.
inline json solution_to_json(const PlanSolution& sol, double lb, double ub, long nodes) {
    json js;
    js["objective"] = sol.objective;
    js["y"] = sol.y;
    js["x"] = sol.x;
    js["s"] = sol.s;
    js["s2"] = sol.s2;
    js["z"] = sol.z;
    js["S"] = occurred_set(sol.z);
    js["lb"] = lb;
    js["ub"] = ub;
    js["nodes"] = nodes;
    return js;
}

inline json compare_report_to_json(const CompareReport& rep) {
    json js;
    js["assumption_holds"] = rep.assumptionHolds;
    js["dp_path_skipped"] = rep.dpPathSkipped;
    if (rep.bruteObjective) js["brute_objective"] = *rep.bruteObjective;
    if (rep.enumerationObjective) js["enumeration_objective"] = *rep.enumerationObjective;
    if (rep.bnbObjective) js["bnb_objective"] = *rep.bnbObjective;
    js["max_gap"] = rep.maxGap;
    js["failures"] = rep.failures;
    js["subproblems"] = json::array();
    for (const auto& tr : rep.triples)
        js["subproblems"].push_back(
            json{{"S", tr.S}, {"dp", tr.dp}, {"lp", tr.lp}, {"extended", tr.extended}});
    return js;
}

} // namespace slscc
