#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "slscc/instance.hpp"

namespace slscc {

/// A full production plan. s2 rows of dropped scenarios (z_j = 1) are
/// identically zero and carry no cost.
struct PlanSolution {
    std::vector<int> y;                  // length T, binary
    std::vector<double> x;               // length T
    std::vector<double> s;               // length p, first-stage inventory
    std::vector<std::vector<double>> s2; // m x (T-p), per-scenario inventory
    std::vector<int> z;                  // length m, binary
    double objective = 0.0;
};

namespace detail {

inline std::string fmtIdx(const char* field, int i) {
    return std::string(field) + "[" + std::to_string(i) + "]";
}

} // namespace detail

/// Derives inventories from flow balance and prices the plan. Throws
/// InfeasibleError when flow balance forces negative stock, a kept scenario's
/// running inventory goes negative, production happens without a setup, or
/// (when enforceChance) the dropped probability mass exceeds epsilon.
inline PlanSolution evaluate_plan(const Instance& inst, const std::vector<int>& y,
                                  const std::vector<double>& x, const std::vector<int>& z,
                                  bool enforceChance = true) {
    const int T = inst.T, p = inst.p, m = inst.m();
    if (static_cast<int>(y.size()) != T || static_cast<int>(x.size()) != T ||
        static_cast<int>(z.size()) != m)
        throw Error("evaluate: dimension mismatch");

    if (enforceChance) {
        double dropped = 0.0;
        for (int j = 0; j < m; ++j)
            if (z[j] != 0) dropped += inst.scenarios[j].prob;
        if (dropped > inst.epsilon + kFeasTol) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "dropped probability %.10g exceeds epsilon %.10g",
                          dropped, inst.epsilon);
            throw InfeasibleError(buf);
        }
    }

    PlanSolution sol;
    sol.y = y;
    sol.x = x;
    sol.z = z;
    sol.s.assign(p, 0.0);
    sol.s2.assign(m, std::vector<double>(inst.secondStageLen(), 0.0));

    double obj = 0.0;
    for (int i = 0; i < T; ++i) {
        if (x[i] < -kFeasTol) throw InfeasibleError(detail::fmtIdx("x", i) + " negative");
        if (x[i] > kFeasTol && y[i] == 0)
            throw InfeasibleError(detail::fmtIdx("x", i) + " positive without a setup");
        obj += inst.alpha[i] * x[i] + inst.beta[i] * y[i];
    }

    double stock = 0.0;
    for (int i = 0; i < p; ++i) {
        stock += x[i] - inst.d[i];
        if (stock < -kFeasTol)
            throw InfeasibleError(detail::fmtIdx("d", i) + " unmet (stock " +
                                  std::to_string(stock) + ")");
        sol.s[i] = pos_part(stock);
        obj += inst.h[i] * sol.s[i];
    }

    const double handoff = (p > 0) ? sol.s[p - 1] : 0.0;
    for (int j = 0; j < m; ++j) {
        if (z[j] != 0) continue; // dropped scenario: zero inventory, no cost
        double run = handoff;
        for (int t = p; t < T; ++t) {
            run += x[t] - inst.scenarios[j].demands[t - p];
            if (run < -kFeasTol)
                throw InfeasibleError("scenario " + std::to_string(j) + " demand unmet at period " +
                                      std::to_string(t));
            sol.s2[j][t - p] = pos_part(run);
            obj += inst.scenarios[j].prob * inst.h[t] * sol.s2[j][t - p];
        }
    }
    sol.objective = obj;
    return sol;
}

/// Objective of a plan given only (y, x, z); see evaluate_plan.
inline double evaluate(const Instance& inst, const std::vector<int>& y,
                       const std::vector<double>& x, const std::vector<int>& z) {
    return evaluate_plan(inst, y, x, z).objective;
}

/// Checks a complete PlanSolution against the problem constraints and its own
/// stored inventories/objective. Violations are returned as data; empty means
/// feasible within kFeasTol.
inline std::vector<ValidationIssue> check_feasible(const Instance& inst, const PlanSolution& sol) {
    std::vector<ValidationIssue> out;
    const int T = inst.T, p = inst.p, m = inst.m();
    if (static_cast<int>(sol.y.size()) != T) out.push_back({"y", -1, "length != T"});
    if (static_cast<int>(sol.x.size()) != T) out.push_back({"x", -1, "length != T"});
    if (static_cast<int>(sol.s.size()) != p) out.push_back({"s", -1, "length != p"});
    if (static_cast<int>(sol.z.size()) != m) out.push_back({"z", -1, "length != m"});
    if (static_cast<int>(sol.s2.size()) != m) out.push_back({"s2", -1, "rows != m"});
    if (!out.empty()) return out;

    for (int i = 0; i < T; ++i) {
        if (sol.y[i] != 0 && sol.y[i] != 1) out.push_back({"y", i, "not binary"});
        if (sol.x[i] < -kFeasTol) out.push_back({"x", i, "negative"});
        if (sol.x[i] > kFeasTol && sol.y[i] == 0)
            out.push_back({"x", i, "positive without setup (y=0)"});
    }
    for (int j = 0; j < m; ++j)
        if (sol.z[j] != 0 && sol.z[j] != 1) out.push_back({"z", j, "not binary"});

    double dropped = 0.0;
    for (int j = 0; j < m; ++j)
        if (sol.z[j] != 0) dropped += inst.scenarios[j].prob;
    if (dropped > inst.epsilon + kFeasTol)
        out.push_back({"z", -1, "dropped probability exceeds epsilon"});

    // first-stage flow balance against the stored s
    double stock = 0.0;
    for (int i = 0; i < p; ++i) {
        stock += sol.x[i] - inst.d[i];
        if (sol.s[i] < -kFeasTol) out.push_back({"s", i, "negative"});
        if (std::abs(sol.s[i] - stock) > kFeasTol)
            out.push_back({"s", i, "flow balance residual " + std::to_string(sol.s[i] - stock)});
    }

    const double handoff = (p > 0) ? sol.s[p - 1] : 0.0;
    for (int j = 0; j < m; ++j) {
        if (static_cast<int>(sol.s2[j].size()) != inst.secondStageLen()) {
            out.push_back({"s2", j, "row length != T-p"});
            continue;
        }
        if (sol.z[j] != 0) {
            for (int t = p; t < T; ++t)
                if (std::abs(sol.s2[j][t - p]) > kFeasTol)
                    out.push_back({"s2", j, "nonzero inventory for dropped scenario at period " +
                                                 std::to_string(t)});
            continue;
        }
        double run = handoff;
        for (int t = p; t < T; ++t) {
            run += sol.x[t] - inst.scenarios[j].demands[t - p];
            if (run < -kFeasTol) {
                out.push_back({"s2", j, "scenario demand unmet at period " + std::to_string(t)});
                break;
            }
            if (std::abs(sol.s2[j][t - p] - run) > kFeasTol)
                out.push_back({"s2", j, "inventory mismatch at period " + std::to_string(t)});
        }
    }

    if (out.empty()) {
        const double obj = evaluate(inst, sol.y, sol.x, sol.z);
        if (std::abs(obj - sol.objective) > kFeasTol * (1.0 + std::abs(obj)))
            out.push_back({"objective", -1, "stored objective inconsistent with plan"});
    }
    return out;
}

} // namespace slscc
