#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slscc/bnb.hpp"
#include "slscc/closed_forms.hpp"
#include "slscc/formulations.hpp"
#include "slscc/simplex.hpp"
#include "slscc/subproblem.hpp"

namespace slscc {

/// Ground-truth search: every admissible indicator vector times every setup
/// pattern, each priced through the minimal-inventory plan. Ties break toward
/// the lexicographically smallest (z, y).
inline PlanSolution brute_force(const Instance& inst) {
    const int T = inst.T, m = inst.m();
    if (T > 12 || m > 12)
        throw TooLargeError("brute force capped at T <= 12, m <= 12 (got T=" +
                            std::to_string(T) + ", m=" + std::to_string(m) + ")");
    const CumulantTable cum = cumulants(inst);

    bool have = false;
    double bestObj = 0.0;
    std::vector<int> bestZ, bestY;

    std::vector<int> J;
    std::vector<double> probCumD(inst.secondStageLen());
    for (std::uint32_t zmask = 0; zmask < (1u << m); ++zmask) {
        double dropped = 0.0;
        J.clear();
        for (int j = 0; j < m; ++j) {
            if ((zmask >> j) & 1u) dropped += inst.scenarios[j].prob;
            else J.push_back(j);
        }
        if (dropped > inst.epsilon + kCompareTol || J.empty()) continue;

        const Envelope env = make_envelope(inst, cum, J);
        double mass = 0.0;
        std::fill(probCumD.begin(), probCumD.end(), 0.0);
        for (int j : J) {
            mass += inst.scenarios[j].prob;
            for (int k = 0; k < inst.secondStageLen(); ++k)
                probCumD[k] += inst.scenarios[j].prob * cum.D[j][k];
        }

        for (std::uint64_t ymask = 0; ymask < (1ULL << T); ++ymask) {
            const auto obj = zio_objective_mask(inst, env, probCumD, mass, ymask);
            if (!obj) continue;
            bool better = false;
            if (!have || *obj < bestObj - 1e-12) {
                better = true;
            } else if (*obj <= bestObj + 1e-12) {
                std::vector<int> zv(m), yv(T);
                for (int j = 0; j < m; ++j) zv[j] = (zmask >> j) & 1u;
                for (int t = 0; t < T; ++t) yv[t] = (ymask >> t) & 1u;
                better = std::make_pair(zv, yv) < std::make_pair(bestZ, bestY);
            }
            if (better) {
                have = true;
                bestObj = *obj;
                bestZ.assign(m, 0);
                bestY.assign(T, 0);
                for (int j = 0; j < m; ++j) bestZ[j] = (zmask >> j) & 1u;
                for (int t = 0; t < T; ++t) bestY[t] = (ymask >> t) & 1u;
            }
        }
    }
    if (!have) throw InfeasibleError("no admissible (z, y) combination");
    return closed_form_general(inst, bestZ, bestY);
}

/// Second route to the same number: minimize the deterministic-equivalent
/// model with (y, z) pinned. nullopt mirrors an uncoverable setup pattern.
inline std::optional<double> brute_force_continuous_check(const Instance& inst,
                                                          const std::vector<int>& y,
                                                          const std::vector<int>& z) {
    const BuiltModel bm = build_de(inst);
    std::vector<std::pair<int, double>> fixings;
    for (int t = 0; t < inst.T; ++t)
        fixings.push_back({bm.layout.yVar(t), static_cast<double>(y[t])});
    for (int j = 0; j < inst.m(); ++j) {
        const int var = bm.layout.zVar(j);
        if (z[j] == 1 && bm.model.vars[var].hi < 0.5) return std::nullopt; // z pinned to 0
        fixings.push_back({var, static_cast<double>(z[j])});
    }
    const LpResult res = fix_and_solve(bm.model, fixings);
    if (res.status != LpStatus::Optimal) return std::nullopt;
    return res.objective;
}

struct CompareTriple {
    std::vector<int> S;
    double dp = 0.0;
    double lp = 0.0;
    double extended = 0.0;
};

struct CompareReport {
    bool assumptionHolds = true;
    bool dpPathSkipped = false;
    std::optional<double> bruteObjective;
    std::optional<double> enumerationObjective;
    std::optional<double> bnbObjective;
    std::vector<CompareTriple> triples;
    std::vector<std::string> failures;
    double maxGap = 0.0;

    bool allAgree(double tol) const { return failures.empty() && maxGap <= tol; }
};

/// Runs every solve route on an oracle-sized instance and reports the largest
/// objective discrepancy plus any feasibility failures. Routes that require
/// the cost assumption are skipped (and marked) when it does not hold.
inline CompareReport compare_report(const Instance& inst) {
    CompareReport rep;
    rep.assumptionHolds = check_ww(inst).holds;

    const auto note = [&](double gap) { rep.maxGap = std::max(rep.maxGap, std::abs(gap)); };
    const auto checkSol = [&](const char* route, const PlanSolution& sol) {
        for (const auto& v : check_feasible(inst, sol))
            rep.failures.push_back(std::string(route) + ": " + v.str());
    };

    const PlanSolution brute = brute_force(inst);
    rep.bruteObjective = brute.objective;
    checkSol("brute_force", brute);

    if (!rep.assumptionHolds) {
        rep.dpPathSkipped = true;
        return rep;
    }

    const PlanSolution enumSol = opt_star_enumeration(inst);
    rep.enumerationObjective = enumSol.objective;
    checkSol("opt_star_enumeration", enumSol);
    note(enumSol.objective - brute.objective);

    BnbConfig cfg;
    cfg.delta = 0.0;
    const BnbResult bb = branch_and_bound(inst, cfg);
    rep.bnbObjective = bb.solution.objective;
    checkSol("branch_and_bound", bb.solution);
    note(bb.solution.objective - brute.objective);

    for (const auto& S : enumerate_family(inst, /*minimalOnly=*/true).sets) {
        CompareTriple tr;
        tr.S = S;
        tr.dp = solve_s_dp(inst, S).objective;
        tr.lp = solve_lp(build_s_lp(inst, S).model).objective;
        tr.extended = solve_lp(build_s_extended(inst, S).model).objective;
        note(tr.lp - tr.dp);
        note(tr.extended - tr.dp);
        rep.triples.push_back(std::move(tr));
    }
    return rep;
}

} // namespace slscc
