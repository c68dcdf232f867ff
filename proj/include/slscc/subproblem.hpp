#pragma once

#include <algorithm>
#include <vector>

#include "slscc/closed_forms.hpp"
#include "slscc/formulations.hpp"
#include "slscc/instance.hpp"

namespace slscc {

/// Largest number of smallest-probability scenarios whose mass still fits
/// under epsilon.
inline int kappa(const Instance& inst) {
    std::vector<double> probs(inst.m());
    for (int j = 0; j < inst.m(); ++j) probs[j] = inst.scenarios[j].prob;
    std::sort(probs.begin(), probs.end());
    int k = 0;
    double sum = 0.0;
    for (double pv : probs) {
        sum += pv;
        if (sum <= inst.epsilon + kCompareTol) ++k;
        else break;
    }
    return k;
}

/// Admissible occurred-scenario sets, ordered by cardinality then
/// lexicographically. minimalOnly prunes supersets: S stays only if removing
/// any member would push the dropped mass past epsilon.
struct ScenarioFamily {
    std::vector<std::vector<int>> sets;
    int kappa = 0;
    bool minimalOnly = false;
};

inline ScenarioFamily enumerate_family(const Instance& inst, bool minimalOnly,
                                       std::size_t cap = 1000000) {
    const int m = inst.m();
    ScenarioFamily fam;
    fam.kappa = kappa(inst);
    fam.minimalOnly = minimalOnly;

    // enumerate dropped sets R with mass <= epsilon; |R| <= kappa by definition
    std::vector<int> idx;
    std::vector<char> inR(m, 0);
    const double eps = inst.epsilon + kCompareTol;

    auto emit = [&](double massR) {
        std::vector<int> S;
        S.reserve(m);
        for (int j = 0; j < m; ++j)
            if (!inR[j]) S.push_back(j);
        if (S.empty()) return;
        if (minimalOnly) {
            for (int j : S)
                if (massR + inst.scenarios[j].prob <= eps) return; // a smaller member exists
        }
        if (fam.sets.size() >= cap)
            throw FamilyTooLargeError("more than " + std::to_string(cap) + " sets");
        fam.sets.push_back(std::move(S));
    };

    // combinations of size k = 0..kappa
    for (int k = 0; k <= fam.kappa; ++k) {
        if (k == 0) {
            emit(0.0);
            continue;
        }
        if (k > m) break;
        std::vector<int> comb(k);
        for (int i = 0; i < k; ++i) comb[i] = i;
        for (;;) {
            double mass = 0.0;
            for (int j : comb) mass += inst.scenarios[j].prob;
            if (mass <= eps) {
                for (int j : comb) inR[j] = 1;
                emit(mass);
                for (int j : comb) inR[j] = 0;
            }
            int i = k - 1;
            while (i >= 0 && comb[i] == m - k + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int q = i + 1; q < k; ++q) comb[q] = comb[q - 1] + 1;
        }
    }

    std::sort(fam.sets.begin(), fam.sets.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return fam;
}

/// Per-period envelope of cumulative demand over S and its increments.
struct DeltaProfile {
    std::vector<double> dS;
    std::vector<double> delta;
};

inline DeltaProfile delta_profile(const Instance& inst, const std::vector<int>& S) {
    const Envelope env = make_envelope(inst, cumulants(inst), S);
    return {env.dMax, env.delta};
}

/// Exact subproblem solve for a fixed occurred set: the transformed objective
/// reduces to single-item uncapacitated lot sizing over the merged stream
/// (d_1..d_p, delta_{p+1}..delta_T), solved by the O(T^2) regeneration
/// recursion. Ties break toward fewer setups, then an earlier last setup.
inline PlanSolution solve_s_dp(const Instance& inst, const std::vector<int>& S) {
    if (S.empty()) throw EmptySetError();
    {
        const WwReport ww = check_ww(inst);
        if (!ww.holds)
            throw AssumptionViolatedError("period " + std::to_string(ww.violations.front()));
    }
    const int T = inst.T, p = inst.p;
    const SubproblemCosts costs = subproblem_costs(inst, S);
    const Envelope env = make_envelope(inst, cumulants(inst), S);

    std::vector<double> dem(T), w(T);
    for (int t = 0; t < T; ++t) {
        dem[t] = (t < p) ? inst.d[t] : env.delta[t - p];
        if (t < p) {
            w[t] = costs.hPrime[t];
        } else {
            double sum = 0.0;
            for (int j : S) sum += costs.hJS[j][t - p];
            w[t] = sum;
        }
    }

    // prefix tables: demCum[i] = sum dem[0..i-1]; wCum likewise; wd[i] =
    // sum_{q<i} w[q] * demCum[q+1]
    std::vector<double> demCum(T + 1, 0.0), wCum(T + 1, 0.0), wd(T + 1, 0.0);
    for (int i = 0; i < T; ++i) {
        demCum[i + 1] = demCum[i] + dem[i];
        wCum[i + 1] = wCum[i] + w[i];
        wd[i + 1] = wd[i] + w[i] * demCum[i + 1];
    }

    struct State {
        double cost = 0.0;
        int setups = 0;
        int k = -1; // 0-based start of the last regeneration interval; -1 none
    };
    std::vector<State> F(T + 1);
    for (int l = 1; l <= T; ++l) {
        State best;
        bool have = false;
        if (demCum[l] <= kCompareTol) { // demand-free prefix needs no setup
            best = {0.0, 0, -1};
            have = true;
        }
        for (int k = 1; k <= l; ++k) {
            // interval [k-1, l-1] produced at k-1; holding cost of carrying
            // dem[i+1..l-1] at the end of each interior period i
            const double hold = demCum[l] * (wCum[l] - wCum[k - 1]) - (wd[l] - wd[k - 1]);
            const State cand{F[k - 1].cost + inst.beta[k - 1] + hold, F[k - 1].setups + 1, k - 1};
            if (!have || cand.cost < best.cost ||
                (cand.cost == best.cost &&
                 (cand.setups < best.setups ||
                  (cand.setups == best.setups && cand.k < best.k)))) {
                best = cand;
                have = true;
            }
        }
        F[l] = best;
    }

    std::vector<int> y(T, 0);
    for (int l = T; l > 0;) {
        const int k = F[l].k;
        if (k < 0) break;
        y[k] = 1;
        l = k;
    }
    return closed_form(inst, S, y);
}

/// Exhaustive optimum over the admissible family: best per-set DP solve, ties
/// broken by enumeration order.
inline PlanSolution opt_star_enumeration(const Instance& inst, bool minimalOnly = true) {
    const ScenarioFamily fam = enumerate_family(inst, minimalOnly);
    PlanSolution best;
    bool have = false;
    for (const auto& S : fam.sets) {
        PlanSolution sol = solve_s_dp(inst, S);
        if (!have || sol.objective < best.objective) {
            best = std::move(sol);
            have = true;
        }
    }
    if (!have) throw EmptySetError();
    return best;
}

} // namespace slscc
