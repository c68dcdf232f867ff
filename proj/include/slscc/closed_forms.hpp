#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "slscc/instance.hpp"
#include "slscc/solution.hpp"

namespace slscc {

/// Running maximum of scenario demand cumulants over an occurred set, and its
/// per-period increments. Indexed by second-stage offset k = t - p.
struct Envelope {
    std::vector<double> dMax;  // max_{j in J} D[j][k]
    std::vector<double> delta; // increments; prefix sums reproduce dMax

    /// Envelope value through 0-based period t (0 for t < p).
    double at(int t, int p) const {
        if (t < p) return 0.0;
        return dMax[t - p];
    }
};

inline Envelope make_envelope(const Instance& inst, const CumulantTable& cum,
                              const std::vector<int>& J) {
    if (J.empty()) throw EmptySetError();
    Envelope env;
    const int n = inst.secondStageLen();
    env.dMax.assign(n, 0.0);
    env.delta.assign(n, 0.0);
    for (int k = 0; k < n; ++k) {
        double best = cum.D[J[0]][k];
        for (std::size_t q = 1; q < J.size(); ++q) best = std::max(best, cum.D[J[q]][k]);
        env.dMax[k] = best;
    }
    for (int k = 0; k < n; ++k)
        env.delta[k] = pos_part(env.dMax[k] - (k > 0 ? env.dMax[k - 1] : 0.0));
    return env;
}

namespace detail {

inline constexpr double kCoverTol = 1e-9;

/// Minimal first-stage inventory for a setup pattern: demand of later periods
/// carried while no setup intervenes, plus the second-stage envelope through
/// the period before the next setup.
inline std::vector<double> zio_first_stage(const Instance& inst, const SetupPattern& pat,
                                           const Envelope& env) {
    const int p = inst.p;
    std::vector<double> s(p, 0.0);
    for (int i = p - 1; i >= 0; --i) {
        const int nxt = pat.next(i); // sentinel T when none
        double v = 0.0;
        for (int t = i + 1; t < std::min(nxt, p); ++t) v += inst.d[t];
        if (nxt >= p) v += env.at(nxt - 1, p);
        s[i] = v;
    }
    return s;
}

/// True when every positive merged demand has a setup at or before it.
inline bool zio_covered(const Instance& inst, const SetupPattern& pat, const Envelope& env) {
    bool seen = false;
    for (int t = 0; t < inst.T; ++t) {
        if (pat.y()[t] == 1) seen = true;
        const double dem = (t < inst.p) ? inst.d[t] : env.delta[t - inst.p];
        if (dem > kCoverTol && !seen) return false;
    }
    return true;
}

} // namespace detail

/// Minimal-inventory plan for the setup pattern y with scenarios J kept
/// (others dropped). Production follows the envelope increments between
/// setups; inventories come out of flow balance via evaluate_plan. The chance
/// constraint is not enforced here.
inline PlanSolution closed_form_for_set(const Instance& inst, const CumulantTable& cum,
                                        const std::vector<int>& J, const std::vector<int>& y) {
    if (J.empty()) throw EmptySetError();
    const int T = inst.T, p = inst.p;
    const Envelope env = make_envelope(inst, cum, J);
    SetupPattern pat(y);
    if (!detail::zio_covered(inst, pat, env))
        throw InfeasiblePatternError("a positive demand precedes the first setup covering it");

    const std::vector<double> s = detail::zio_first_stage(inst, pat, env);
    std::vector<double> x(T, 0.0);
    for (int i = 0; i < p; ++i) {
        if (y[i] == 0) continue; // flow balance closes exactly at zero
        x[i] = pos_part(inst.d[i] + s[i] - (i > 0 ? s[i - 1] : 0.0));
    }
    for (int i = p; i < T; ++i) {
        if (y[i] == 0) continue;
        x[i] = pos_part(env.at(pat.next(i) - 1, p) - env.at(i - 1, p));
    }

    std::vector<int> z(inst.m(), 1);
    for (int j : J) z[j] = 0;
    return evaluate_plan(inst, y, x, z, /*enforceChance=*/false);
}

/// Optimal plan for a fixed indicator vector z (occurred set J_z) and setup
/// pattern y. The chance constraint is deliberately not required.
inline PlanSolution closed_form_general(const Instance& inst, const std::vector<int>& z,
                                        const std::vector<int>& y) {
    const std::vector<int> J = occurred_set(z);
    if (J.empty()) throw EmptySetError();
    return closed_form_for_set(inst, cumulants(inst), J, y);
}

/// Same plan addressed by an occurred-scenario index set.
inline PlanSolution closed_form(const Instance& inst, const std::vector<int>& S,
                                const std::vector<int>& y) {
    return closed_form_for_set(inst, cumulants(inst), S, y);
}

/// Second-stage plan computed by the forward recursion in the per-scenario
/// inventories (production at a setup tops every kept scenario up to the next
/// regeneration point). Used to cross-check the direct envelope form.
struct RecursivePlan {
    std::vector<double> x;               // length T
    std::vector<std::vector<double>> s2; // m x (T-p); dropped rows zero
};

inline RecursivePlan closed_form_recursive(const Instance& inst, const std::vector<int>& z,
                                           const std::vector<int>& y) {
    const std::vector<int> J = occurred_set(z);
    if (J.empty()) throw EmptySetError();
    const int T = inst.T, p = inst.p;
    const CumulantTable cum = cumulants(inst);
    const Envelope env = make_envelope(inst, cum, J);
    SetupPattern pat(y);
    if (!detail::zio_covered(inst, pat, env))
        throw InfeasiblePatternError("a positive demand precedes the first setup covering it");

    RecursivePlan out;
    out.x.assign(T, 0.0);
    out.s2.assign(inst.m(), std::vector<double>(inst.secondStageLen(), 0.0));

    const std::vector<double> s = detail::zio_first_stage(inst, pat, env);
    for (int i = 0; i < p; ++i)
        if (y[i] == 1) out.x[i] = pos_part(inst.d[i] + s[i] - (i > 0 ? s[i - 1] : 0.0));

    std::vector<double> prev(inst.m(), (p > 0 && !s.empty()) ? s[p - 1] : 0.0);
    for (int i = p; i < T; ++i) {
        if (y[i] == 1) {
            double best = 0.0;
            for (int j : J) {
                const double need =
                    cum.at(j, pat.next(i) - 1, p) - cum.at(j, i - 1, p) - prev[j];
                best = std::max(best, need);
            }
            out.x[i] = best;
        }
        for (int j : J) {
            prev[j] += out.x[i] - inst.scenarios[j].demands[i - p];
            out.s2[j][i - p] = prev[j];
        }
    }
    return out;
}

/// Tight evaluation path for exhaustive search: objective of the
/// minimal-inventory plan for a setup bitmask, or nullopt when the pattern
/// cannot cover a positive merged demand. probCumD[k] carries
/// sum_{j in J} p_j D[j][k]; probMass is sum_{j in J} p_j.
inline std::optional<double> zio_objective_mask(const Instance& inst, const Envelope& env,
                                                const std::vector<double>& probCumD,
                                                double probMass, std::uint64_t ymask) {
    const int T = inst.T, p = inst.p;
    if (T > 63) throw TooLargeError("bitmask evaluation supports T <= 63");
    int nxt[65]; // next setup at or after t; sentinel T
    nxt[T] = T;
    for (int t = T - 1; t >= 0; --t) nxt[t] = (ymask >> t) & 1u ? t : nxt[t + 1];

    bool seen = false;
    for (int t = 0; t < T; ++t) {
        if ((ymask >> t) & 1u) seen = true;
        const double dem = (t < p) ? inst.d[t] : env.delta[t - p];
        if (dem > detail::kCoverTol && !seen) return std::nullopt;
    }

    double obj = 0.0;
    for (int t = 0; t < T; ++t)
        if ((ymask >> t) & 1u) obj += inst.beta[t];

    double sPrev = 0.0;
    for (int i = 0; i < p; ++i) {
        const int nx = nxt[i + 1];
        double sHere = 0.0;
        for (int t = i + 1; t < std::min(nx, p); ++t) sHere += inst.d[t];
        if (nx >= p) sHere += env.at(nx - 1, p);
        obj += inst.h[i] * sHere;
        if ((ymask >> i) & 1u) obj += inst.alpha[i] * pos_part(inst.d[i] + sHere - sPrev);
        sPrev = sHere;
    }

    for (int i = p; i < T; ++i) {
        const double envEnd = env.at(nxt[i + 1] - 1, p);
        if ((ymask >> i) & 1u) obj += inst.alpha[i] * (envEnd - env.at(i - 1, p));
        obj += inst.h[i] * (probMass * envEnd - probCumD[i - p]);
    }
    return obj;
}

} // namespace slscc
