#pragma once

#include <string>
#include <vector>

#include "slscc/closed_forms.hpp"
#include "slscc/instance.hpp"
#include "slscc/linear_model.hpp"

namespace slscc {

/// Transformed objective weights obtained by substituting the second-stage
/// production out of the subproblem objective. hPrime prices first-stage
/// inventory, hJS the per-scenario second-stage inventory, r is the fixed
/// per-period charge; constant additionally folds in the inventory offsets so
/// a pure lot-sizing recursion can use it directly.
struct SubproblemCosts {
    std::vector<double> hPrime;           // length p
    std::vector<std::vector<double>> hJS; // m x (T-p)
    std::vector<double> r;                // length T
    double constant = 0.0;

    double rSum() const {
        double v = 0.0;
        for (double e : r) v += e;
        return v;
    }
};

inline SubproblemCosts subproblem_costs(const Instance& inst, const std::vector<int>& S) {
    if (S.empty()) throw EmptySetError();
    const int T = inst.T, p = inst.p;
    double mass = 0.0;
    std::vector<char> inS(inst.m(), 0);
    for (int j : S) {
        mass += inst.scenarios[j].prob;
        inS[j] = 1;
    }

    const auto alphaNext = [&](int t0) { return t0 + 1 < T ? inst.alpha[t0 + 1] : 0.0; };

    SubproblemCosts costs;
    costs.hPrime.resize(p);
    for (int t = 0; t < p; ++t) costs.hPrime[t] = inst.alpha[t] + inst.h[t] - alphaNext(t);

    costs.hJS.assign(inst.m(), std::vector<double>(inst.secondStageLen(), 0.0));
    for (int j = 0; j < inst.m(); ++j) {
        const double pj = inst.scenarios[j].prob;
        for (int k = 0; k < inst.secondStageLen(); ++k) {
            const int t = p + k;
            costs.hJS[j][k] = inS[j]
                                  ? (pj / mass) * (inst.alpha[t] + mass * inst.h[t] - alphaNext(t))
                                  : pj * inst.h[t];
        }
    }

    costs.r.resize(T);
    for (int t = 0; t < p; ++t) costs.r[t] = inst.alpha[t] * inst.d[t];
    for (int k = 0; k < inst.secondStageLen(); ++k) {
        double wd = 0.0;
        for (int j : S) wd += inst.scenarios[j].prob * inst.scenarios[j].demands[k];
        costs.r[p + k] = inst.alpha[p + k] / mass * wd;
    }

    const CumulantTable cum = cumulants(inst);
    const Envelope env = make_envelope(inst, cum, S);
    costs.constant = costs.rSum();
    for (int k = 0; k < inst.secondStageLen(); ++k)
        for (int j : S) costs.constant += costs.hJS[j][k] * (env.dMax[k] - cum.D[j][k]);
    return costs;
}

/// Variable-block offsets of a built model. Blocks appear in the fixed order
/// s, x, s_ji (row-major by scenario), u, y, z; absent blocks have offset -1.
struct VarLayout {
    int T = 0, p = 0, m = 0;
    int sOff = -1, xOff = -1, xBase = 0, sjiOff = -1, uOff = -1, yOff = -1, zOff = -1;

    int sVar(int t0) const { return sOff + t0; }
    int xVar(int t0) const { return xOff + (t0 - xBase); }
    int sjiVar(int j, int t0) const { return sjiOff + j * (T - p) + (t0 - p); }
    int yVar(int t0) const { return yOff + t0; }
    int zVar(int j) const { return zOff + j; }
    /// Carried-demand indicator for the setup-free window [a, b], 0-based.
    int uVar(int a, int b) const { return uOff + a * T - a * (a - 1) / 2 + (b - a); }
    int uCount() const { return T * (T + 1) / 2; }
};

struct BuiltModel {
    LinearModel model;
    VarLayout layout;
    std::vector<std::string> rowFamily; // parallel to model.rows

    int familyCount(const std::string& fam) const {
        int n = 0;
        for (const auto& f : rowFamily)
            if (f == fam) ++n;
        return n;
    }
};

/// Scenario fixings at a branch-and-bound node: J1 holds z_j = 0, J2 holds
/// z_j = 1; the rest stay free.
struct NodeConstraintSet {
    std::vector<int> J1;
    std::vector<int> J2;
    long creationOrder = 0;
};

namespace detail {

inline std::string idx2(const char* stem, int a, int b) {
    return std::string(stem) + "_" + std::to_string(a) + "_" + std::to_string(b);
}

inline std::string idx1(const char* stem, int a) {
    return std::string(stem) + "_" + std::to_string(a);
}

/// Formula helper working in 1-based period indexing (the natural indexing
/// for the recurrences); translation to 0-based storage happens only here.
struct OneBased {
    const Instance& inst;
    const CumulantTable cum;
    const int T, p, m;

    explicit OneBased(const Instance& i)
        : inst(i), cum(cumulants(i)), T(i.T), p(i.p), m(i.m()) {}

    double d(int t) const { return inst.d[t - 1]; }                       // t in [1,p]
    double dem(int tau, int t) const { return inst.scenarios[tau - 1].demands[t - p - 1]; }
    double D(int tau, int t) const { return t <= p ? 0.0 : cum.D[tau - 1][t - p - 1]; }
    double prob(int tau) const { return inst.scenarios[tau - 1].prob; }

    double sumD(int from, int to) const { // sum of first-stage d over [from, min(to,p)]
        double v = 0.0;
        for (int t = std::max(1, from); t <= std::min(to, p); ++t) v += d(t);
        return v;
    }
    double sumDem(int tau, int from, int to) const { // second-stage demand over [max(from,p+1), to]
        return D(tau, to) - D(tau, std::max(from - 1, p));
    }
};

} // namespace detail

/// Deterministic-equivalent model: explicit production, big-M setup links,
/// demand-satisfaction rows with the indicator moved into the z coefficient,
/// and the per-scenario inventory definition linearized with
/// M'_j = max_tau D_tauT + D_jT. z is fixed to zero when epsilon is zero.
inline BuiltModel build_de(const Instance& inst) {
    detail::OneBased pa(inst);
    const int T = pa.T, p = pa.p, m = pa.m;
    BuiltModel bm;
    LinearModel& md = bm.model;
    VarLayout& L = bm.layout;
    L.T = T;
    L.p = p;
    L.m = m;
    const bool zFixed = inst.epsilon <= 1e-12;

    L.sOff = 0;
    for (int t = 0; t < p; ++t) md.addVar(detail::idx1("s", t), 0.0, kInf, inst.h[t]);
    L.xOff = md.numVars();
    L.xBase = 0;
    for (int t = 0; t < T; ++t) md.addVar(detail::idx1("x", t), 0.0, kInf, inst.alpha[t]);
    L.sjiOff = md.numVars();
    for (int j = 0; j < m; ++j)
        for (int t = p; t < T; ++t)
            md.addVar(detail::idx2("sj", j, t), 0.0, kInf, pa.prob(j + 1) * inst.h[t]);
    L.yOff = md.numVars();
    for (int t = 0; t < T; ++t) md.addVar(detail::idx1("y", t), 0.0, 1.0, inst.beta[t], true);
    L.zOff = md.numVars();
    for (int j = 0; j < m; ++j) md.addVar(detail::idx1("z", j), 0.0, zFixed ? 0.0 : 1.0, 0.0, true);

    auto tag = [&](const char* fam) { bm.rowFamily.push_back(fam); };

    // first-stage flow balance
    for (int i = 1; i <= p; ++i) {
        std::vector<std::pair<int, double>> co;
        co.push_back({L.xVar(i - 1), 1.0});
        if (i >= 2) co.push_back({L.sVar(i - 2), 1.0});
        co.push_back({L.sVar(i - 1), -1.0});
        md.addRow("balance_" + std::to_string(i - 1), std::move(co), Sense::EQ, pa.d(i));
        tag("balance");
    }

    // cumulative satisfaction per scenario
    for (int t = p + 1; t <= T; ++t)
        for (int tau = 1; tau <= m; ++tau) {
            std::vector<std::pair<int, double>> co;
            if (p >= 1) co.push_back({L.sVar(p - 1), 1.0});
            for (int i = p + 1; i <= t; ++i) co.push_back({L.xVar(i - 1), 1.0});
            co.push_back({L.zVar(tau - 1), pa.D(tau, t)});
            md.addRow("cover_" + std::to_string(t - 1) + "_" + std::to_string(tau - 1),
                      std::move(co), Sense::GE, pa.D(tau, t));
            tag("cover");
        }

    // chance constraint
    {
        std::vector<std::pair<int, double>> co;
        for (int j = 1; j <= m; ++j) co.push_back({L.zVar(j - 1), pa.prob(j)});
        md.addRow("chance", std::move(co), Sense::LE, inst.epsilon);
        tag("chance");
    }

    // linearized per-scenario inventory definition
    double maxDT = 0.0;
    for (int tau = 1; tau <= m; ++tau) maxDT = std::max(maxDT, pa.D(tau, T));
    for (int i = p + 1; i <= T; ++i)
        for (int j = 1; j <= m; ++j) {
            const double bigM = maxDT + pa.D(j, T);
            std::vector<std::pair<int, double>> co;
            co.push_back({L.sjiVar(j - 1, i - 1), 1.0});
            if (p >= 1) co.push_back({L.sVar(p - 1), -1.0});
            for (int t = p + 1; t <= i; ++t) co.push_back({L.xVar(t - 1), -1.0});
            co.push_back({L.zVar(j - 1), bigM});
            md.addRow("inv_" + std::to_string(i - 1) + "_" + std::to_string(j - 1),
                      std::move(co), Sense::GE, -pa.D(j, i));
            tag("inventory");
        }

    // setup links; the big-M values bound any useful production level
    for (int i = 1; i <= T; ++i) {
        double Mi;
        if (i <= p) {
            Mi = pa.sumD(i, p) + maxDT;
        } else {
            Mi = 0.0;
            for (int tau = 1; tau <= m; ++tau) Mi = std::max(Mi, pa.D(tau, T) - pa.D(tau, i - 1));
        }
        md.addRow("setup_" + std::to_string(i - 1),
                  {{L.xVar(i - 1), 1.0}, {L.yVar(i - 1), -Mi}}, Sense::LE, 0.0);
        tag("setup-link");
    }
    return bm;
}

namespace detail {

/// First-stage inventory rows shared by every reformulation. For i = 0 there
/// is no inventory variable (stock entering period 1 is zero), which turns the
/// rows into pure setup-coverage constraints.
template <typename AddRow>
inline void firstStageRows(const OneBased& pa, const VarLayout& L, AddRow&& add,
                           const char* famA, const char* famB,
                           const std::vector<double>* delta /* envelope increments or null */,
                           const char* famTau, const std::vector<int>& tauSet) {
    const int T = pa.T, p = pa.p;
    const auto deltaSum = [&](int from, int to) { // over [max(from,p+1), to]
        double v = 0.0;
        for (int t = std::max(from, p + 1); t <= to; ++t) v += (*delta)[t - p - 1];
        return v;
    };

    // pure first-stage horizon (famA)
    for (int i = 0; i <= p; ++i)
        for (int nu = i + 1; nu <= p; ++nu) {
            std::vector<std::pair<int, double>> co;
            if (i >= 1) co.push_back({L.sVar(i - 1), 1.0});
            for (int k = i + 1; k <= nu; ++k) co.push_back({L.yVar(k - 1), pa.sumD(k, nu)});
            add(idx2(famA, i, nu), std::move(co), Sense::GE, pa.sumD(i + 1, nu), famA);
        }

    // horizon reaching into the second stage, against the envelope (famB)
    if (delta != nullptr) {
        for (int i = 0; i <= p; ++i)
            for (int nu = p + 1; nu <= T; ++nu) {
                std::vector<std::pair<int, double>> co;
                if (i >= 1) co.push_back({L.sVar(i - 1), 1.0});
                for (int k = i + 1; k <= nu; ++k)
                    co.push_back({L.yVar(k - 1), pa.sumD(k, p) + deltaSum(k, nu)});
                add(idx2(famB, i, nu), std::move(co), Sense::GE,
                    pa.sumD(i + 1, p) + deltaSum(p + 1, nu), famB);
            }
    }

    // horizon reaching into the second stage, per scenario with z (famTau)
    for (int tau : tauSet) {
        for (int i = 0; i <= p; ++i)
            for (int nu = p + 1; nu <= T; ++nu) {
                std::vector<std::pair<int, double>> co;
                if (i >= 1) co.push_back({L.sVar(i - 1), 1.0});
                for (int k = i + 1; k <= nu; ++k)
                    co.push_back({L.yVar(k - 1), pa.sumD(k, p) + pa.sumDem(tau + 1, k, nu)});
                co.push_back({L.zVar(tau), pa.D(tau + 1, nu)});
                add(idx2(famTau, i, nu) + "_" + std::to_string(tau), std::move(co), Sense::GE,
                    pa.sumD(i + 1, p) + pa.D(tau + 1, nu), famTau);
            }
    }
}

} // namespace detail

/// Reformulation with production eliminated from the first stage: inventory
/// lower bounds tight at the closed-form optimal levels, explicit second-stage
/// production, and the chance constraint. The objective carries the constant
/// sum(alpha_i d_i) over the first stage.
inline BuiltModel build_nslscc(const Instance& inst) {
    detail::OneBased pa(inst);
    const int T = pa.T, p = pa.p, m = pa.m;
    BuiltModel bm;
    LinearModel& md = bm.model;
    VarLayout& L = bm.layout;
    L.T = T;
    L.p = p;
    L.m = m;
    const bool zFixed = inst.epsilon <= 1e-12;

    L.sOff = 0;
    for (int t = 0; t < p; ++t) {
        const double cost = (t == p - 1) ? inst.alpha[t] + inst.h[t]
                                         : inst.alpha[t] + inst.h[t] - inst.alpha[t + 1];
        md.addVar(detail::idx1("s", t), 0.0, kInf, cost);
    }
    L.xOff = md.numVars();
    L.xBase = p;
    for (int t = p; t < T; ++t) md.addVar(detail::idx1("x", t), 0.0, kInf, inst.alpha[t]);
    L.sjiOff = md.numVars();
    for (int j = 0; j < m; ++j)
        for (int t = p; t < T; ++t)
            md.addVar(detail::idx2("sj", j, t), 0.0, kInf, pa.prob(j + 1) * inst.h[t]);
    L.yOff = md.numVars();
    for (int t = 0; t < T; ++t) md.addVar(detail::idx1("y", t), 0.0, 1.0, inst.beta[t], true);
    L.zOff = md.numVars();
    for (int j = 0; j < m; ++j) md.addVar(detail::idx1("z", j), 0.0, zFixed ? 0.0 : 1.0, 0.0, true);
    for (int t = 0; t < p; ++t) md.objectiveConstant += inst.alpha[t] * inst.d[t];

    auto add = [&](std::string name, std::vector<std::pair<int, double>> co, Sense sense,
                   double rhs, const char* fam) {
        md.addRow(std::move(name), std::move(co), sense, rhs);
        bm.rowFamily.push_back(fam);
    };

    std::vector<int> allTau(m);
    for (int j = 0; j < m; ++j) allTau[j] = j;
    detail::firstStageRows(pa, L, add, "s-carry", "", nullptr, "s-cover", allTau);

    // production must cover the per-scenario envelope between setups
    for (int i = p + 1; i <= T; ++i)
        for (int tau = 1; tau <= m; ++tau)
            for (int nu = i; nu <= T; ++nu) {
                const double C = pa.D(tau, nu) - pa.D(tau, i - 1);
                std::vector<std::pair<int, double>> co;
                co.push_back({L.xVar(i - 1), 1.0});
                const int sPrev = (i - 1 == p) ? (p >= 1 ? L.sVar(p - 1) : -1)
                                               : L.sjiVar(tau - 1, i - 2);
                if (sPrev >= 0) co.push_back({sPrev, 1.0});
                co.push_back({L.yVar(i - 1), -C});
                for (int k = i + 1; k <= nu; ++k)
                    co.push_back({L.yVar(k - 1), pa.sumDem(tau, k, nu)});
                co.push_back({L.zVar(tau - 1), C});
                add(detail::idx2("x_cover", i, nu) + "_" + std::to_string(tau - 1), std::move(co),
                    Sense::GE, 0.0, "x-cover");
            }

    // per-scenario inventory lower bounds, horizon extended down to nu = i
    for (int i = p + 1; i <= T; ++i)
        for (int tau = 1; tau <= m; ++tau)
            for (int j = 1; j <= m; ++j)
                for (int nu = i; nu <= T; ++nu) {
                    std::vector<std::pair<int, double>> co;
                    co.push_back({L.sjiVar(j - 1, i - 1), 1.0});
                    for (int k = i + 1; k <= nu; ++k)
                        co.push_back({L.yVar(k - 1), pa.sumDem(tau, k, nu)});
                    const double ztau = pa.D(tau, nu);
                    const double zj = pa.D(tau, nu) - pa.D(j, i);
                    if (tau == j) {
                        co.push_back({L.zVar(tau - 1), ztau + zj});
                    } else {
                        co.push_back({L.zVar(tau - 1), ztau});
                        co.push_back({L.zVar(j - 1), zj});
                    }
                    add(detail::idx2("sj_cover", i, nu) + "_" + std::to_string(tau - 1) + "_" +
                            std::to_string(j - 1),
                        std::move(co), Sense::GE, pa.D(tau, nu) - pa.D(j, i), "sj-cover");
                }

    // chance constraint
    {
        std::vector<std::pair<int, double>> co;
        for (int j = 1; j <= m; ++j) co.push_back({L.zVar(j - 1), pa.prob(j)});
        add("chance", std::move(co), Sense::LE, inst.epsilon, "chance");
    }
    return bm;
}

/// Compact subproblem model for a fixed occurred set S: production
/// substituted out, objective from subproblem_costs, inventory rows against
/// the S-envelope. Scenarios outside S have their inventory fixed to zero.
inline BuiltModel build_s_lp(const Instance& inst, const std::vector<int>& S) {
    if (S.empty()) throw EmptySetError();
    detail::OneBased pa(inst);
    const int T = pa.T, p = pa.p, m = pa.m;
    const SubproblemCosts costs = subproblem_costs(inst, S);
    const Envelope env = make_envelope(inst, pa.cum, S);
    std::vector<char> inS(m, 0);
    for (int j : S) inS[j] = 1;

    BuiltModel bm;
    LinearModel& md = bm.model;
    VarLayout& L = bm.layout;
    L.T = T;
    L.p = p;
    L.m = m;

    L.sOff = 0;
    for (int t = 0; t < p; ++t) md.addVar(detail::idx1("s", t), 0.0, kInf, costs.hPrime[t]);
    L.sjiOff = md.numVars();
    for (int j = 0; j < m; ++j)
        for (int t = p; t < T; ++t)
            md.addVar(detail::idx2("sj", j, t), 0.0, inS[j] ? kInf : 0.0, costs.hJS[j][t - p]);
    L.yOff = md.numVars();
    for (int t = 0; t < T; ++t) md.addVar(detail::idx1("y", t), 0.0, 1.0, inst.beta[t], true);
    md.objectiveConstant = costs.rSum();

    auto add = [&](std::string name, std::vector<std::pair<int, double>> co, Sense sense,
                   double rhs, const char* fam) {
        md.addRow(std::move(name), std::move(co), sense, rhs);
        bm.rowFamily.push_back(fam);
    };

    detail::firstStageRows(pa, L, add, "s-carry", "s-envelope", &env.delta, "", {});

    // kept-scenario inventory against the envelope, horizon down to nu = i
    const auto envAt = [&](int t) { return t <= p ? 0.0 : env.dMax[t - p - 1]; };
    for (int i = p + 1; i <= T; ++i)
        for (int j : S)
            for (int nu = i; nu <= T; ++nu) {
                std::vector<std::pair<int, double>> co;
                co.push_back({L.sjiVar(j, i - 1), 1.0});
                for (int k = i + 1; k <= nu; ++k) {
                    double w = 0.0;
                    for (int t = std::max(k, p + 1); t <= nu; ++t) w += env.delta[t - p - 1];
                    co.push_back({L.yVar(k - 1), w});
                }
                add(detail::idx2("sj_env", i, nu) + "_" + std::to_string(j), std::move(co), Sense::GE,
                    envAt(nu) - pa.D(j + 1, i), "sj-envelope");
            }
    return bm;
}

/// Extended subproblem model: the carried-demand indicators u make the
/// inventory definition an equality and the (u, y) block an interval matrix.
inline BuiltModel build_s_extended(const Instance& inst, const std::vector<int>& S) {
    if (S.empty()) throw EmptySetError();
    detail::OneBased pa(inst);
    const int T = pa.T, p = pa.p, m = pa.m;
    const SubproblemCosts costs = subproblem_costs(inst, S);
    const Envelope env = make_envelope(inst, pa.cum, S);
    std::vector<char> inS(m, 0);
    for (int j : S) inS[j] = 1;

    BuiltModel bm;
    LinearModel& md = bm.model;
    VarLayout& L = bm.layout;
    L.T = T;
    L.p = p;
    L.m = m;

    L.sOff = 0;
    for (int t = 0; t < p; ++t) md.addVar(detail::idx1("s", t), 0.0, kInf, costs.hPrime[t]);
    L.sjiOff = md.numVars();
    for (int j = 0; j < m; ++j)
        for (int t = p; t < T; ++t)
            md.addVar(detail::idx2("sj", j, t), 0.0, inS[j] ? kInf : 0.0, costs.hJS[j][t - p]);
    L.uOff = md.numVars();
    for (int a = 0; a < T; ++a)
        for (int b = a; b < T; ++b) md.addVar(detail::idx2("u", a, b), 0.0, kInf, 0.0);
    L.yOff = md.numVars();
    for (int t = 0; t < T; ++t) md.addVar(detail::idx1("y", t), 0.0, 1.0, inst.beta[t], true);
    md.objectiveConstant = costs.rSum();

    auto add = [&](std::string name, std::vector<std::pair<int, double>> co, Sense sense,
                   double rhs, const char* fam) {
        md.addRow(std::move(name), std::move(co), sense, rhs);
        bm.rowFamily.push_back(fam);
    };
    const auto envAt = [&](int t) { return t <= p ? 0.0 : env.dMax[t - p - 1]; };
    const auto weight = [&](int t) { // demand carried by u windows ending before t
        return t <= p ? pa.d(t) : env.delta[t - p - 1];
    };

    // first-stage inventory definition; the i = 0 row forces coverage
    for (int i = 0; i <= p; ++i) {
        std::vector<std::pair<int, double>> co;
        if (i >= 1) co.push_back({L.sVar(i - 1), 1.0});
        for (int t = i + 1; t <= T; ++t) {
            const double w = weight(t);
            if (w != 0.0) co.push_back({L.uVar(i, t - 1), -w});
        }
        add(detail::idx1("s_def", i), std::move(co), Sense::EQ, 0.0, "s-def");
    }

    // kept-scenario inventory definition
    for (int i = p + 1; i <= T; ++i)
        for (int j : S) {
            std::vector<std::pair<int, double>> co;
            co.push_back({L.sjiVar(j, i - 1), 1.0});
            for (int t = i + 1; t <= T; ++t) {
                const double w = env.delta[t - p - 1];
                if (w != 0.0) co.push_back({L.uVar(i, t - 1), -w});
            }
            add(detail::idx2("sj_def", i, j), std::move(co), Sense::EQ, envAt(i) - pa.D(j + 1, i),
                "sj-def");
        }

    // u covers any window without a setup
    for (int a = 0; a < T; ++a)
        for (int b = a; b < T; ++b) {
            std::vector<std::pair<int, double>> co;
            co.push_back({L.uVar(a, b), 1.0});
            for (int k = a; k <= b; ++k) co.push_back({L.yVar(k), 1.0});
            add(detail::idx2("window", a, b), std::move(co), Sense::GE, 1.0, "window");
        }
    return bm;
}

/// Coefficient matrix of the window/bound row block (the u-window rows plus
/// u >= 0 and 0 <= y <= 1) used for the total-unimodularity spot check.
/// Columns are the u variables followed by y.
inline std::vector<std::vector<int>> setup_interval_matrix(int T) {
    const int nu = T * (T + 1) / 2;
    VarLayout L;
    L.T = T;
    L.uOff = 0;
    std::vector<std::vector<int>> rows;
    for (int a = 0; a < T; ++a)
        for (int b = a; b < T; ++b) {
            std::vector<int> row(nu + T, 0);
            row[L.uVar(a, b)] = 1;
            for (int k = a; k <= b; ++k) row[nu + k] = 1;
            rows.push_back(std::move(row));
        }
    for (int c = 0; c < nu; ++c) { // u >= 0
        std::vector<int> row(nu + T, 0);
        row[c] = 1;
        rows.push_back(std::move(row));
    }
    for (int rep = 0; rep < 2; ++rep) // y >= 0 and y <= 1
        for (int k = 0; k < T; ++k) {
            std::vector<int> row(nu + T, 0);
            row[nu + k] = 1;
            rows.push_back(std::move(row));
        }
    return rows;
}

/// Node model for partially fixed scenario indicators. Shapes match
/// build_s_lp when every scenario is fixed. Negatively priced inventory
/// variables (possible when mass(J1) < 1 - epsilon) receive a finite valid
/// upper bound so the relaxation stays bounded.
inline BuiltModel build_c_subproblem(const Instance& inst, const NodeConstraintSet& node) {
    if (node.J1.empty()) throw EmptyJ1Error();
    detail::OneBased pa(inst);
    const int T = pa.T, p = pa.p, m = pa.m;

    std::vector<int> state(m, -1); // -1 free, 0 in J1, 1 in J2
    for (int j : node.J1) state[j] = 0;
    for (int j : node.J2) {
        if (state[j] == 0) throw Error("node fixes scenario " + std::to_string(j) + " both ways");
        state[j] = 1;
    }
    double massJ2 = 0.0;
    for (int j : node.J2) massJ2 += inst.scenarios[j].prob;
    if (massJ2 > inst.epsilon + kCompareTol)
        throw InfeasibleNodeError("dropped mass " + std::to_string(massJ2) +
                                  " exceeds epsilon");
    std::vector<int> freeSet;
    for (int j = 0; j < m; ++j)
        if (state[j] == -1) freeSet.push_back(j);

    const SubproblemCosts costs = subproblem_costs(inst, node.J1);
    const Envelope env = make_envelope(inst, pa.cum, node.J1);
    double maxDT = 0.0;
    for (int tau = 1; tau <= m; ++tau) maxDT = std::max(maxDT, pa.D(tau, T));
    const double sCap = pa.sumD(1, p) + maxDT;

    BuiltModel bm;
    LinearModel& md = bm.model;
    VarLayout& L = bm.layout;
    L.T = T;
    L.p = p;
    L.m = m;

    L.sOff = 0;
    for (int t = 0; t < p; ++t)
        md.addVar(detail::idx1("s", t), 0.0, costs.hPrime[t] < 0.0 ? sCap : kInf,
                  costs.hPrime[t]);
    L.sjiOff = md.numVars();
    for (int j = 0; j < m; ++j)
        for (int t = p; t < T; ++t) {
            double hi = kInf;
            if (state[j] == 1) hi = 0.0;
            else if (costs.hJS[j][t - p] < 0.0) hi = maxDT;
            md.addVar(detail::idx2("sj", j, t), 0.0, hi, costs.hJS[j][t - p]);
        }
    L.yOff = md.numVars();
    for (int t = 0; t < T; ++t) md.addVar(detail::idx1("y", t), 0.0, 1.0, inst.beta[t], true);
    L.zOff = md.numVars();
    for (int j = 0; j < m; ++j) {
        double lo = 0.0, hi = 1.0;
        if (state[j] == 0) hi = 0.0;
        if (state[j] == 1) lo = 1.0;
        md.addVar(detail::idx1("z", j), lo, hi, 0.0, true);
    }
    md.objectiveConstant = costs.rSum();

    auto add = [&](std::string name, std::vector<std::pair<int, double>> co, Sense sense,
                   double rhs, const char* fam) {
        md.addRow(std::move(name), std::move(co), sense, rhs);
        bm.rowFamily.push_back(fam);
    };
    const auto envAt = [&](int t) { return t <= p ? 0.0 : env.dMax[t - p - 1]; };
    const auto deltaW = [&](int k, int nu) { // envelope mass in [max(k,p+1), nu]
        double w = 0.0;
        for (int t = std::max(k, p + 1); t <= nu; ++t) w += env.delta[t - p - 1];
        return w;
    };

    detail::firstStageRows(pa, L, add, "s-carry", "s-envelope", &env.delta, "s-cover", freeSet);

    // kept-scenario inventory vs the kept-set envelope
    for (int i = p + 1; i <= T; ++i)
        for (int j : node.J1)
            for (int nu = i; nu <= T; ++nu) {
                std::vector<std::pair<int, double>> co;
                co.push_back({L.sjiVar(j, i - 1), 1.0});
                for (int k = i + 1; k <= nu; ++k) co.push_back({L.yVar(k - 1), deltaW(k, nu)});
                add(detail::idx2("sj_env", i, nu) + "_" + std::to_string(j), std::move(co), Sense::GE,
                    envAt(nu) - pa.D(j + 1, i), "sj-envelope");
            }

    // kept-scenario inventory vs each free scenario
    for (int i = p + 1; i <= T; ++i)
        for (int j : node.J1)
            for (int tau : freeSet)
                for (int nu = i; nu <= T; ++nu) {
                    std::vector<std::pair<int, double>> co;
                    co.push_back({L.sjiVar(j, i - 1), 1.0});
                    for (int k = i + 1; k <= nu; ++k)
                        co.push_back({L.yVar(k - 1), pa.sumDem(tau + 1, k, nu)});
                    co.push_back({L.zVar(tau), pa.D(tau + 1, nu)});
                    add(detail::idx2("sj_cover", i, nu) + "_" + std::to_string(j) + "_" +
                            std::to_string(tau),
                        std::move(co), Sense::GE, pa.D(tau + 1, nu) - pa.D(j + 1, i), "sj-cover");
                }

    // free-scenario inventory vs the kept-set envelope
    for (int i = p + 1; i <= T; ++i)
        for (int j : freeSet)
            for (int nu = i; nu <= T; ++nu) {
                std::vector<std::pair<int, double>> co;
                co.push_back({L.sjiVar(j, i - 1), 1.0});
                for (int k = i + 1; k <= nu; ++k) co.push_back({L.yVar(k - 1), deltaW(k, nu)});
                co.push_back({L.zVar(j), envAt(nu) - pa.D(j + 1, i)});
                add(detail::idx2("sjf_env", i, nu) + "_" + std::to_string(j), std::move(co), Sense::GE,
                    envAt(nu) - pa.D(j + 1, i), "sj-envelope-free");
            }

    // free-scenario inventory vs each free scenario
    for (int i = p + 1; i <= T; ++i)
        for (int j : freeSet)
            for (int tau : freeSet)
                for (int nu = i; nu <= T; ++nu) {
                    std::vector<std::pair<int, double>> co;
                    co.push_back({L.sjiVar(j, i - 1), 1.0});
                    for (int k = i + 1; k <= nu; ++k)
                        co.push_back({L.yVar(k - 1), pa.sumDem(tau + 1, k, nu)});
                    const double ztau = pa.D(tau + 1, nu);
                    const double zj = pa.D(tau + 1, nu) - pa.D(j + 1, i);
                    if (tau == j) {
                        co.push_back({L.zVar(tau), ztau + zj});
                    } else {
                        co.push_back({L.zVar(tau), ztau});
                        co.push_back({L.zVar(j), zj});
                    }
                    add(detail::idx2("sjf_cover", i, nu) + "_" + std::to_string(j) + "_" +
                            std::to_string(tau),
                        std::move(co), Sense::GE, pa.D(tau + 1, nu) - pa.D(j + 1, i), "sj-cover-free");
                }

    // residual chance constraint over the free scenarios
    if (!freeSet.empty()) {
        std::vector<std::pair<int, double>> co;
        for (int j : freeSet) co.push_back({L.zVar(j), inst.scenarios[j].prob});
        add("chance", std::move(co), Sense::LE, inst.epsilon - massJ2, "chance");
    }
    return bm;
}

} // namespace slscc
