#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "slscc/formulations.hpp"
#include "slscc/simplex.hpp"
#include "slscc/subproblem.hpp"

namespace slscc {

struct BnbConfig {
    std::optional<double> delta; // gap tolerance; defaults to 1e-6 * (1 + |UB|)
    long nodeCap = 100000;
    int parallelism = 1; // >= 2 solves the two child relaxations concurrently
};

enum class BnbStatus { Proven, ToleranceReached, NodeCapHit };

struct BnbEvent {
    long nodeId = -1;
    double lb = 0.0;
    double ub = 0.0;
    const char* action = "";
};
using BnbEventSink = std::function<void(const BnbEvent&)>;

struct BnbResult {
    PlanSolution solution;
    double lowerBound = 0.0;
    double upperBound = 0.0;
    long nodesExpanded = 0;
    BnbStatus status = BnbStatus::Proven;
};

/// Rounds a fractional indicator vector to an admissible occurred set: sort by
/// value (ties by index), keep the shortest prefix reaching mass 1 - epsilon.
struct RoundedSet {
    std::vector<int> S;
    std::vector<int> zI;
};

inline RoundedSet round_scenario_set(const std::vector<double>& z,
                                     const std::vector<double>& probs, double epsilon) {
    const int m = static_cast<int>(z.size());
    std::vector<int> order(m);
    for (int j = 0; j < m; ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (z[a] != z[b]) return z[a] < z[b];
        return a < b;
    });
    RoundedSet out;
    out.zI.assign(m, 1);
    double mass = 0.0;
    for (int j : order) {
        out.S.push_back(j);
        out.zI[j] = 0;
        mass += probs[j];
        if (mass >= 1.0 - epsilon - kCompareTol) break;
    }
    std::sort(out.S.begin(), out.S.end());
    return out;
}

/// Index of the smallest strictly fractional entry (fractional means inside
/// [1e-6, 1 - 1e-6]); ties by index.
inline int pick_branch_var(const std::vector<double>& z) {
    int best = -1;
    for (int j = 0; j < static_cast<int>(z.size()); ++j) {
        if (z[j] < 1e-6 || z[j] > 1.0 - 1e-6) continue;
        if (best < 0 || z[j] < z[best]) best = j;
    }
    if (best < 0) throw NoFractionalError();
    return best;
}

struct NodeLr {
    LpResult lp;
    std::vector<double> zRelax;
    std::vector<double> yRelax;
};

/// Linear relaxation of a node: the fixed-set subproblem model when some
/// scenario is pinned to z = 0, otherwise the full reformulation with the
/// node's z = 1 pins applied.
inline NodeLr solve_node_lr(const Instance& inst, const NodeConstraintSet& node) {
    NodeLr out;
    if (!node.J1.empty()) {
        const BuiltModel bm = build_c_subproblem(inst, node);
        out.lp = solve_lp(bm.model);
        if (out.lp.status != LpStatus::Infeasible) {
            out.zRelax.resize(inst.m());
            for (int j = 0; j < inst.m(); ++j) out.zRelax[j] = out.lp.point[bm.layout.zVar(j)];
            out.yRelax.resize(inst.T);
            for (int t = 0; t < inst.T; ++t) out.yRelax[t] = out.lp.point[bm.layout.yVar(t)];
        }
        return out;
    }
    double massJ2 = 0.0;
    for (int j : node.J2) massJ2 += inst.scenarios[j].prob;
    if (massJ2 > inst.epsilon + kCompareTol)
        throw InfeasibleNodeError("dropped mass exceeds epsilon");
    const BuiltModel bm = build_nslscc(inst);
    std::vector<std::pair<int, double>> fixings;
    for (int j : node.J2) fixings.push_back({bm.layout.zVar(j), 1.0});
    out.lp = fix_and_solve(bm.model, fixings);
    if (out.lp.status != LpStatus::Infeasible) {
        out.zRelax.resize(inst.m());
        for (int j = 0; j < inst.m(); ++j) out.zRelax[j] = out.lp.point[bm.layout.zVar(j)];
        out.yRelax.resize(inst.T);
        for (int t = 0; t < inst.T; ++t) out.yRelax[t] = out.lp.point[bm.layout.yVar(t)];
    }
    return out;
}

namespace detail {

inline bool nearlyIntegral(const std::vector<double>& v) {
    for (double x : v)
        if (std::abs(x - std::round(x)) > 1e-6) return false;
    return true;
}

inline std::vector<int> roundVec(const std::vector<double>& v) {
    std::vector<int> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<int>(std::round(v[i]));
    return out;
}

} // namespace detail

/// Least-lower-bound branch and bound over the scenario indicators. Upper
/// bounds come from exact subproblem solves of the rounded occurred set; a
/// node whose relaxation is already integral is closed by that same solve.
/// Fully deterministic for a fixed instance and configuration, independent of
/// the worker count.
inline BnbResult branch_and_bound(const Instance& inst, const BnbConfig& config = {},
                                  const BnbEventSink& onEvent = nullptr) {
    {
        const WwReport ww = check_ww(inst);
        if (!ww.holds)
            throw AssumptionViolatedError("period " + std::to_string(ww.violations.front()));
    }
    std::vector<double> probs(inst.m());
    for (int j = 0; j < inst.m(); ++j) probs[j] = inst.scenarios[j].prob;

    const auto emit = [&](long id, double lb, double ub, const char* action) {
        if (onEvent) onEvent(BnbEvent{id, lb, ub, action});
    };

    struct Node {
        NodeConstraintSet C;
        double lb = 0.0;
        std::vector<double> zRelax;
        long id = 0;
    };

    BnbResult res;
    NodeConstraintSet rootC;
    rootC.creationOrder = 0;
    NodeLr root = solve_node_lr(inst, rootC);
    if (root.lp.status == LpStatus::Infeasible)
        throw InfeasibleError("root relaxation infeasible");
    emit(0, root.lp.objective, kInf, "root");

    std::vector<Node> live;
    live.push_back({rootC, root.lp.objective, root.zRelax, 0});
    long nextId = 1;
    double ub = kInf;
    PlanSolution incumbent;
    bool haveIncumbent = false;
    long expanded = 0;

    if (root.lp.status == LpStatus::Optimal && detail::nearlyIntegral(root.yRelax) &&
        detail::nearlyIntegral(root.zRelax)) {
        // an integral root only proves optimality when its plan prices out at
        // the relaxation value; otherwise it just seeds the incumbent
        PlanSolution cand = closed_form_general(inst, detail::roundVec(root.zRelax),
                                                detail::roundVec(root.yRelax));
        const double slack = 1e-9 * (1.0 + std::abs(cand.objective));
        if (cand.objective - root.lp.objective <= slack) {
            res.solution = std::move(cand);
            res.lowerBound = root.lp.objective;
            res.upperBound = res.solution.objective;
            res.nodesExpanded = 0;
            res.status = BnbStatus::Proven;
            emit(0, res.lowerBound, res.upperBound, "integral-root");
            return res;
        }
        ub = cand.objective;
        incumbent = std::move(cand);
        haveIncumbent = true;
        emit(0, root.lp.objective, ub, "incumbent");
    }

    const auto gapTol = [&](double upper) {
        const double slack = 1e-9 * (1.0 + std::abs(upper));
        const double delta = config.delta ? *config.delta : 1e-6 * (1.0 + std::abs(upper));
        return std::make_pair(delta + slack, slack);
    };

    auto finish = [&](double lb, BnbStatus st) {
        res.solution = incumbent;
        res.lowerBound = std::min(lb, ub);
        res.upperBound = ub;
        res.nodesExpanded = expanded;
        res.status = st;
        return res;
    };

    while (!live.empty()) {
        // least lower bound, ties by creation order
        std::size_t sel = 0;
        for (std::size_t i = 1; i < live.size(); ++i)
            if (live[i].lb < live[sel].lb ||
                (live[i].lb == live[sel].lb && live[i].id < live[sel].id))
                sel = i;
        Node node = live[sel];
        emit(node.id, node.lb, ub, "select");

        if (haveIncumbent) {
            const auto [tol, slack] = gapTol(ub);
            if (ub - node.lb <= tol)
                return finish(node.lb, ub - node.lb <= slack ? BnbStatus::Proven
                                                             : BnbStatus::ToleranceReached);
        }
        ++expanded;

        // exact solve of the rounded occurred set for an upper bound
        const RoundedSet rounded = round_scenario_set(node.zRelax, probs, inst.epsilon);
        PlanSolution cand = solve_s_dp(inst, rounded.S);
        if (!haveIncumbent || cand.objective < ub) {
            ub = cand.objective;
            incumbent = std::move(cand);
            haveIncumbent = true;
            emit(node.id, node.lb, ub, "incumbent");
        }
        {
            const auto [tol, slack] = gapTol(ub);
            if (ub - node.lb <= tol)
                return finish(node.lb, ub - node.lb <= slack ? BnbStatus::Proven
                                                             : BnbStatus::ToleranceReached);
        }

        live.erase(live.begin() + static_cast<long>(sel));

        // branching scenario: smallest fractional entry, else smallest free index
        int branchJ = -1;
        try {
            branchJ = pick_branch_var(node.zRelax);
        } catch (const NoFractionalError&) {
            for (int j = 0; j < inst.m() && branchJ < 0; ++j) {
                bool fixed = false;
                for (int q : node.C.J1) fixed = fixed || q == j;
                for (int q : node.C.J2) fixed = fixed || q == j;
                if (!fixed) branchJ = j;
            }
            if (branchJ < 0) {
                emit(node.id, node.lb, ub, "leaf");
                continue; // fully fixed: the subproblem solve above closed it
            }
        }

        NodeConstraintSet c1 = node.C; // z_j = 0 child first
        c1.J1.push_back(branchJ);
        std::sort(c1.J1.begin(), c1.J1.end());
        c1.creationOrder = nextId;
        NodeConstraintSet c2 = node.C;
        c2.J2.push_back(branchJ);
        std::sort(c2.J2.begin(), c2.J2.end());
        c2.creationOrder = nextId + 1;

        auto solveChild = [&](const NodeConstraintSet& C) -> std::optional<NodeLr> {
            double massJ2 = 0.0;
            for (int j : C.J2) massJ2 += inst.scenarios[j].prob;
            if (massJ2 > inst.epsilon + kCompareTol) return std::nullopt;
            try {
                NodeLr lr = solve_node_lr(inst, C);
                if (lr.lp.status == LpStatus::Infeasible) return std::nullopt;
                return lr;
            } catch (const InfeasibleNodeError&) {
                return std::nullopt;
            }
        };

        std::optional<NodeLr> r1, r2;
        if (config.parallelism >= 2) {
            std::thread worker([&] { r2 = solveChild(c2); });
            r1 = solveChild(c1);
            worker.join();
        } else {
            r1 = solveChild(c1);
            r2 = solveChild(c2);
        }

        const auto insert = [&](const NodeConstraintSet& C, const std::optional<NodeLr>& lr) {
            const long id = nextId++;
            if (!lr) {
                emit(id, node.lb, ub, "child-infeasible");
                return;
            }
            // unbounded relaxations contribute no bound; inherit the parent's
            const double raw =
                lr->lp.status == LpStatus::Optimal ? lr->lp.objective : -kInf;
            Node child;
            child.C = C;
            child.C.creationOrder = id;
            child.lb = std::max(node.lb, raw);
            child.zRelax = lr->zRelax;
            child.id = id;
            emit(id, child.lb, ub, "child");
            live.push_back(std::move(child));
        };
        insert(c1, r1);
        insert(c2, r2);

        // fathom by bound
        for (std::size_t i = live.size(); i-- > 0;) {
            if (live[i].lb > ub + 1e-12) {
                emit(live[i].id, live[i].lb, ub, "fathom");
                live.erase(live.begin() + static_cast<long>(i));
            }
        }

        if (expanded >= config.nodeCap) {
            double lb = ub;
            for (const auto& nd : live) lb = std::min(lb, nd.lb);
            emit(-1, lb, ub, "node-cap");
            return finish(lb, BnbStatus::NodeCapHit);
        }
    }
    emit(-1, ub, ub, "exhausted");
    return finish(ub, BnbStatus::Proven);
}

} // namespace slscc
