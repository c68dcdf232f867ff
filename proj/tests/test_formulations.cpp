#include <catch2/catch_amalgamated.hpp>

#include "slscc/formulations.hpp"
#include "slscc/oracle.hpp"
#include "slscc/simplex.hpp"
#include "slscc/subproblem.hpp"
#include "test_helpers.hpp"

using namespace slscc;

namespace {

// embeds a plan into a built model's variable vector
std::vector<double> embed(const BuiltModel& bm, const Instance& inst, const PlanSolution& sol) {
    std::vector<double> v(bm.model.numVars(), 0.0);
    const VarLayout& L = bm.layout;
    for (int t = 0; t < inst.p; ++t) v[L.sVar(t)] = sol.s[t];
    if (L.xOff >= 0)
        for (int t = L.xBase; t < inst.T; ++t) v[L.xVar(t)] = sol.x[t];
    for (int j = 0; j < inst.m(); ++j)
        for (int t = inst.p; t < inst.T; ++t) v[L.sjiVar(j, t)] = sol.s2[j][t - inst.p];
    for (int t = 0; t < inst.T; ++t) v[L.yVar(t)] = sol.y[t];
    if (L.zOff >= 0)
        for (int j = 0; j < inst.m(); ++j) v[L.zVar(j)] = sol.z[j];
    return v;
}

std::pair<std::vector<int>, std::vector<int>> randomFeasibleYZ(const Instance& inst,
                                                               std::mt19937_64& rng) {
    std::vector<int> z(inst.m(), 0);
    for (int j = 0; j < inst.m(); ++j) z[j] = static_cast<int>(rng() % 2);
    double dropped = 0.0;
    for (int j = 0; j < inst.m(); ++j)
        if (z[j]) dropped += inst.scenarios[j].prob;
    if (occurred_set(z).empty() || dropped > inst.epsilon) z.assign(inst.m(), 0);
    std::vector<int> y(inst.T, 0);
    y[0] = 1;
    for (int i = 1; i < inst.T; ++i) y[i] = static_cast<int>(rng() % 2);
    return {y, z};
}

} // namespace

TEST_CASE("subproblem costs on the two-period instance", "[costs]") {
    const Instance inst = testing::i1();
    const SubproblemCosts costs = subproblem_costs(inst, {0});
    REQUIRE(costs.hPrime.size() == 1);
    CHECK(costs.hPrime[0] == Catch::Approx(1.0));            // alpha+h-alpha'
    CHECK(costs.hJS[0][0] == Catch::Approx(2.0));            // last period: alpha+mass*h
    CHECK(costs.r == std::vector<double>{2.0, 3.0});
    // objective identity: beta.y + hPrime.s + hJS.s2 + sum r reproduces evaluate()
    const PlanSolution both = closed_form(inst, {0}, {1, 1});
    const double viaCosts1 = 10.5 + 1.0 * both.s[0] + 2.0 * both.s2[0][0] + costs.rSum();
    CHECK(viaCosts1 == Catch::Approx(15.5).margin(1e-12));
    const PlanSolution ahead = closed_form(inst, {0}, {1, 0});
    const double viaCosts2 = 10.0 + 1.0 * ahead.s[0] + 2.0 * ahead.s2[0][0] + costs.rSum();
    CHECK(viaCosts2 == Catch::Approx(18.0).margin(1e-12));
    CHECK_THROWS_AS(subproblem_costs(inst, {}), EmptySetError);
}

TEST_CASE("costs outside the occurred set use the plain holding weight", "[costs]") {
    const Instance inst = testing::i2();
    const SubproblemCosts costs = subproblem_costs(inst, {0});
    CHECK(costs.hJS[1][0] == Catch::Approx(inst.scenarios[1].prob * inst.h[1]));
    CHECK(costs.hJS[1][1] == Catch::Approx(inst.scenarios[1].prob * inst.h[2]));
}

TEST_CASE("costs are nonnegative whenever the cost condition holds", "[costs][property]") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Instance inst = testing::random_ww(seed);
        const ScenarioFamily fam = enumerate_family(inst, true);
        for (const auto& S : fam.sets) {
            const SubproblemCosts costs = subproblem_costs(inst, S);
            for (double v : costs.hPrime) CHECK(v >= -1e-12);
            for (const auto& rowv : costs.hJS)
                for (double v : rowv) CHECK(v >= -1e-12);
            for (double v : costs.r) CHECK(v >= -1e-12);
        }
    }
}

TEST_CASE("deterministic equivalent block and row counts", "[de]") {
    Instance inst = testing::i2(); // T=3, p=1, m=2
    inst.epsilon = 0.5;
    const BuiltModel bm = build_de(inst);
    // blocks: 1 s + 3 x + 4 s_ji + 3 y + 2 z
    CHECK(bm.model.numVars() == 13);
    CHECK(bm.layout.xOff - bm.layout.sOff == 1);
    CHECK(bm.layout.sjiOff - bm.layout.xOff == 3);
    CHECK(bm.layout.yOff - bm.layout.sjiOff == 4);
    CHECK(bm.layout.zOff - bm.layout.yOff == 3);
    CHECK(bm.familyCount("balance") == 1);
    CHECK(bm.familyCount("cover") == 4);
    CHECK(bm.familyCount("chance") == 1);
    CHECK(bm.familyCount("inventory") == 4);
    CHECK(bm.familyCount("setup-link") == 3);
}

TEST_CASE("zero risk pins the indicators in the builders", "[de]") {
    const Instance inst = testing::i1(); // epsilon = 0, single scenario
    const BuiltModel de = build_de(inst);
    CHECK(de.model.vars[de.layout.zVar(0)].hi == 0.0);
    const BuiltModel ns = build_nslscc(inst);
    CHECK(ns.model.vars[ns.layout.zVar(0)].hi == 0.0);
}

TEST_CASE("integer-feasible plans satisfy the deterministic equivalent exactly",
          "[de][property]") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Instance inst = testing::random_ww(seed);
        std::mt19937_64 rng(seed * 13 + 5);
        const auto [y, z] = randomFeasibleYZ(inst, rng);
        const PlanSolution sol = closed_form_general(inst, z, y);
        const BuiltModel bm = build_de(inst);
        const std::vector<double> v = embed(bm, inst, sol);
        CHECK(bm.model.maxViolation(v) < 1e-7);
        CHECK(bm.model.objectiveAt(v) == Catch::Approx(sol.objective).margin(1e-9));
    }
}

TEST_CASE("reformulation family counts on the three-period instance", "[nslscc]") {
    const Instance inst = testing::i2(); // T=3, p=1, m=2
    const BuiltModel bm = build_nslscc(inst);
    // boundary rows for the zero entering stock are included, so the
    // pure-first-stage family has one member and the cross-stage family eight
    CHECK(bm.familyCount("s-carry") == 1);
    CHECK(bm.familyCount("s-cover") == 8);
    CHECK(bm.familyCount("x-cover") == 6);
    CHECK(bm.familyCount("sj-cover") == 12);
    CHECK(bm.familyCount("chance") == 1);
    // 1 s + 2 x + 4 s_ji + 3 y + 2 z
    CHECK(bm.model.numVars() == 12);
}

TEST_CASE("reformulation rows envelope the closed-form point", "[nslscc][property]") {
    // At fixed binary (y, z), the largest right-hand side among each
    // variable's rows is exactly its closed-form value, the closed-form point
    // is feasible, and the model value never exceeds the plan's true cost.
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Instance inst = testing::random_ww(seed);
        std::mt19937_64 rng(seed * 31 + 7);
        const auto [y, z] = randomFeasibleYZ(inst, rng);
        const BuiltModel bm = build_nslscc(inst);

        PlanSolution sol;
        bool infeasible = false;
        try {
            sol = closed_form_general(inst, z, y);
        } catch (const InfeasiblePatternError&) {
            infeasible = true;
        }

        std::vector<std::pair<int, double>> fixings;
        for (int t = 0; t < inst.T; ++t)
            fixings.push_back({bm.layout.yVar(t), static_cast<double>(y[t])});
        for (int j = 0; j < inst.m(); ++j)
            fixings.push_back({bm.layout.zVar(j), static_cast<double>(z[j])});
        const LpResult lp = fix_and_solve(bm.model, fixings);
        INFO("seed " << seed);
        if (infeasible) {
            CHECK(lp.status == LpStatus::Infeasible);
            continue;
        }
        REQUIRE(lp.status == LpStatus::Optimal);
        CHECK(lp.objective <= sol.objective + 1e-6);

        const std::vector<double> point = embed(bm, inst, sol);
        CHECK(bm.model.maxViolation(point) < 1e-7);

        // per-variable row envelopes at the closed-form point
        std::vector<double> envl(bm.model.numVars(), 0.0);
        for (int r = 0; r < bm.model.numRows(); ++r) {
            const auto& row = bm.model.rows[r];
            if (row.sense != Sense::GE || row.coeffs.empty()) continue;
            const auto [var, coef] = row.coeffs.front();
            if (coef != 1.0) continue;
            if (bm.rowFamily[r] != "s-carry" && bm.rowFamily[r] != "s-cover" &&
                bm.rowFamily[r] != "x-cover" && bm.rowFamily[r] != "sj-cover")
                continue;
            double rest = 0.0;
            for (std::size_t q = 1; q < row.coeffs.size(); ++q)
                rest += row.coeffs[q].second * point[row.coeffs[q].first];
            envl[var] = std::max(envl[var], row.rhs - rest);
        }
        for (int t = 0; t < inst.p; ++t)
            CHECK(envl[bm.layout.sVar(t)] == Catch::Approx(sol.s[t]).margin(1e-7));
        for (int t = inst.p; t < inst.T; ++t)
            CHECK(envl[bm.layout.xVar(t)] == Catch::Approx(sol.x[t]).margin(1e-7));
        for (int j = 0; j < inst.m(); ++j) {
            if (z[j] != 0) continue;
            for (int t = inst.p; t < inst.T; ++t)
                CHECK(envl[bm.layout.sjiVar(j, t)] ==
                      Catch::Approx(sol.s2[j][t - inst.p]).margin(1e-7));
        }
    }
}

TEST_CASE("subproblem LP reproduces the closed-form optima", "[slp]") {
    const Instance inst = testing::i1();
    const BuiltModel bm = build_s_lp(inst, {0});
    const LpResult lp = solve_lp(bm.model);
    REQUIRE(lp.status == LpStatus::Optimal);
    CHECK(lp.objective == Catch::Approx(15.5).margin(1e-9));
    CHECK(lp.point[bm.layout.yVar(0)] == Catch::Approx(1.0).margin(1e-6));
    CHECK(lp.point[bm.layout.yVar(1)] == Catch::Approx(1.0).margin(1e-6));

    const LpResult pinned = fix_and_solve(
        bm.model, {{bm.layout.yVar(0), 1.0}, {bm.layout.yVar(1), 0.0}});
    REQUIRE(pinned.status == LpStatus::Optimal);
    CHECK(pinned.objective == Catch::Approx(18.0).margin(1e-9));
    CHECK_THROWS_AS(build_s_lp(inst, {}), EmptySetError);
}

TEST_CASE("subproblem LP vertices have binary setups matching the recursion",
          "[slp][property]") {
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        const Instance inst = testing::random_ww(seed);
        std::mt19937_64 rng(seed);
        const ScenarioFamily fam = enumerate_family(inst, true);
        const auto& S = fam.sets[rng() % fam.sets.size()];
        const BuiltModel bm = build_s_lp(inst, S);
        const LpResult lp = solve_lp(bm.model);
        INFO("seed " << seed);
        REQUIRE(lp.status == LpStatus::Optimal);
        for (int t = 0; t < inst.T; ++t) {
            const double yv = lp.point[bm.layout.yVar(t)];
            CHECK(std::abs(yv - std::round(yv)) < 1e-6);
        }
        const PlanSolution dp = solve_s_dp(inst, S);
        CHECK(lp.objective == Catch::Approx(dp.objective).margin(1e-7));
    }
}

TEST_CASE("extended and compact subproblem models agree", "[sext][property]") {
    const Instance first = testing::i1();
    CHECK(solve_lp(build_s_extended(first, {0}).model).objective ==
          Catch::Approx(15.5).margin(1e-9));

    for (std::uint64_t seed = 200; seed < 240; ++seed) {
        const Instance inst = testing::random_ww(seed);
        std::mt19937_64 rng(seed);
        const ScenarioFamily fam = enumerate_family(inst, true);
        const auto& S = fam.sets[rng() % fam.sets.size()];
        const BuiltModel ext = build_s_extended(inst, S);
        const LpResult lpExt = solve_lp(ext.model);
        const LpResult lpCompact = solve_lp(build_s_lp(inst, S).model);
        INFO("seed " << seed);
        REQUIRE(lpExt.status == LpStatus::Optimal);
        CHECK(lpExt.objective == Catch::Approx(lpCompact.objective).margin(1e-7));

        // carried-window indicators dominate the implied lower envelope
        for (int a = 0; a < inst.T; ++a)
            for (int b = a; b < inst.T; ++b) {
                double ySum = 0.0;
                for (int k = a; k <= b; ++k) ySum += lpExt.point[ext.layout.yVar(k)];
                const double uv = lpExt.point[ext.layout.uVar(a, b)];
                CHECK(uv >= pos_part(1.0 - ySum) - 1e-6);
            }
    }
}

TEST_CASE("node model with everything kept matches the subproblem model", "[csub]") {
    const Instance inst = testing::i2();
    NodeConstraintSet node;
    node.J1 = {0, 1};
    const BuiltModel c = build_c_subproblem(inst, node);
    const BuiltModel s = build_s_lp(inst, {0, 1});
    REQUIRE(c.model.numRows() == s.model.numRows());
    for (int r = 0; r < c.model.numRows(); ++r) {
        CHECK(c.model.rows[r].sense == s.model.rows[r].sense);
        CHECK(c.model.rows[r].rhs == s.model.rows[r].rhs);
        CHECK(c.model.rows[r].coeffs == s.model.rows[r].coeffs);
    }
    // same objective on the shared blocks, plus pinned indicators
    REQUIRE(c.model.numVars() == s.model.numVars() + inst.m());
    for (int v = 0; v < s.model.numVars(); ++v)
        CHECK(c.model.vars[v].cost == s.model.vars[v].cost);
    CHECK(c.model.objectiveConstant == s.model.objectiveConstant);
    for (int j = 0; j < inst.m(); ++j)
        CHECK(c.model.vars[c.layout.zVar(j)].hi == 0.0);
}

TEST_CASE("node model rejects an exhausted risk budget", "[csub]") {
    const Instance inst = testing::i2(); // probs 0.5/0.5, epsilon 0.5
    NodeConstraintSet node;
    node.J1 = {0};
    node.J2 = {1};
    CHECK_NOTHROW(build_c_subproblem(inst, node)); // 0.5 <= 0.5

    Instance tight = inst;
    tight.epsilon = 0.3;
    CHECK_THROWS_AS(build_c_subproblem(tight, node), InfeasibleNodeError);
    NodeConstraintSet noKeep;
    noKeep.J2 = {0};
    CHECK_THROWS_AS(build_c_subproblem(inst, noKeep), EmptyJ1Error);
}

TEST_CASE("fully fixed node equals the exact subproblem solve", "[csub][property]") {
    for (std::uint64_t seed = 300; seed < 340; ++seed) {
        const Instance inst = testing::random_ww(seed);
        std::mt19937_64 rng(seed);
        const ScenarioFamily fam = enumerate_family(inst, true);
        const auto& S = fam.sets[rng() % fam.sets.size()];
        NodeConstraintSet node;
        node.J1 = S;
        for (int j = 0; j < inst.m(); ++j)
            if (std::find(S.begin(), S.end(), j) == S.end()) node.J2.push_back(j);
        const LpResult lp = solve_lp(build_c_subproblem(inst, node).model);
        const PlanSolution dp = solve_s_dp(inst, S);
        INFO("seed " << seed);
        REQUIRE(lp.status == LpStatus::Optimal);
        CHECK(lp.objective == Catch::Approx(dp.objective).margin(1e-7));
    }
}

TEST_CASE("partially fixed nodes never price feasible completions out", "[csub][property]") {
    // any admissible completion of a node's fixings stays feasible for the
    // node model, and its node objective never exceeds its true cost
    for (std::uint64_t seed = 400; seed < 430; ++seed) {
        const Instance inst = testing::random_ww(seed);
        if (inst.m() < 2) continue;
        NodeConstraintSet node;
        node.J1 = {0};
        const BuiltModel bm = build_c_subproblem(inst, node);
        std::mt19937_64 rng(seed);
        const auto [y, z0] = randomFeasibleYZ(inst, rng);
        std::vector<int> z = z0;
        z[0] = 0; // respect the node fixing
        PlanSolution sol;
        try {
            sol = closed_form_general(inst, z, y);
        } catch (const InfeasiblePatternError&) {
            continue;
        }
        std::vector<std::pair<int, double>> fixings;
        for (int t = 0; t < inst.T; ++t)
            fixings.push_back({bm.layout.yVar(t), static_cast<double>(y[t])});
        for (int j = 0; j < inst.m(); ++j)
            fixings.push_back({bm.layout.zVar(j), static_cast<double>(z[j])});
        const LpResult lp = fix_and_solve(bm.model, fixings);
        INFO("seed " << seed);
        REQUIRE(lp.status == LpStatus::Optimal);
        CHECK(lp.objective <= sol.objective + 1e-6);
    }
}

TEST_CASE("pinning a whole feasible point reproduces its objective", "[simplex][de]") {
    const Instance inst = testing::i2();
    const PlanSolution sol = closed_form_general(inst, {0, 1}, {1, 1, 0});
    const BuiltModel bm = build_de(inst);
    std::vector<std::pair<int, double>> fixings;
    const std::vector<double> point = embed(bm, inst, sol);
    for (int v = 0; v < bm.model.numVars(); ++v) fixings.push_back({v, point[v]});
    const LpResult lp = fix_and_solve(bm.model, fixings);
    REQUIRE(lp.status == LpStatus::Optimal);
    CHECK(lp.objective == Catch::Approx(sol.objective).margin(1e-9));

    // dropping every scenario overshoots any epsilon below one
    std::vector<std::pair<int, double>> dropAll;
    for (int j = 0; j < inst.m(); ++j) dropAll.push_back({bm.layout.zVar(j), 1.0});
    CHECK(fix_and_solve(bm.model, dropAll).status == LpStatus::Infeasible);
}
