#include <catch2/catch_amalgamated.hpp>

#include "slscc/closed_forms.hpp"
#include "slscc/solution.hpp"
#include "test_helpers.hpp"

using namespace slscc;

TEST_CASE("evaluate prices the hand-checked two-period plans", "[solution]") {
    const Instance inst = testing::i1();
    CHECK(evaluate(inst, {1, 1}, {2.0, 3.0}, {0}) == Catch::Approx(15.5).margin(1e-12));
    CHECK(evaluate(inst, {1, 0}, {5.0, 0.0}, {0}) == Catch::Approx(18.0).margin(1e-12));
    CHECK_THROWS_AS(evaluate(inst, {0, 0}, {0.0, 0.0}, {0}), InfeasibleError);
}

TEST_CASE("evaluate rejects constraint violations", "[solution]") {
    const Instance inst = testing::i1();
    // dropping the only scenario blows the risk budget
    CHECK_THROWS_AS(evaluate(inst, {1, 1}, {2.0, 3.0}, {1}), InfeasibleError);
    // production without a setup
    CHECK_THROWS_AS(evaluate(inst, {1, 0}, {2.0, 3.0}, {0}), InfeasibleError);
    // kept scenario runs dry in the second stage
    CHECK_THROWS_AS(evaluate(inst, {1, 1}, {2.0, 1.0}, {0}), InfeasibleError);
}

TEST_CASE("check_feasible flags the documented violations", "[solution]") {
    const Instance inst = testing::i1();
    PlanSolution good = evaluate_plan(inst, {1, 1}, {2.0, 3.0}, {0});
    CHECK(check_feasible(inst, good).empty());

    PlanSolution dropRisk = good;
    dropRisk.z = {1};
    dropRisk.s2 = {{0.0}};
    CHECK_FALSE(check_feasible(inst, dropRisk).empty());

    PlanSolution noSetup = good;
    noSetup.y = {1, 0};
    bool flagged = false;
    for (const auto& v : check_feasible(inst, noSetup))
        if (v.field == "x" && v.index == 1) flagged = true;
    CHECK(flagged);
}

TEST_CASE("closed forms reproduce the two-period optima", "[closed-form]") {
    const Instance inst = testing::i1();
    PlanSolution both = closed_form(inst, {0}, {1, 1});
    CHECK(both.objective == Catch::Approx(15.5).margin(1e-12));
    CHECK(both.x == std::vector<double>{2.0, 3.0});
    CHECK(both.s == std::vector<double>{0.0});

    PlanSolution ahead = closed_form(inst, {0}, {1, 0});
    CHECK(ahead.objective == Catch::Approx(18.0).margin(1e-12));
    CHECK(ahead.x == std::vector<double>{5.0, 0.0});
    CHECK(ahead.s == std::vector<double>{3.0});
    CHECK(ahead.s2[0][0] == Catch::Approx(0.0).margin(1e-12));

    CHECK_THROWS_AS(closed_form(inst, {0}, {0, 1}), InfeasiblePatternError);
    CHECK_THROWS_AS(closed_form(inst, {}, {1, 1}), EmptySetError);
}

TEST_CASE("closed_form_general coincides with the per-set form", "[closed-form]") {
    const Instance inst = testing::i2();
    for (std::vector<int> z : {std::vector<int>{0, 0}, {0, 1}, {1, 0}}) {
        for (int ymask = 1; ymask < 8; ++ymask) {
            std::vector<int> y = {(ymask >> 0) & 1, (ymask >> 1) & 1, (ymask >> 2) & 1};
            std::vector<int> S = occurred_set(z);
            bool aThrew = false, bThrew = false;
            PlanSolution a, b;
            try {
                a = closed_form_general(inst, z, y);
            } catch (const InfeasiblePatternError&) {
                aThrew = true;
            }
            try {
                b = closed_form(inst, S, y);
            } catch (const InfeasiblePatternError&) {
                bThrew = true;
            }
            REQUIRE(aThrew == bThrew);
            if (!aThrew) {
                CHECK(a.objective == Catch::Approx(b.objective).margin(1e-12));
                CHECK(a.x == b.x);
                CHECK(a.z == b.z);
            }
        }
    }
}

TEST_CASE("closed-form output passes the feasibility checker", "[closed-form][property]") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Instance inst = testing::random_ww(seed);
        std::mt19937_64 rng(seed);
        std::vector<int> z(inst.m(), 0);
        for (int j = 0; j < inst.m(); ++j) z[j] = static_cast<int>(rng() % 2);
        double dropped = 0.0;
        for (int j = 0; j < inst.m(); ++j)
            if (z[j]) dropped += inst.scenarios[j].prob;
        if (occurred_set(z).empty() || dropped > inst.epsilon) z.assign(inst.m(), 0);

        std::vector<int> y(inst.T, 0);
        y[0] = 1;
        for (int i = 1; i < inst.T; ++i) y[i] = static_cast<int>(rng() % 2);
        PlanSolution sol = closed_form_general(inst, z, y);
        auto issues = check_feasible(inst, sol);
        for (const auto& v : issues) UNSCOPED_INFO(v.str());
        CHECK(issues.empty());
    }
}

TEST_CASE("recursive and direct production forms agree exactly", "[closed-form][property]") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Instance inst = testing::random_ww(seed);
        std::mt19937_64 rng(seed * 77 + 1);
        std::vector<int> z(inst.m(), 0);
        for (int j = 1; j < inst.m(); ++j) z[j] = static_cast<int>(rng() % 2);
        std::vector<int> y(inst.T, 0);
        y[0] = 1;
        for (int i = 1; i < inst.T; ++i) y[i] = static_cast<int>(rng() % 2);

        PlanSolution direct = closed_form_general(inst, z, y);
        RecursivePlan rec = closed_form_recursive(inst, z, y);
        for (int i = 0; i < inst.T; ++i) CHECK(rec.x[i] == direct.x[i]);
        for (int j = 0; j < inst.m(); ++j)
            if (z[j] == 0)
                for (int k = 0; k < inst.secondStageLen(); ++k)
                    CHECK(rec.s2[j][k] == Catch::Approx(direct.s2[j][k]).margin(1e-12));
    }
}

TEST_CASE("mask evaluation path matches the assembled plan", "[closed-form][property]") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Instance inst = testing::random_ww(seed);
        const CumulantTable cum = cumulants(inst);
        std::vector<int> J;
        for (int j = 0; j < inst.m(); ++j) J.push_back(j);
        const Envelope env = make_envelope(inst, cum, J);
        double mass = 0.0;
        std::vector<double> probCumD(inst.secondStageLen(), 0.0);
        for (int j : J) {
            mass += inst.scenarios[j].prob;
            for (int k = 0; k < inst.secondStageLen(); ++k)
                probCumD[k] += inst.scenarios[j].prob * cum.D[j][k];
        }
        for (std::uint64_t ymask = 0; ymask < (1ULL << inst.T); ++ymask) {
            auto fast = zio_objective_mask(inst, env, probCumD, mass, ymask);
            std::vector<int> y(inst.T);
            for (int i = 0; i < inst.T; ++i) y[i] = (ymask >> i) & 1;
            bool threw = false;
            double slow = 0.0;
            try {
                slow = closed_form(inst, J, y).objective;
            } catch (const InfeasiblePatternError&) {
                threw = true;
            }
            REQUIRE(fast.has_value() == !threw);
            if (fast) CHECK(*fast == Catch::Approx(slow).epsilon(1e-12));
        }
    }
}
