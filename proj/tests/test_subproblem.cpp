#include <catch2/catch_amalgamated.hpp>

#include "slscc/oracle.hpp"
#include "slscc/simplex.hpp"
#include "slscc/subproblem.hpp"
#include "test_helpers.hpp"

using namespace slscc;

namespace {

Instance threeScenario(double epsilon) {
    Instance inst;
    inst.T = 2;
    inst.p = 1;
    inst.alpha = {1.0, 1.0};
    inst.beta = {1.0, 1.0};
    inst.h = {1.0, 1.0};
    inst.d = {1.0};
    inst.scenarios = {{0.2, {1.0}}, {0.3, {2.0}}, {0.5, {3.0}}};
    inst.epsilon = epsilon;
    return inst;
}

} // namespace

TEST_CASE("kappa counts the droppable low-probability scenarios", "[family]") {
    CHECK(kappa(threeScenario(0.45)) == 1);
    CHECK(kappa(threeScenario(0.1)) == 0);
    CHECK(kappa(threeScenario(0.99)) == 2);
}

TEST_CASE("family enumeration and minimal pruning", "[family]") {
    Instance pair = testing::i2(); // probs 0.5/0.5, epsilon 0.5
    ScenarioFamily full = enumerate_family(pair, false);
    REQUIRE(full.sets.size() == 3);
    CHECK(full.sets[0] == std::vector<int>{0});
    CHECK(full.sets[1] == std::vector<int>{1});
    CHECK(full.sets[2] == std::vector<int>{0, 1});
    ScenarioFamily minimal = enumerate_family(pair, true);
    REQUIRE(minimal.sets.size() == 2);
    CHECK(minimal.sets[0] == std::vector<int>{0});
    CHECK(minimal.sets[1] == std::vector<int>{1});

    Instance zeroRisk = pair;
    zeroRisk.epsilon = 0.0;
    ScenarioFamily onlyAll = enumerate_family(zeroRisk, false);
    REQUIRE(onlyAll.sets.size() == 1);
    CHECK(onlyAll.sets[0] == std::vector<int>{0, 1});

    // probs (0.2, 0.3, 0.5), eps 0.45: only singleton drops fit
    ScenarioFamily tri = enumerate_family(threeScenario(0.45), true);
    REQUIRE(tri.sets.size() == 2);
    CHECK(tri.sets[0] == std::vector<int>{0, 2});
    CHECK(tri.sets[1] == std::vector<int>{1, 2});

    CHECK_THROWS_AS(enumerate_family(threeScenario(0.99), false, 2), FamilyTooLargeError);
}

TEST_CASE("family size respects the binomial bound", "[family][property]") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Instance inst = testing::random_ww(seed);
        const ScenarioFamily fam = enumerate_family(inst, false);
        const int m = inst.m();
        double bound = 0.0, choose = 1.0;
        for (int k = 0; k <= fam.kappa; ++k) {
            bound += choose;
            choose = choose * (m - k) / (k + 1);
        }
        CHECK(static_cast<double>(fam.sets.size()) <= bound);
        for (const auto& S : fam.sets) {
            double mass = 0.0;
            for (int j : S) mass += inst.scenarios[j].prob;
            CHECK(mass >= 1.0 - inst.epsilon - 1e-9);
        }
    }
}

TEST_CASE("delta profile of the running envelope", "[family]") {
    const Instance inst = testing::i2(); // cumulants (3,5) and (2,6)
    DeltaProfile a = delta_profile(inst, {0});
    CHECK(a.dS == std::vector<double>{3.0, 5.0});
    CHECK(a.delta == std::vector<double>{3.0, 2.0});
    DeltaProfile b = delta_profile(inst, {1});
    CHECK(b.dS == std::vector<double>{2.0, 6.0});
    CHECK(b.delta == std::vector<double>{2.0, 4.0});
    DeltaProfile both = delta_profile(inst, {0, 1});
    CHECK(both.dS == std::vector<double>{3.0, 6.0});
    CHECK(both.delta == std::vector<double>{3.0, 3.0});
    CHECK_THROWS_AS(delta_profile(inst, {}), EmptySetError);
}

TEST_CASE("envelope grows with the occurred set", "[family][property]") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Instance inst = testing::random_ww(seed);
        if (inst.m() < 2) continue;
        std::vector<int> small = {0}, large = {0, 1};
        DeltaProfile a = delta_profile(inst, small);
        DeltaProfile b = delta_profile(inst, large);
        for (int k = 0; k < inst.secondStageLen(); ++k) CHECK(a.dS[k] <= b.dS[k] + 1e-12);
    }
}

TEST_CASE("exact subproblem solve on the two-period instance", "[dp]") {
    const Instance inst = testing::i1();
    const PlanSolution sol = solve_s_dp(inst, {0});
    CHECK(sol.objective == Catch::Approx(15.5).margin(1e-12));
    CHECK(sol.y == std::vector<int>{1, 1});

    Instance pricey = inst;
    pricey.beta = {10.0, 100.0};
    const PlanSolution ahead = solve_s_dp(pricey, {0});
    CHECK(ahead.objective == Catch::Approx(18.0).margin(1e-12));
    CHECK(ahead.y == std::vector<int>{1, 0});

    CHECK_THROWS_AS(solve_s_dp(inst, {}), EmptySetError);
    Instance broken = inst;
    broken.alpha = {1.0, 5.0};
    CHECK_THROWS_AS(solve_s_dp(broken, {0}), AssumptionViolatedError);
}

TEST_CASE("dp equals the subproblem LP on random draws", "[dp][property]") {
    for (std::uint64_t seed = 500; seed < 560; ++seed) {
        const Instance inst = testing::random_ww(seed);
        std::mt19937_64 rng(seed);
        const ScenarioFamily fam = enumerate_family(inst, true);
        const auto& S = fam.sets[rng() % fam.sets.size()];
        const PlanSolution dp = solve_s_dp(inst, S);
        const LpResult lp = solve_lp(build_s_lp(inst, S).model);
        INFO("seed " << seed);
        REQUIRE(lp.status == LpStatus::Optimal);
        CHECK(dp.objective == Catch::Approx(lp.objective).margin(1e-7));
        CHECK(check_feasible(inst, dp).empty());
    }
}

TEST_CASE("enumeration optimum matches brute force", "[optstar]") {
    const Instance inst = testing::i2();
    const PlanSolution enumSol = opt_star_enumeration(inst);
    const PlanSolution bf = brute_force(inst);
    CHECK(enumSol.objective == Catch::Approx(bf.objective).margin(1e-9));

    Instance zeroRisk = inst;
    zeroRisk.epsilon = 0.0;
    CHECK(opt_star_enumeration(zeroRisk).objective ==
          Catch::Approx(solve_s_dp(zeroRisk, {0, 1}).objective).margin(1e-12));
}

TEST_CASE("minimal and full families give the same optimum", "[optstar][property]") {
    for (std::uint64_t seed = 600; seed < 630; ++seed) {
        const Instance inst = testing::random_ww(seed);
        const double a = opt_star_enumeration(inst, true).objective;
        const double b = opt_star_enumeration(inst, false).objective;
        CHECK(a == Catch::Approx(b).margin(1e-9));
    }
}
