// Minimal library walkthrough: load an instance, check its cost structure,
// solve it three ways, and export the node model of the root relaxation.

#include <iostream>

#include "slscc/slscc.hpp"

int main(int argc, char** argv) {
    const std::string path = argc > 1 ? argv[1] : "samples/instances/three_period.json";

    slscc::Instance inst;
    std::vector<slscc::ValidationIssue> issues;
    if (!slscc::load_instance_file(path, inst, issues)) {
        for (const auto& is : issues) std::cerr << is.str() << "\n";
        return 1;
    }

    const slscc::WwReport ww = slscc::check_ww(inst);
    std::cout << "wagner-whitin condition: " << (ww.holds ? "holds" : "violated") << "\n";

    slscc::BnbConfig cfg;
    cfg.delta = 0.0;
    const slscc::BnbResult res = slscc::branch_and_bound(
        inst, cfg, [](const slscc::BnbEvent& ev) {
            std::cout << "  node " << ev.nodeId << " " << ev.action << " lb=" << ev.lb
                      << " ub=" << ev.ub << "\n";
        });
    std::cout << "search optimum:      " << res.solution.objective << " ("
              << res.nodesExpanded << " nodes)\n";

    std::cout << "enumeration optimum: " << slscc::opt_star_enumeration(inst).objective << "\n";
    std::cout << "brute force optimum: " << slscc::brute_force(inst).objective << "\n";

    const slscc::ScenarioFamily fam = slscc::enumerate_family(inst, /*minimalOnly=*/true);
    std::cout << "admissible occurred sets (minimal): " << fam.sets.size() << "\n";
    for (const auto& S : fam.sets) {
        const slscc::PlanSolution sol = slscc::solve_s_dp(inst, S);
        std::cout << "  set {";
        for (std::size_t i = 0; i < S.size(); ++i) std::cout << (i ? "," : "") << S[i];
        std::cout << "} -> " << sol.objective << "\n";
    }

    slscc::export_model(slscc::build_nslscc(inst).model, "/tmp/slscc_demo_model.lp");
    std::cout << "root model written to /tmp/slscc_demo_model.lp\n";
    return 0;
}
