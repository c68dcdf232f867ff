// Command-line front end: solve instances, generate seeded test data,
// validate files, run the cross-check harness, and export models.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "slscc/slscc.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitDisagreement = 3;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

template <typename T>
std::string joined(const std::vector<T>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += " ";
        if constexpr (std::is_same_v<T, double>) out += num(v[i]);
        else out += std::to_string(v[i]);
    }
    return out;
}

int loadOrComplain(const std::string& path, slscc::Instance& inst) {
    std::vector<slscc::ValidationIssue> issues;
    if (slscc::load_instance_file(path, inst, issues)) return kExitOk;
    std::cerr << "error: invalid instance " << path << "\n";
    for (const auto& is : issues) std::cerr << "  " << is.str() << "\n";
    return kExitInput;
}

std::vector<int> parseIndexList(const std::string& csv, int m, const std::string& flag) {
    std::vector<int> out;
    if (csv.empty()) return out;
    if (csv == "all") {
        for (int j = 0; j < m; ++j) out.push_back(j);
        return out;
    }
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        const std::string tok = csv.substr(pos, next - pos);
        char* end = nullptr;
        const long v = std::strtol(tok.c_str(), &end, 10);
        if (end == tok.c_str() || *end != '\0' || v < 0 || v >= m)
            throw slscc::Error(flag + ": bad scenario index '" + tok + "'");
        out.push_back(static_cast<int>(v));
        pos = next + 1;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void printSolutionText(const slscc::Instance& inst, const slscc::PlanSolution& sol, double lb,
                       double ub, long nodes) {
    std::cout << "objective " << num(sol.objective) << "\n";
    std::cout << "y " << joined(sol.y) << "\n";
    std::cout << "x " << joined(sol.x) << "\n";
    std::cout << "s " << joined(sol.s) << "\n";
    std::cout << "z " << joined(sol.z) << "\n";
    std::cout << "S " << joined(slscc::occurred_set(sol.z)) << "\n";
    std::cout << "lb " << num(lb) << "\n";
    std::cout << "ub " << num(ub) << "\n";
    std::cout << "nodes " << nodes << "\n";
    (void)inst;
}

void printSolutionCsv(const slscc::PlanSolution& sol, double lb, double ub, long nodes) {
    std::cout << "field,index,value\n";
    std::cout << "objective,," << num(sol.objective) << "\n";
    std::cout << "lb,," << num(lb) << "\n";
    std::cout << "ub,," << num(ub) << "\n";
    std::cout << "nodes,," << nodes << "\n";
    for (std::size_t i = 0; i < sol.y.size(); ++i) std::cout << "y," << i << "," << sol.y[i] << "\n";
    for (std::size_t i = 0; i < sol.x.size(); ++i)
        std::cout << "x," << i << "," << num(sol.x[i]) << "\n";
    for (std::size_t i = 0; i < sol.s.size(); ++i)
        std::cout << "s," << i << "," << num(sol.s[i]) << "\n";
    for (std::size_t j = 0; j < sol.s2.size(); ++j)
        for (std::size_t k = 0; k < sol.s2[j].size(); ++k)
            std::cout << "s2_" << j << "," << k << "," << num(sol.s2[j][k]) << "\n";
    for (std::size_t j = 0; j < sol.z.size(); ++j) std::cout << "z," << j << "," << sol.z[j] << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-stage chance-constrained lot sizing solver"};
    app.require_subcommand(1);
    app.fallthrough();

    int jobs = 1;
    if (const char* envJobs = std::getenv("SLSCC_JOBS")) jobs = std::max(1, std::atoi(envJobs));
    app.add_option("--jobs", jobs, "worker count for the search (env SLSCC_JOBS)");

    // ---- solve ----
    auto* solve = app.add_subcommand("solve", "solve an instance file");
    std::string solvePath, method = "bnb", output = "text";
    double delta = -1.0;
    long nodeCap = 100000;
    solve->add_option("path", solvePath, "instance JSON file")->required();
    solve->add_option("--method", method, "bnb|enumerate|brute")
        ->check(CLI::IsMember({"bnb", "enumerate", "brute"}));
    solve->add_option("--delta", delta, "gap tolerance (default 1e-6*(1+|UB|))");
    solve->add_option("--node-cap", nodeCap, "node expansion cap");
    solve->add_option("--output", output, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a seeded random instance");
    slscc::GenParams gp;
    std::string genOut;
    gen->add_option("--T", gp.T, "periods")->required();
    gen->add_option("--p", gp.p, "last deterministic period count")->required();
    gen->add_option("--m", gp.m, "scenario count")->required();
    gen->add_option("--epsilon", gp.epsilon, "risk threshold")->required();
    gen->add_option("--seed", gp.seed, "random seed")->required();
    gen->add_option("--out", genOut, "output path (stdout when omitted)");

    // ---- check ----
    auto* check = app.add_subcommand("check", "validate a file and report cost margins");
    std::string checkPath;
    check->add_option("path", checkPath, "instance JSON file")->required();

    // ---- compare ----
    auto* compare = app.add_subcommand("compare", "run every solve route and diff them");
    std::string comparePath;
    compare->add_option("path", comparePath, "instance JSON file")->required();

    // ---- export ----
    auto* exp = app.add_subcommand("export", "write a model as LP text");
    std::string expPath, form, expOut, scenarioCsv = "all", fixZeroCsv, fixOneCsv;
    exp->add_option("path", expPath, "instance JSON file")->required();
    exp->add_option("--form", form, "de|nslscc|s-lp|s-ext|c-sub")
        ->required()
        ->check(CLI::IsMember({"de", "nslscc", "s-lp", "s-ext", "c-sub"}));
    exp->add_option("--scenarios", scenarioCsv, "occurred set for s-lp/s-ext: 'all' or csv");
    exp->add_option("--fix-zero", fixZeroCsv, "scenarios pinned to z=0 for c-sub");
    exp->add_option("--fix-one", fixOneCsv, "scenarios pinned to z=1 for c-sub");
    exp->add_option("--out", expOut, "output path (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            slscc::Instance inst;
            if (int rc = loadOrComplain(solvePath, inst)) return rc;
            slscc::PlanSolution sol;
            double lb = 0.0, ub = 0.0;
            long nodes = 0;
            try {
                if (method == "bnb") {
                    slscc::BnbConfig cfg;
                    if (delta >= 0.0) cfg.delta = delta;
                    cfg.nodeCap = nodeCap;
                    cfg.parallelism = jobs;
                    const slscc::BnbResult res = slscc::branch_and_bound(inst, cfg);
                    sol = res.solution;
                    lb = res.lowerBound;
                    ub = res.upperBound;
                    nodes = res.nodesExpanded;
                } else if (method == "enumerate") {
                    sol = slscc::opt_star_enumeration(inst);
                    lb = ub = sol.objective;
                } else {
                    sol = slscc::brute_force(inst);
                    lb = ub = sol.objective;
                }
            } catch (const slscc::InfeasibleError& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitInfeasible;
            }
            if (output == "json")
                std::cout << slscc::solution_to_json(sol, lb, ub, nodes).dump(1) << "\n";
            else if (output == "csv")
                printSolutionCsv(sol, lb, ub, nodes);
            else
                printSolutionText(inst, sol, lb, ub, nodes);
            return kExitOk;
        }

        if (*gen) {
            if (gp.T == gp.p && gp.m > 1)
                std::cerr << "warning: empty second stage, m ignored (one trivial scenario)\n";
            const slscc::Instance inst = slscc::generate_instance(gp);
            const std::string text = slscc::instance_to_json(inst).dump(1) + "\n";
            if (genOut.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(genOut, std::ios::binary);
                if (!out) throw slscc::Error("cannot open " + genOut);
                out << text;
            }
            return kExitOk;
        }

        if (*check) {
            slscc::Instance inst;
            if (int rc = loadOrComplain(checkPath, inst)) return rc;
            const slscc::WwReport rep = slscc::check_ww(inst);
            std::cout << "instance: valid (T=" << inst.T << " p=" << inst.p << " m=" << inst.m()
                      << " epsilon=" << num(inst.epsilon) << ")\n";
            for (std::size_t i = 0; i < rep.margins.size(); ++i)
                std::cout << "period " << i << ": margin " << num(rep.margins[i])
                          << (rep.margins[i] < -1e-12 ? "  (violated)" : "") << "\n";
            std::cout << "wagner-whitin condition: " << (rep.holds ? "holds" : "violated") << "\n";
            return kExitOk;
        }

        if (*compare) {
            slscc::Instance inst;
            if (int rc = loadOrComplain(comparePath, inst)) return rc;
            const slscc::CompareReport rep = slscc::compare_report(inst);
            std::cout << slscc::compare_report_to_json(rep).dump(1) << "\n";
            return rep.allAgree(1e-6) ? kExitOk : kExitDisagreement;
        }

        if (*exp) {
            slscc::Instance inst;
            if (int rc = loadOrComplain(expPath, inst)) return rc;
            slscc::BuiltModel bm;
            if (form == "de") {
                bm = slscc::build_de(inst);
            } else if (form == "nslscc") {
                bm = slscc::build_nslscc(inst);
            } else if (form == "s-lp" || form == "s-ext") {
                const std::vector<int> S = parseIndexList(scenarioCsv, inst.m(), "--scenarios");
                bm = (form == "s-lp") ? slscc::build_s_lp(inst, S)
                                      : slscc::build_s_extended(inst, S);
            } else {
                slscc::NodeConstraintSet node;
                node.J1 = parseIndexList(fixZeroCsv, inst.m(), "--fix-zero");
                node.J2 = parseIndexList(fixOneCsv, inst.m(), "--fix-one");
                bm = slscc::build_c_subproblem(inst, node);
            }
            const slscc::ModelStats st = slscc::model_stats(bm.model);
            std::cerr << "model: " << st.vars << " variables (" << st.integers << " integer, "
                      << st.fixedVars << " fixed), " << st.rows << " rows\n";
            if (expOut.empty()) {
                slscc::write_model(bm.model, std::cout);
            } else {
                slscc::export_model(bm.model, expOut);
            }
            return kExitOk;
        }
    } catch (const slscc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
