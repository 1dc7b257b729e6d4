// Command-line front end: instance generation, the recursive constructor, the
// exhaustive oracle, path checking, base-case certification, and
// constructor/oracle comparison runs.
//
// Exit codes: 0 success/ok, 1 infeasible or violation, 2 unsupported case,
// 3 search budget exceeded.
#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "bh/compare.hpp"
#include "bh/constructor.hpp"
#include "bh/gen.hpp"
#include "bh/jsonio.hpp"
#include "bh/solvers.hpp"
#include "bh/validate.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kUnsupported = 2;
constexpr int kBudget = 3;

bh::SearchLimits limits_from(std::uint64_t node_budget) {
    bh::SearchLimits lim = bh::default_limits();
    if (node_budget > 0) lim.node_budget = node_budget;
    return lim;
}

bh::EdgeSet parse_edge_list(const bh::BalancedHypercube& h, const std::vector<std::string>& specs) {
    bh::EdgeSet out;
    for (const auto& s : specs) {
        auto comma = s.find(',');
        if (comma == std::string::npos)
            throw bh::ParseError("edge '" + s + "': expected the form x,y");
        bh::Vertex a = bh::Vertex::from_string(s.substr(0, comma));
        bh::Vertex b = bh::Vertex::from_string(s.substr(comma + 1));
        out.emplace_back(h, a, b);
    }
    bh::sort_unique(out);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"balanced hypercube hamiltonian path construction and certification"};
    app.require_subcommand(1);

    std::uint64_t node_budget = 0;
    bool as_json = false;
    app.add_option("--node-budget", node_budget, "search node budget (default from BH_NODE_BUDGET)");
    app.add_flag("--json", as_json, "machine-readable output");

    // gen
    auto* gen = app.add_subcommand("gen", "sample a random instance");
    int gn = 3, gf = 1, gl = 1;
    std::uint64_t gseed = 1;
    std::string gout;
    gen->add_option("--n", gn, "dimension")->required();
    gen->add_option("--faults", gf, "number of faulty edges");
    gen->add_option("--prescribed", gl, "number of prescribed edges");
    gen->add_option("--seed", gseed, "random seed");
    gen->add_option("--budget-split", [&gf, &gl](const std::vector<std::string>& vals) {
        auto comma = vals[0].find(',');
        if (comma == std::string::npos) return false;
        gf = std::stoi(vals[0].substr(0, comma));
        gl = std::stoi(vals[0].substr(comma + 1));
        return true;
    }, "fault,prescribed split (alternative to --faults/--prescribed)");
    gen->add_option("--out", gout, "output file (stdout otherwise)");

    // solve
    auto* solve = app.add_subcommand("solve", "construct a hamiltonian path recursively");
    std::string sin, sout;
    solve->add_option("--in", sin, "instance file")->required();
    solve->add_option("--out", sout, "path output file");

    // oracle
    auto* orac = app.add_subcommand("oracle", "exhaustive backtracking search");
    std::string oin, oout;
    orac->add_option("--in", oin, "instance file")->required();
    orac->add_option("--out", oout, "path output file");

    // check
    auto* check = app.add_subcommand("check", "validate a path against an instance");
    std::string cin_, cpath;
    check->add_option("--in", cin_, "instance file")->required();
    check->add_option("--path", cpath, "path file")->required();

    // certify
    auto* cert = app.add_subcommand("certify", "enumerate all (F, L, u, v) up to budget k");
    int cn = 2, ck = 2;
    std::uint64_t csamples = 0, cseed = 1;
    int cthreads = 0;
    cert->add_option("--n", cn, "dimension")->required();
    cert->add_option("--k", ck, "total edge budget")->required();
    cert->add_option("--samples", csamples, "random sample count (0 = exhaustive)");
    cert->add_option("--seed", cseed, "sampling seed");
    cert->add_option("--threads", cthreads, "worker threads");

    // compare
    auto* cmp = app.add_subcommand("compare", "constructor vs oracle on random instances");
    int mn = 3, mcount = 200, mbudget = 4, msub = 4, mworkers = 0;
    std::uint64_t mseed = 42;
    cmp->add_option("--n", mn, "dimension")->required();
    cmp->add_option("--count", mcount, "instance count");
    cmp->add_option("--budget", mbudget, "max |F|+|E(L)|");
    cmp->add_option("--seed", mseed, "random seed");
    cmp->add_option("--oracle-subsample", msub, "cross-check every k-th instance (0 = off)");
    cmp->add_option("--workers", mworkers, "worker threads");

    // bench
    auto* bench = app.add_subcommand("bench", "time the constructor and the oracle");
    int bn = 3, bcount = 20, bbudget = 4;
    std::uint64_t bseed = 7;
    bench->add_option("--n", bn, "dimension");
    bench->add_option("--count", bcount, "instance count");
    bench->add_option("--budget", bbudget, "max |F|+|E(L)|");
    bench->add_option("--seed", bseed, "random seed");

    CLI11_PARSE(app, argc, argv);
    bh::SearchLimits lim = limits_from(node_budget);

    try {
        if (*gen) {
            bh::Instance inst = bh::gen_instance(gn, gf, gl, gseed);
            bh::json j = bh::to_json(inst);
            if (gout.empty()) std::cout << j.dump(2) << "\n";
            else bh::save_json(gout, j);
            return kOk;
        }
        if (*solve) {
            bh::Instance inst = bh::load_instance(sin);
            try {
                bh::Path p = bh::construct(inst, lim);
                bh::json j = bh::to_json(p, inst.n);
                if (sout.empty()) std::cout << j.dump(2) << "\n";
                else bh::save_json(sout, j);
                return kOk;
            } catch (const bh::UnsupportedCase& e) {
                std::cerr << "unsupported case: " << e.what() << "\n";
                return kUnsupported;
            } catch (const bh::SearchBudgetError& e) {
                std::cerr << "budget exceeded: " << e.what() << "\n";
                return kBudget;
            }
        }
        if (*orac) {
            bh::Instance inst = bh::load_instance(oin);
            auto res = bh::ham_path(bh::BalancedHypercube(inst.n), inst.faults, inst.prescribed,
                                    inst.u, inst.v, lim);
            if (res.out_of_budget()) {
                std::cerr << "budget exceeded after " << lim.node_budget << " nodes\n";
                return kBudget;
            }
            if (!res.found()) {
                if (as_json) std::cout << "{\"feasible\": false}\n";
                else std::cout << "infeasible\n";
                return kInfeasible;
            }
            bh::json j = bh::to_json(*res.value, inst.n);
            if (oout.empty()) std::cout << j.dump(2) << "\n";
            else bh::save_json(oout, j);
            return kOk;
        }
        if (*check) {
            bh::Instance inst = bh::load_instance(cin_);
            bh::Path p = bh::load_path(cpath);
            bh::ValidationReport rep = bh::validate_path(inst, p);
            std::cout << bh::to_json(rep).dump(2) << "\n";
            return rep.ok ? kOk : kInfeasible;
        }
        if (*cert) {
            bh::CertifyOptions opt;
            opt.limits = lim;
            opt.samples = csamples;
            opt.seed = cseed;
            opt.threads = cthreads;
            auto t0 = std::chrono::steady_clock::now();
            bh::CertReport rep = bh::certify(cn, ck, opt);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (as_json) {
                std::cout << bh::to_json(rep).dump(2) << "\n";
            } else {
                std::cout << "certify n=" << rep.n << " k=" << rep.k << ": "
                          << rep.instances_checked << " cases, " << rep.failures.size()
                          << " failures, " << rep.inconclusive << " inconclusive ("
                          << secs << "s)\n";
                for (size_t i = 0; i < rep.failures.size() && i < 5; ++i) {
                    const auto& f = rep.failures[i];
                    std::cout << "  failure: u=" << f.u.str() << " v=" << f.v.str() << " |F|="
                              << f.F.size() << " |L|=" << f.L.size()
                              << (f.inconclusive ? " (inconclusive)" : "") << "\n";
                }
            }
            return rep.failures.empty() ? kOk : kInfeasible;
        }
        if (*cmp) {
            bh::CompareOptions opt;
            opt.limits = lim;
            opt.oracle_subsample = msub;
            opt.workers = mworkers;
            bh::RunStats st = bh::run_compare(mn, mcount, mbudget, mseed, opt);
            if (as_json) {
                bh::json j;
                j["n"] = st.n;
                j["seed"] = st.seed;
                j["instances"] = st.instances;
                j["successes"] = st.successes;
                j["failures"] = st.failures;
                j["unsupported"] = st.unsupported;
                j["unsupported_solved"] = st.unsupported_solved;
                j["oracle_agreements"] = st.oracle_agreements;
                j["oracle_inconclusive"] = st.oracle_inconclusive;
                j["wall_time_s"] = st.wall_time_s;
                if (!st.first_failure.empty()) j["first_failure"] = st.first_failure;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "compare n=" << st.n << ": " << st.successes << "/" << st.instances
                          << " constructed, " << st.unsupported << " unsupported ("
                          << st.unsupported_solved << " oracle-solved), " << st.failures
                          << " failures, " << st.oracle_agreements << " oracle agreements ("
                          << st.wall_time_s << "s)\n";
                if (!st.first_failure.empty())
                    std::cout << "  first failure: " << st.first_failure << "\n";
            }
            return st.failures == 0 ? kOk : kInfeasible;
        }
        if (*bench) {
            auto t0 = std::chrono::steady_clock::now();
            bh::CompareOptions opt;
            opt.limits = lim;
            opt.oracle_subsample = 1;
            bh::RunStats st = bh::run_compare(bn, bcount, bbudget, bseed, opt);
            double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            std::cout << "bench n=" << bn << ": " << bcount << " instances in " << total << "s ("
                      << total / bcount * 1000 << " ms each), " << st.successes << " ok\n";
            return kOk;
        }
    } catch (const bh::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInfeasible;
    } catch (const bh::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInfeasible;
    }
    return kOk;
}
