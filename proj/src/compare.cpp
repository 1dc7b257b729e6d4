#include "bh/compare.hpp"

#include <atomic>
#include <chrono>
#include <random>
#include <thread>

#include "bh/constructor.hpp"
#include "bh/gen.hpp"
#include "bh/jsonio.hpp"
#include "bh/validate.hpp"

namespace bh {

RunStats run_compare(int n, int count, int budget, std::uint64_t seed, const CompareOptions& opt) {
    if (budget > 2 * n - 2) throw BudgetExceeded("compare budget exceeds 2n-2");
    RunStats st;
    st.n = n;
    st.seed = seed;
    st.instances = count;
    auto t0 = std::chrono::steady_clock::now();

    struct Shard {
        int successes = 0, failures = 0, unsupported = 0, unsupported_solved = 0;
        int agreements = 0, inconclusive = 0;
        std::string first_failure;
    };
    int workers = opt.workers > 0
                      ? opt.workers
                      : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min(workers, 16);
    std::vector<Shard> shards(static_cast<size_t>(workers));
    std::atomic<int> next{0};

    auto work = [&](int tid) {
        Shard& sh = shards[static_cast<size_t>(tid)];
        while (true) {
            int idx = next.fetch_add(1);
            if (idx >= count) break;
            // deterministic per-instance split and seed
            std::mt19937_64 rng(seed + static_cast<std::uint64_t>(idx) * 0x9E3779B97F4A7C15ull);
            std::vector<std::pair<int, int>> splits;
            for (int f = 0; f <= budget; ++f)
                for (int l = 0; f + l <= budget; ++l) splits.emplace_back(f, l);
            auto [nf, nl] = splits[rng() % splits.size()];
            Instance inst = gen_instance(n, nf, nl, rng());

            bool check_oracle = n <= 3 && opt.oracle_subsample > 0 && idx % opt.oracle_subsample == 0;
            try {
                Path p = construct(inst, opt.limits);
                ValidationReport rep = validate_path(inst, p);
                if (!rep.ok) {
                    sh.failures++;
                    if (sh.first_failure.empty()) sh.first_failure = to_json(inst).dump();
                    continue;
                }
                sh.successes++;
                if (check_oracle) {
                    auto res = ham_path(BalancedHypercube(n), inst.faults, inst.prescribed, inst.u,
                                        inst.v, opt.limits);
                    if (res.out_of_budget()) sh.inconclusive++;
                    else if (res.found()) sh.agreements++;
                    else {
                        // the oracle refutes a path we constructed: impossible
                        // unless one of the two is wrong
                        sh.failures++;
                        if (sh.first_failure.empty()) sh.first_failure = to_json(inst).dump();
                    }
                }
            } catch (const UnsupportedCase&) {
                sh.unsupported++;
                auto res = ham_path(BalancedHypercube(n), inst.faults, inst.prescribed, inst.u,
                                    inst.v, opt.limits);
                if (res.found()) {
                    ValidationReport rep = validate_path(inst, *res.value);
                    if (rep.ok) sh.unsupported_solved++;
                } else if (res.out_of_budget()) {
                    sh.inconclusive++;
                }
            } catch (const SearchBudgetError&) {
                sh.inconclusive++;
            } catch (const Error&) {
                sh.failures++;
                if (sh.first_failure.empty()) sh.first_failure = to_json(inst).dump();
            }
        }
    };

    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    for (const auto& sh : shards) {
        st.successes += sh.successes;
        st.failures += sh.failures;
        st.unsupported += sh.unsupported;
        st.unsupported_solved += sh.unsupported_solved;
        st.oracle_agreements += sh.agreements;
        st.oracle_inconclusive += sh.inconclusive;
        if (st.first_failure.empty() && !sh.first_failure.empty()) st.first_failure = sh.first_failure;
    }
    st.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return st;
}

} // namespace bh
