#ifndef BH_COMPARE_HPP
#define BH_COMPARE_HPP

#include <cstdint>
#include <string>

#include "bh/instance.hpp"
#include "bh/solvers.hpp"

namespace bh {

struct RunStats {
    int n = 0;
    std::uint64_t seed = 0;
    int instances = 0;
    int successes = 0;          // constructor produced a validator-passing path
    int failures = 0;           // validation failures or construction failures
    int unsupported = 0;        // UnsupportedCase occurrences
    int unsupported_solved = 0; // ... of which the oracle solved independently
    int oracle_agreements = 0;  // cross-checked instances where both found paths
    int oracle_inconclusive = 0;
    double wall_time_s = 0.0;
    std::string first_failure; // serialized offending instance, if any
};

struct CompareOptions {
    SearchLimits limits = default_limits();
    int oracle_subsample = 0; // cross-check every instance whose index % k == 0; 0 = never
    int workers = 0;          // 0 = hardware concurrency
};

// Sample `count` seeded random instances with |F| + |E(L)| <= budget, run the
// constructor on each, validate every result, and (at n <= 3) cross-check
// feasibility against the oracle on a subsample.
RunStats run_compare(int n, int count, int budget, std::uint64_t seed,
                     const CompareOptions& opt = {});

} // namespace bh

#endif
