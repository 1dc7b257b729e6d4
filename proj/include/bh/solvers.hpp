#ifndef BH_SOLVERS_HPP
#define BH_SOLVERS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "bh/instance.hpp"

namespace bh {

using Path = std::vector<Vertex>;

enum class SearchStatus { found, infeasible, budget_exceeded };

template <typename T>
struct SearchOutcome {
    SearchStatus status = SearchStatus::infeasible;
    std::optional<T> value;

    bool found() const { return status == SearchStatus::found; }
    bool infeasible() const { return status == SearchStatus::infeasible; }
    bool out_of_budget() const { return status == SearchStatus::budget_exceeded; }
};

struct SearchLimits {
    std::uint64_t node_budget = 10'000'000;
};

// Default node budget, overridable through the BH_NODE_BUDGET env var.
SearchLimits default_limits();

// Backtracking oracles. All searches visit neighbors in lexicographic order
// of digit strings, treat prescribed edges as forced arcs and faults as
// deleted edges, and prune on unusable degrees; identical inputs give
// identical outputs.

// Hamiltonian path of BH_n - F from u to v passing through L.
SearchOutcome<Path> ham_path(const BalancedHypercube& h, const EdgeSet& F, const LinearForest& L,
                             const Vertex& u, const Vertex& v, const SearchLimits& lim = default_limits());

// Same, with degree pruning disabled (forced edges and faults still
// respected). Only used to cross-check pruning safety.
SearchOutcome<Path> ham_path_unpruned(const BalancedHypercube& h, const EdgeSet& F,
                                      const LinearForest& L, const Vertex& u, const Vertex& v,
                                      const SearchLimits& lim = default_limits());

// Hamiltonian cycle of BH_n - F containing E(L); the cycle is reported as a
// vertex sequence whose last step closes back to the first vertex.
SearchOutcome<Path> ham_cycle_through(const BalancedHypercube& h, const EdgeSet& F,
                                      const LinearForest& L, const SearchLimits& lim = default_limits());

// Two vertex-disjoint paths P[u,v] and P[x,y] jointly covering all vertices.
struct PathPair {
    Path first, second;
};
SearchOutcome<PathPair> two_path_cover(const BalancedHypercube& h, const Vertex& u, const Vertex& v,
                                       const Vertex& x, const Vertex& y,
                                       const SearchLimits& lim = default_limits());

// Fault/forest-aware generalization used by the constructor at block scale.
SearchOutcome<PathPair> two_path_cover_general(const BalancedHypercube& h, const EdgeSet& F,
                                               const LinearForest& L, const Vertex& u,
                                               const Vertex& v, const Vertex& x, const Vertex& y,
                                               const SearchLimits& lim = default_limits());

// Hamiltonian path of BH_n - w between x and y (w even, x,y odd, or the
// mirrored parities).
SearchOutcome<Path> ham_path_minus_vertex(const BalancedHypercube& h, const Vertex& w,
                                          const Vertex& x, const Vertex& y,
                                          const SearchLimits& lim = default_limits());

SearchOutcome<Path> ham_path_minus_vertex_general(const BalancedHypercube& h, const EdgeSet& F,
                                                  const LinearForest& L, const Vertex& w,
                                                  const Vertex& x, const Vertex& y,
                                                  const SearchLimits& lim = default_limits());

// Multi-deleted variant used by the constructor when a forced chain consumes
// several vertices of one block.
SearchOutcome<Path> ham_path_minus_set(const BalancedHypercube& h, const EdgeSet& F,
                                       const LinearForest& L, const std::vector<Vertex>& removed,
                                       const Vertex& x, const Vertex& y,
                                       const SearchLimits& lim = default_limits());

// Exhaustive certification: enumerate every fault set F and every linear
// forest L of BH_n - F with |F| + |E(L)| <= k, and every compatible
// even/odd endpoint pair; record each case the oracle reports infeasible.
struct CertFailure {
    EdgeSet F;
    EdgeSet L;
    Vertex u, v;
    bool inconclusive = false; // search budget ran out: not a refutation
};

struct CertReport {
    int n = 0;
    int k = 0;
    std::uint64_t instances_checked = 0;
    std::vector<CertFailure> failures;
    std::uint64_t inconclusive = 0;

    bool ok() const { return failures.empty() && inconclusive == 0; }
};

struct CertifyOptions {
    SearchLimits limits = default_limits();
    // When positive, check this many randomly sampled (F, L) combinations
    // instead of the full enumeration (the full space at n = 3 is beyond
    // desk scale); sampling is deterministic per seed.
    std::uint64_t samples = 0;
    std::uint64_t seed = 1;
    int threads = 0; // 0 = hardware concurrency
};

CertReport certify(int n, int k, const CertifyOptions& opt = {});

} // namespace bh

#endif
