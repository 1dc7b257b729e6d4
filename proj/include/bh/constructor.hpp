#ifndef BH_CONSTRUCTOR_HPP
#define BH_CONSTRUCTOR_HPP

#include <array>
#include <optional>
#include <utility>

#include "bh/instance.hpp"
#include "bh/solvers.hpp"

namespace bh {

// ---- dimension selection -------------------------------------------------

enum class DimensionRule { ConcentratedFaults, SparseDimension };

struct DimensionChoice {
    int j = 0;
    DimensionRule rule = DimensionRule::SparseDimension;
    int crossing_fault_count = 0;      // |F| in dimension j
    int crossing_prescribed_count = 0; // |E(L)| in dimension j
};

// Concentrated rule when |F| = 2n-3 and all faults share a vertex (then a
// dimension with 1-2 faults and no prescribed edge is chosen); otherwise a
// dimension carrying at most one edge of F u E(L). Ties break to the largest
// admissible j >= 1; if only j = 0 qualifies, NoAdmissibleDimension.
DimensionChoice select_dimension(const Instance& inst);

// Smallest rotation c (block i -> i+c) placing a block of maximum load at
// position 0.
int normalize_rotation(const std::array<int, 4>& loads);

enum class CaseFamily { NoCrossing, PrescribedCrossing, FaultCrossing, FaultCrossing2 };

struct CaseTag {
    CaseFamily family = CaseFamily::NoCrossing;
    int load0 = 0; // max block load
    int ublock = 0, vblock = 0;
};

CaseFamily classify(const BlockData& bd);

// ---- lemma-backed candidate searches --------------------------------------
// All scans run in lexicographic digit-string order and return the first
// qualifying candidate; NoCandidate carries the search context. Crossing
// partner choices prefer the + direction.

// Vertex x of the given parity in the block: x != excluded, x not incident
// to avoid_here, and neither crossing partner incident to avoid_next.
Vertex pick_vertex_clear(const PartitionView& view, int block, Parity p, const EdgeSet& avoid_here,
                         const EdgeSet& avoid_next, const std::optional<Vertex>& excluded);

struct EdgeOnPath {
    Vertex s, t;         // s even, t odd
    Vertex s_out, t_out; // chosen clear crossing partners of s and t
};

// Which endpoint of the picked edge must come first along the sequence.
enum class EdgeOrient { any, even_first, odd_first };

// Edge (s,t) on the path, not in L_here, avoiding the path endpoints and the
// excluded vertex. Relaxed form: some partner of s (resp. t) clear of
// avoid_s_side (resp. avoid_t_side). Strict form: all four partners clear.
// Partner witnesses never ride a faulty crossing edge.
EdgeOnPath pick_edge_on_path(const PartitionView& view, const Path& seq, bool is_cycle,
                             const EdgeSet& L_here, const EdgeSet& avoid_s_side,
                             const EdgeSet& avoid_t_side, bool strict,
                             const std::optional<Vertex>& excluded,
                             EdgeOrient orient = EdgeOrient::any,
                             const EdgeSet* faults = nullptr);

// Vertex s of the given parity: clear of L_here, both partners clear of
// avoid_next, far endpoint not adjacent to s's partners inside the next
// block, and (when the crossing pin (x,y) is present) s not in {x,y} with
// the pin's near end not adjacent to s's partners either.
Vertex pick_vertex_unlinked(const PartitionView& view, int block, Parity p, const EdgeSet& L_here,
                            const EdgeSet& avoid_next, const Vertex& far_endpoint,
                            const std::optional<std::pair<Vertex, Vertex>>& pin);

// Two in-block neighbors s,t of r such that L_here + {(r,s),(r,t)} is a
// linear forest and each of s,t has a crossing partner clear of
// avoid_target; the forced edges must avoid F_here.
std::pair<Vertex, Vertex> pick_two_neighbors(const PartitionView& view, const Vertex& r,
                                             const EdgeSet& L_here, const EdgeSet& F_here,
                                             const EdgeSet& avoid_target);

// In-block neighbor s of r with (r,s) not in L_here u F_here, L_here + (r,s)
// a linear forest, {y,z} compatible to the extended forest, and a crossing
// partner of s that is not internal to target_forest (strengthened: not
// incident to it at all).
Vertex pick_extension_neighbor(const PartitionView& view, const Vertex& r, const EdgeSet& L_here,
                               const EdgeSet& F_here, const Vertex& y, const Vertex& z,
                               const EdgeSet& target_forest, bool strengthened);

// Detour pair at the end x of a maximal forest path whose first edge (x,y)
// is lifted: L_here + {(x,s),(x,t)} - (x,y) stays a forest with {y,z}
// compatible, s has a partner clear of avoid_prev, t has a partner not
// internal to L_prev, and t != shadow(s).
std::pair<Vertex, Vertex> pick_detour_pair(const PartitionView& view, const Vertex& x,
                                           const EdgeSet& L_here, const EdgeSet& F_here,
                                           const Vertex& y, const Vertex& z, const EdgeSet& L_prev,
                                           const EdgeSet& F_prev);

// In-block neighbor z of the anchor (z != y) with (anchor,z) not in L_here,
// L_here + (anchor,z) a linear forest, and a partner of z clear of
// avoid_out.
Vertex pick_crossing_neighbor(const PartitionView& view, const Vertex& anchor, const EdgeSet& L_here,
                              const EdgeSet& F_here, const Vertex& y, const EdgeSet& avoid_out);

// l = 0 variant; the clearance target is the forest of the block the
// partners land in.
Vertex pick_crossing_neighbor_l0(const PartitionView& view, const Vertex& x, const EdgeSet& L0,
                                 const EdgeSet& F0, const Vertex& y, const EdgeSet& L3);

// Branch pair at x (both distinct from y): L0 + {(x,s),(x,t)} - (x,y) is a
// linear forest and both partners of s are clear of L3.
std::pair<Vertex, Vertex> pick_branch_pair_l0(const PartitionView& view, const Vertex& x,
                                              const EdgeSet& L0, const EdgeSet& F0, const Vertex& y,
                                              const EdgeSet& L3);

// ---- proof-level block operations -----------------------------------------

// H-cycle of block `t` - F_blk through L_blk (le-1 construction: close a
// recursive H-path over one prescribed edge). Pre: |L u F| = 2(n-1)-1 within
// the block's own budget accounting and L_blk nonempty.
Path hcycle_block(const PartitionView& view, int t, const EdgeSet& L_blk, const EdgeSet& F_blk,
                  const SearchLimits& lim = default_limits());

// H-path of the fully loaded block with one fault withheld (pr-1); returns
// the path and its endpoints (even, odd). Pre: |L u F| = 2(n-1) within the
// block and F_blk nonempty.
struct BlockPathResult {
    Path path;
    Vertex a, b;
};
BlockPathResult hpath_from_faulty_block(const PartitionView& view, int t, const EdgeSet& L_blk,
                                        const EdgeSet& F_blk, const SearchLimits& lim = default_limits());

// ---- the constructor -------------------------------------------------------

// Recursive partition-and-splice construction. n <= 2 delegates to the
// oracle; otherwise selects a dimension, partitions, restricts, normalizes
// and dispatches on the crossing-edge case family. Every returned path has
// been checked by the independent validator.
Path construct(const Instance& inst, const SearchLimits& lim = default_limits());

} // namespace bh

#endif
