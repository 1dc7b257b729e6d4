#ifndef BH_INSTANCE_HPP
#define BH_INSTANCE_HPP

#include <array>

#include "bh/forest.hpp"
#include "bh/partition.hpp"

namespace bh {

// A solvable problem: find a hamiltonian path of BH_n - F between u and v
// passing through L, subject to the working budget |F| + |E(L)| <= 2n-2.
struct Instance {
    int n = 1;
    EdgeSet faults;
    LinearForest prescribed;
    Vertex u, v; // normalized: u even, v odd

    int budget() const { return 2 * n - 2; }
    int load() const { return static_cast<int>(faults.size() + prescribed.size()); }
};

inline Instance validate_instance(int n, EdgeSet F, LinearForest L, Vertex u, Vertex v) {
    BalancedHypercube h(n);
    sort_unique(F);
    for (const auto& e : F)
        if (e.a().size() != n) throw Error("fault edge dimension mismatch");
    for (const auto& e : L.edges())
        if (e.a().size() != n) throw Error("prescribed edge dimension mismatch");
    for (const auto& e : L.edges())
        if (contains(F, e))
            throw FaultForestOverlap("edge (" + e.a().str() + "," + e.b().str() +
                                     ") is both faulty and prescribed");
    if (static_cast<int>(F.size() + L.size()) > 2 * n - 2)
        throw BudgetExceeded("|F|+|E(L)| = " + std::to_string(F.size() + L.size()) +
                             " exceeds 2n-2 = " + std::to_string(2 * n - 2));
    if (!h.valid(u) || !h.valid(v)) throw Error("endpoint dimension mismatch");
    if (u.parity() == v.parity())
        throw SameParityEndpoints("endpoints " + u.str() + "," + v.str() + " lie in the same part");
    if (!u.even()) std::swap(u, v);
    if (!compatible(L, u, v))
        throw Incompatible("{" + u.str() + "," + v.str() + "} is not compatible to L");
    Instance inst;
    inst.n = n;
    inst.faults = std::move(F);
    inst.prescribed = std::move(L);
    inst.u = u;
    inst.v = v;
    return inst;
}

// Restriction of F and E(L) to the four blocks plus the crossing sets.
struct BlockData {
    std::array<EdgeSet, 4> L;
    std::array<EdgeSet, 4> F;
    EdgeSet Lc, Fc;

    int load(int i) const { return static_cast<int>(L[static_cast<size_t>(i)].size() + F[static_cast<size_t>(i)].size()); }
};

inline BlockData restrict_to_blocks(const Instance& inst, const PartitionView& view) {
    BlockData bd;
    auto place = [&](const Edge& e, std::array<EdgeSet, 4>& blocks, EdgeSet& crossing) {
        if (view.is_crossing(e)) {
            crossing.push_back(e);
        } else {
            blocks[static_cast<size_t>(view.block_of(e.a()))].push_back(e);
        }
    };
    for (const auto& e : inst.prescribed.edges()) place(e, bd.L, bd.Lc);
    for (const auto& e : inst.faults) place(e, bd.F, bd.Fc);
    for (auto& s : bd.L) sort_unique(s);
    for (auto& s : bd.F) sort_unique(s);
    sort_unique(bd.Lc);
    sort_unique(bd.Fc);
    return bd;
}

} // namespace bh

#endif
