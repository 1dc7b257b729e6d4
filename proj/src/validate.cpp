#include "bh/validate.hpp"

#include <algorithm>

namespace bh {

ValidationReport validate_path(const Instance& inst, const Path& path) {
    ValidationReport rep;
    BalancedHypercube h(inst.n);

    // vertex multiset = V(BH_n)
    if (path.size() != h.vertex_count()) {
        rep.add(ViolationKind::NotHamiltonian,
                "path visits " + std::to_string(path.size()) + " of " +
                    std::to_string(h.vertex_count()) + " vertices");
    } else {
        std::vector<size_t> ranks;
        ranks.reserve(path.size());
        bool bad_vertex = false;
        for (const auto& v : path) {
            if (v.size() != inst.n) {
                rep.add(ViolationKind::NotHamiltonian, "vertex " + v.str() + " has wrong dimension");
                bad_vertex = true;
                break;
            }
            ranks.push_back(v.rank());
        }
        if (!bad_vertex) {
            std::sort(ranks.begin(), ranks.end());
            for (size_t i = 0; i < ranks.size(); ++i) {
                if (ranks[i] != i) {
                    rep.add(ViolationKind::NotHamiltonian, "vertex set is not V(BH_n)");
                    break;
                }
            }
        }
    }

    // consecutive adjacency / fault avoidance, via the neighbor formulas
    EdgeSet steps;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        auto d = h.dimension_of(path[i], path[i + 1]);
        if (!d) {
            rep.add(ViolationKind::NonEdgeStep,
                    "(" + path[i].str() + "," + path[i + 1].str() + ") is not an edge");
            continue;
        }
        Edge e(h, path[i], path[i + 1]);
        if (contains(inst.faults, e))
            rep.add(ViolationKind::UsesFault, "step (" + e.a().str() + "," + e.b().str() + ") is faulty");
        steps.push_back(e);
    }
    sort_unique(steps);

    for (const auto& e : inst.prescribed.edges())
        if (!contains(steps, e))
            rep.add(ViolationKind::MissesPrescribed,
                    "prescribed (" + e.a().str() + "," + e.b().str() + ") not traversed");

    if (path.empty() || !((path.front() == inst.u && path.back() == inst.v) ||
                          (path.front() == inst.v && path.back() == inst.u)))
        rep.add(ViolationKind::WrongEndpoints, "endpoints are not {u,v}");

    return rep;
}

} // namespace bh
