#include "bh/gen.hpp"

#include <random>

namespace bh {

Instance gen_instance(int n, int nf, int nl, std::uint64_t seed) {
    if (nf < 0 || nl < 0 || nf + nl > 2 * n - 2)
        throw BudgetExceeded("gen_instance: split " + std::to_string(nf) + "+" + std::to_string(nl) +
                             " exceeds 2n-2 = " + std::to_string(2 * n - 2));
    BalancedHypercube h(n);
    std::vector<Edge> edges;
    for (const Vertex& v : h.vertices())
        for (const Vertex& w : h.neighbors(v))
            if (v < w) edges.emplace_back(h, v, w);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(n) << 32) ^
                        (static_cast<std::uint64_t>(nf) << 16) ^ static_cast<std::uint64_t>(nl));
    auto pick_edge = [&]() -> const Edge& {
        std::uniform_int_distribution<size_t> d(0, edges.size() - 1);
        return edges[d(rng)];
    };

    const int kTries = 20000;
    for (int attempt = 0; attempt < 200; ++attempt) {
        EdgeSet F;
        int tries = 0;
        while (static_cast<int>(F.size()) < nf && tries++ < kTries) {
            const Edge& e = pick_edge();
            if (!contains(F, e)) {
                F.push_back(e);
                sort_unique(F);
            }
        }
        if (static_cast<int>(F.size()) != nf) continue;

        LinearForest L;
        tries = 0;
        while (static_cast<int>(L.size()) < nl && tries++ < kTries) {
            const Edge& e = pick_edge();
            if (contains(F, e) || L.contains(e) || !L.can_add(e)) continue;
            L = L.plus(e);
        }
        if (static_cast<int>(L.size()) != nl) continue;

        std::vector<Vertex> evens, odds;
        for (const Vertex& v : h.vertices()) (v.even() ? evens : odds).push_back(v);
        std::uniform_int_distribution<size_t> du(0, evens.size() - 1);
        tries = 0;
        while (tries++ < kTries) {
            Vertex u = evens[du(rng)];
            Vertex v = odds[du(rng)];
            if (!compatible(L, u, v)) continue;
            return validate_instance(n, F, L, u, v);
        }
    }
    throw Error("gen_instance: sampling exhausted for split (" + std::to_string(nf) + "," +
                std::to_string(nl) + ")");
}

} // namespace bh
