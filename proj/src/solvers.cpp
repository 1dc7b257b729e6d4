#include "bh/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <thread>

namespace bh {

SearchLimits default_limits() {
    SearchLimits lim;
    if (const char* s = std::getenv("BH_NODE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && v > 0) lim.node_budget = v;
    }
    return lim;
}

namespace {

constexpr int kMaxVerts = 4096; // 4^6; searches beyond that are rejected
constexpr int kWords = kMaxVerts / 64;

struct Mask {
    std::array<std::uint64_t, kWords> w{};
    void set(int i) { w[static_cast<size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63); }
    void clear(int i) { w[static_cast<size_t>(i >> 6)] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (w[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1; }
};

// Flat search graph over the vertices of one hypercube, with faults removed,
// prescribed edges forced, and optional virtual forced edges appended.
struct SearchGraph {
    int n = 0;
    int m = 0;                                  // 4^n
    std::vector<std::vector<int>> adj;          // sorted: lex order of labels
    std::vector<std::vector<int>> forced;
    std::vector<Mask> adj_mask;
    const BalancedHypercube* h = nullptr;
    int removed_id = -1;

    int words() const { return (m + 63) / 64; }

    static int id_of(const Vertex& v) { return static_cast<int>(v.rank()); }
    Vertex label(int id) const { return Vertex::from_rank(n, static_cast<size_t>(id)); }

    std::vector<int> removed_ids;

    void build(const BalancedHypercube& hc, const EdgeSet& F, const LinearForest& L,
               const std::vector<std::pair<Vertex, Vertex>>& virtual_forced,
               const std::vector<Vertex>* removed) {
        h = &hc;
        n = hc.n();
        m = static_cast<int>(hc.vertex_count());
        if (m > kMaxVerts) throw Error("search graph too large");
        adj.assign(static_cast<size_t>(m), {});
        forced.assign(static_cast<size_t>(m), {});
        adj_mask.assign(static_cast<size_t>(m), {});
        removed_ids.clear();
        if (removed)
            for (const Vertex& r : *removed) removed_ids.push_back(id_of(r));
        std::sort(removed_ids.begin(), removed_ids.end());
        removed_id = removed_ids.empty() ? -1 : removed_ids.front();
        auto is_removed = [&](int id) {
            return std::binary_search(removed_ids.begin(), removed_ids.end(), id);
        };
        for (int id = 0; id < m; ++id) {
            if (is_removed(id)) continue;
            Vertex v = label(id);
            for (const Vertex& w : hc.neighbors(v)) {
                int wid = id_of(w);
                if (is_removed(wid)) continue;
                Edge e(hc, v, w);
                if (contains(F, e)) continue;
                adj[static_cast<size_t>(id)].push_back(wid);
            }
            auto& a = adj[static_cast<size_t>(id)];
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
        for (const auto& e : L.edges()) {
            int x = id_of(e.a()), y = id_of(e.b());
            forced[static_cast<size_t>(x)].push_back(y);
            forced[static_cast<size_t>(y)].push_back(x);
        }
        for (const auto& [p, q] : virtual_forced) {
            int x = id_of(p), y = id_of(q);
            auto& ax = adj[static_cast<size_t>(x)];
            if (!std::binary_search(ax.begin(), ax.end(), y)) {
                ax.insert(std::lower_bound(ax.begin(), ax.end(), y), y);
                auto& ay = adj[static_cast<size_t>(y)];
                ay.insert(std::lower_bound(ay.begin(), ay.end(), x), x);
            }
            forced[static_cast<size_t>(x)].push_back(y);
            forced[static_cast<size_t>(y)].push_back(x);
        }
        for (auto& f : forced) {
            std::sort(f.begin(), f.end());
            f.erase(std::unique(f.begin(), f.end()), f.end());
        }
        for (int id = 0; id < m; ++id)
            for (int w : adj[static_cast<size_t>(id)]) adj_mask[static_cast<size_t>(id)].set(w);
    }
};

struct HamSearch {
    const SearchGraph* g = nullptr;
    int start = -1, target = -1;
    int total = 0; // vertices to cover
    std::uint64_t budget = 0;
    std::uint64_t nodes = 0;
    bool prune_degrees = true;
    // return true to accept and stop; false to keep searching
    std::function<bool(const std::vector<int>&)> on_solution;

    Mask visited;
    std::vector<int> path;
    bool exhausted_budget = false;
    bool accepted = false;

    bool feasible_endpoints() const {
        if (g->forced[static_cast<size_t>(start)].size() > 1) return false;
        if (g->forced[static_cast<size_t>(target)].size() > 1) return false;
        return true;
    }

    // Degree-availability pruning: every unvisited vertex besides the target
    // must keep two usable connections (one for the target), counting the
    // current vertex as usable.
    bool degrees_ok(int cur) {
        int words = g->words();
        for (int w = 0; w < words; ++w) {
            std::uint64_t free_bits = ~visited.w[static_cast<size_t>(w)];
            if (w == words - 1 && (g->m & 63) != 0)
                free_bits &= (std::uint64_t{1} << (g->m & 63)) - 1;
            while (free_bits) {
                int b = std::countr_zero(free_bits);
                free_bits &= free_bits - 1;
                int z = (w << 6) | b;
                const Mask& am = g->adj_mask[static_cast<size_t>(z)];
                int avail = 0;
                for (int ww = 0; ww < words; ++ww) {
                    std::uint64_t x = am.w[static_cast<size_t>(ww)] & ~visited.w[static_cast<size_t>(ww)];
                    avail += std::popcount(x);
                }
                if (am.test(cur)) ++avail;
                if (z == target) {
                    if (avail < 1) return false;
                } else if (avail < 2) {
                    return false;
                }
            }
        }
        return true;
    }

    SearchStatus run() {
        if (!feasible_endpoints()) return SearchStatus::infeasible;
        visited = Mask{};
        for (int rid : g->removed_ids) visited.set(rid); // keep them out of degree checks
        path.clear();
        path.reserve(static_cast<size_t>(total));
        visited.set(start);
        path.push_back(start);
        dfs(start, -1);
        if (accepted) return SearchStatus::found;
        return exhausted_budget ? SearchStatus::budget_exceeded : SearchStatus::infeasible;
    }

    bool dfs(int cur, int prev) {
        if (accepted || exhausted_budget) return accepted;
        if (++nodes > budget) {
            exhausted_budget = true;
            return false;
        }
        if (static_cast<int>(path.size()) == total) {
            if (cur != target) return false;
            if (on_solution(path)) accepted = true;
            return accepted;
        }

        // forced-edge bookkeeping at cur
        int forced_next = -1;
        int pending = 0;
        for (int w : g->forced[static_cast<size_t>(cur)]) {
            if (w == prev) continue;
            if (visited.test(w)) return false; // forced edge no longer usable
            ++pending;
            forced_next = w;
        }
        if (pending > 1) return false;

        if (prune_degrees && !degrees_ok(cur)) return false;

        const bool last_step = static_cast<int>(path.size()) == total - 1;
        auto try_step = [&](int w) -> bool {
            if (visited.test(w)) return false;
            if (w == target && !last_step) return false;
            if (w == target) {
                // the arrival edge must cover any forced edge at the target
                for (int f : g->forced[static_cast<size_t>(target)])
                    if (f != cur) return false;
            }
            visited.set(w);
            path.push_back(w);
            dfs(w, cur);
            path.pop_back();
            visited.clear(w);
            return accepted;
        };

        if (forced_next >= 0) {
            try_step(forced_next);
            return accepted;
        }
        for (int w : g->adj[static_cast<size_t>(cur)])
            if (try_step(w)) break;
        return accepted;
    }
};

Path to_path(const SearchGraph& g, const std::vector<int>& ids) {
    Path p;
    p.reserve(ids.size());
    for (int id : ids) p.push_back(g.label(id));
    return p;
}

SearchOutcome<Path> run_ham_path(const BalancedHypercube& h, const EdgeSet& F, const LinearForest& L,
                                 const Vertex& u, const Vertex& v, const SearchLimits& lim,
                                 bool prune) {
    if (u == v) throw Error("ham_path: identical endpoints");
    SearchGraph g;
    g.build(h, F, L, {}, nullptr);
    HamSearch s;
    s.g = &g;
    s.start = SearchGraph::id_of(u);
    s.target = SearchGraph::id_of(v);
    s.total = g.m;
    s.budget = lim.node_budget;
    s.prune_degrees = prune;
    std::vector<int> sol;
    s.on_solution = [&](const std::vector<int>& p) {
        sol = p;
        return true;
    };
    SearchStatus st = s.run();
    SearchOutcome<Path> out;
    out.status = st;
    if (st == SearchStatus::found) out.value = to_path(g, sol);
    return out;
}

} // namespace

SearchOutcome<Path> ham_path(const BalancedHypercube& h, const EdgeSet& F, const LinearForest& L,
                             const Vertex& u, const Vertex& v, const SearchLimits& lim) {
    return run_ham_path(h, F, L, u, v, lim, true);
}

SearchOutcome<Path> ham_path_unpruned(const BalancedHypercube& h, const EdgeSet& F,
                                      const LinearForest& L, const Vertex& u, const Vertex& v,
                                      const SearchLimits& lim) {
    return run_ham_path(h, F, L, u, v, lim, false);
}

SearchOutcome<Path> ham_cycle_through(const BalancedHypercube& h, const EdgeSet& F,
                                      const LinearForest& L, const SearchLimits& lim) {
    // Root the cycle at the lexicographically least vertex r; for each
    // admissible closing edge (r,z) in lex order of z, search a hamiltonian
    // path r -> z through the remaining forced edges. Each closing edge gets
    // the full node budget.
    Vertex r = Vertex::from_rank(h.n(), 0);
    std::vector<Vertex> around = h.neighbors(r);
    std::sort(around.begin(), around.end());
    SearchOutcome<Path> out;
    out.status = SearchStatus::infeasible;
    for (const Vertex& z : around) {
        Edge closing(h, r, z);
        if (contains(F, closing)) continue;
        LinearForest L2 = L.contains(closing) ? L.minus(closing) : L;
        auto res = ham_path(h, F, L2, r, z, lim);
        if (res.found()) {
            out.status = SearchStatus::found;
            out.value = std::move(res.value);
            return out;
        }
        if (res.out_of_budget()) out.status = SearchStatus::budget_exceeded;
    }
    return out;
}

SearchOutcome<PathPair> two_path_cover_general(const BalancedHypercube& h, const EdgeSet& F,
                                               const LinearForest& L, const Vertex& u,
                                               const Vertex& v, const Vertex& x, const Vertex& y,
                                               const SearchLimits& lim) {
    if (u == x || u == y || v == x || v == y || u == v || x == y)
        throw Error("two_path_cover: endpoints must be pairwise distinct");
    if (!u.even() || !x.even() || v.even() || y.even())
        throw Error("two_path_cover: needs u,x even and v,y odd");
    // A cover {P[u,v], P[x,y]} is a hamiltonian path u -> y in the graph
    // augmented with a forced virtual edge (v,x), provided the virtual edge
    // is traversed between the two halves in that orientation.
    if (h.adjacent(v, x) && L.contains(Edge(h, v, x)))
        throw Error("two_path_cover: junction (v,x) is itself prescribed");
    SearchGraph g;
    std::vector<std::pair<Vertex, Vertex>> extra;
    extra.emplace_back(v, x);
    g.build(h, F, L, extra, nullptr);

    HamSearch s;
    s.g = &g;
    s.start = SearchGraph::id_of(u);
    s.target = SearchGraph::id_of(y);
    s.total = g.m;
    s.budget = lim.node_budget;
    int vid = SearchGraph::id_of(v), xid = SearchGraph::id_of(x);
    std::vector<int> sol;
    s.on_solution = [&](const std::vector<int>& p) {
        // accept only the orientation ... u ... v | x ... y ...
        for (size_t i = 0; i + 1 < p.size(); ++i)
            if (p[i] == vid && p[i + 1] == xid) {
                sol = p;
                return true;
            }
        return false;
    };
    SearchStatus st = s.run();
    SearchOutcome<PathPair> out;
    out.status = st;
    if (st == SearchStatus::found) {
        Path whole = to_path(g, sol);
        PathPair pp;
        size_t cut = 0;
        for (size_t i = 0; i + 1 < sol.size(); ++i)
            if (sol[i] == vid && sol[i + 1] == xid) cut = i;
        pp.first.assign(whole.begin(), whole.begin() + static_cast<long>(cut) + 1);
        pp.second.assign(whole.begin() + static_cast<long>(cut) + 1, whole.end());
        out.value = std::move(pp);
    }
    return out;
}

SearchOutcome<PathPair> two_path_cover(const BalancedHypercube& h, const Vertex& u, const Vertex& v,
                                       const Vertex& x, const Vertex& y, const SearchLimits& lim) {
    return two_path_cover_general(h, {}, LinearForest{}, u, v, x, y, lim);
}

SearchOutcome<Path> ham_path_minus_vertex_general(const BalancedHypercube& h, const EdgeSet& F,
                                                  const LinearForest& L, const Vertex& w,
                                                  const Vertex& x, const Vertex& y,
                                                  const SearchLimits& lim) {
    if (x == y || x == w || y == w) throw Error("ham_path_minus_vertex: endpoints must be distinct");
    if (x.parity() != y.parity() || x.parity() == w.parity())
        throw Error("ham_path_minus_vertex: needs the deleted vertex in the opposite part");
    if (L.touches(w)) throw Error("ham_path_minus_vertex: deleted vertex carries a prescribed edge");
    SearchGraph g;
    std::vector<Vertex> removed{w};
    g.build(h, F, L, {}, &removed);
    HamSearch s;
    s.g = &g;
    s.start = SearchGraph::id_of(x);
    s.target = SearchGraph::id_of(y);
    s.total = g.m - 1;
    s.budget = lim.node_budget;
    std::vector<int> sol;
    s.on_solution = [&](const std::vector<int>& p) {
        sol = p;
        return true;
    };
    SearchStatus st = s.run();
    SearchOutcome<Path> out;
    out.status = st;
    if (st == SearchStatus::found) out.value = to_path(g, sol);
    return out;
}

SearchOutcome<Path> ham_path_minus_set(const BalancedHypercube& h, const EdgeSet& F,
                                        const LinearForest& L, const std::vector<Vertex>& removed,
                                        const Vertex& x, const Vertex& y, const SearchLimits& lim) {
    SearchGraph g;
    g.build(h, F, L, {}, &removed);
    HamSearch s;
    s.g = &g;
    s.start = SearchGraph::id_of(x);
    s.target = SearchGraph::id_of(y);
    s.total = g.m - static_cast<int>(removed.size());
    s.budget = lim.node_budget;
    std::vector<int> sol;
    s.on_solution = [&](const std::vector<int>& p) {
        sol = p;
        return true;
    };
    SearchStatus st = s.run();
    SearchOutcome<Path> out;
    out.status = st;
    if (st == SearchStatus::found) out.value = to_path(g, sol);
    return out;
}

SearchOutcome<Path> ham_path_minus_vertex(const BalancedHypercube& h, const Vertex& w,
                                          const Vertex& x, const Vertex& y,
                                          const SearchLimits& lim) {
    return ham_path_minus_vertex_general(h, {}, LinearForest{}, w, x, y, lim);
}

namespace {

std::vector<Edge> all_edges_of(const BalancedHypercube& h) {
    std::vector<Edge> out;
    for (const Vertex& v : h.vertices())
        for (const Vertex& w : h.neighbors(v))
            if (v < w) out.emplace_back(h, v, w);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_forest(const EdgeSet& es) {
    try {
        LinearForest::validate(es);
        return true;
    } catch (const NotAForest&) {
        return false;
    }
}

} // namespace

CertReport certify(int n, int k, const CertifyOptions& opt) {
    BalancedHypercube h(n);
    CertReport rep;
    rep.n = n;
    rep.k = k;

    std::vector<Edge> edges = all_edges_of(h);

    // Materialize the (F, L) list first so that work can be split across
    // workers while keeping a deterministic merge order.
    std::vector<std::pair<EdgeSet, EdgeSet>> work;
    if (opt.samples == 0) {
        EdgeSet F;
        std::function<void(size_t, EdgeSet&)> rec_L = [&](size_t from, EdgeSet& cur) {
            work.emplace_back(F, cur);
            if (static_cast<int>(F.size() + cur.size()) >= k) return;
            for (size_t i = from; i < edges.size(); ++i) {
                if (contains(F, edges[i])) continue;
                cur.push_back(edges[i]);
                if (is_forest(cur)) rec_L(i + 1, cur);
                cur.pop_back();
            }
        };
        std::function<void(size_t)> rec_F = [&](size_t from) {
            EdgeSet cur;
            rec_L(0, cur);
            if (static_cast<int>(F.size()) >= k) return;
            for (size_t i = from; i < edges.size(); ++i) {
                F.push_back(edges[i]);
                rec_F(i + 1);
                F.pop_back();
            }
        };
        rec_F(0);
    } else {
        // Random but reproducible sampling of (F, L) combinations.
        std::uint64_t state = opt.seed * 0x9E3779B97F4A7C15ull + 1;
        auto rnd = [&]() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            return state;
        };
        while (work.size() < opt.samples) {
            int nf = static_cast<int>(rnd() % static_cast<std::uint64_t>(k + 1));
            int nl = static_cast<int>(rnd() % static_cast<std::uint64_t>(k - nf + 1));
            EdgeSet F, L;
            for (int i = 0; i < nf; ++i) F.push_back(edges[rnd() % edges.size()]);
            sort_unique(F);
            int tries = 0;
            while (static_cast<int>(L.size()) < nl && tries++ < 200) {
                const Edge& e = edges[rnd() % edges.size()];
                if (contains(F, e) || contains(L, e)) continue;
                L.push_back(e);
                sort_unique(L);
                if (!is_forest(L)) {
                    L.erase(std::find(L.begin(), L.end(), e));
                }
            }
            work.emplace_back(std::move(F), std::move(L));
        }
    }

    std::vector<Vertex> evens, odds;
    for (const Vertex& v : h.vertices()) (v.even() ? evens : odds).push_back(v);

    int threads = opt.threads > 0 ? opt.threads
                                  : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min<int>(threads, 16);

    struct Shard {
        std::uint64_t checked = 0;
        std::uint64_t inconclusive = 0;
        std::vector<CertFailure> failures;
    };
    std::vector<Shard> shards(static_cast<size_t>(threads));
    std::atomic<size_t> next{0};

    auto worker = [&](int tid) {
        Shard& sh = shards[static_cast<size_t>(tid)];
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= work.size()) break;
            const auto& [F, Ledges] = work[i];
            LinearForest L = LinearForest::validate(Ledges);
            for (const Vertex& u : evens) {
                for (const Vertex& v : odds) {
                    if (!compatible(L, u, v)) continue;
                    ++sh.checked;
                    auto res = ham_path(h, F, L, u, v, opt.limits);
                    if (res.found()) continue;
                    CertFailure f;
                    f.F = F;
                    f.L = Ledges;
                    f.u = u;
                    f.v = v;
                    f.inconclusive = res.out_of_budget();
                    if (f.inconclusive) ++sh.inconclusive;
                    sh.failures.push_back(std::move(f));
                }
            }
        }
    };

    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    for (auto& sh : shards) {
        rep.instances_checked += sh.checked;
        rep.inconclusive += sh.inconclusive;
        for (auto& f : sh.failures) rep.failures.push_back(std::move(f));
    }
    // deterministic report order regardless of scheduling
    std::sort(rep.failures.begin(), rep.failures.end(), [](const CertFailure& a, const CertFailure& b) {
        if (a.F != b.F) return std::lexicographical_compare(a.F.begin(), a.F.end(), b.F.begin(), b.F.end());
        if (a.L != b.L) return std::lexicographical_compare(a.L.begin(), a.L.end(), b.L.begin(), b.L.end());
        if (!(a.u == b.u)) return a.u < b.u;
        return a.v < b.v;
    });
    return rep;
}

} // namespace bh
