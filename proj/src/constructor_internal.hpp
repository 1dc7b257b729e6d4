// Internal machinery shared by the constructor translation units: frames
// over the 4-way partition, recursive block solving, path surgery and the
// weave assembler. Not part of the public surface.
#ifndef BH_CONSTRUCTOR_INTERNAL_HPP
#define BH_CONSTRUCTOR_INTERNAL_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include "bh/constructor.hpp"
#include "bh/validate.hpp"

namespace bh::detail {

struct PlanFail : Error {
    explicit PlanFail(const std::string& w) : Error(w) {}
};

Path construct_impl(const BalancedHypercube& h, const EdgeSet& F, const LinearForest& L,
                    const Vertex& u0, const Vertex& v0, const SearchLimits& lim, int depth);

inline bool clear_of(const EdgeSet& es, const Vertex& v) { return !incident(es, v); }

inline EdgeSet merge(const EdgeSet& a, const EdgeSet& b) {
    EdgeSet out = a;
    for (const auto& e : b) out.push_back(e);
    sort_unique(out);
    return out;
}

// Logical view of the partition: block t maps to physical block
// (rot + sig*t) mod 4; for sig = -1 the even/odd roles swap so that
// "log-even vertices cross into the next logical block" keeps holding.
struct Frame {
    const PartitionView* view = nullptr;
    int rot = 0;
    int sig = 1;
    std::array<EdgeSet, 4> L, F; // by logical block index
    EdgeSet Lc, Fc;
    const EdgeSet* all_faults = nullptr;
    int n = 0;
    SearchLimits lim;
    int depth = 0;
    std::array<EdgeSet, 4> base_L_phys, base_F_phys;

    int phys(int t) const { return (((rot + sig * t) % 4) + 4) % 4; }
    int logi(int p) const { return ((((p - rot) * sig) % 4) + 4) % 4; }
    int log_block(const Vertex& w) const { return logi(view->block_of(w)); }
    bool log_even(const Vertex& w) const { return (sig > 0) == w.even(); }
    Parity want(bool logical_even) const {
        return (sig > 0) == logical_even ? Parity::Even : Parity::Odd;
    }
    int load(int t) const {
        t = (t % 4 + 4) % 4;
        return static_cast<int>(L[static_cast<size_t>(t)].size() + F[static_cast<size_t>(t)].size());
    }
    const EdgeSet& Lb(int t) const { return L[static_cast<size_t>((t % 4 + 4) % 4)]; }
    const EdgeSet& Fb(int t) const { return F[static_cast<size_t>((t % 4 + 4) % 4)]; }
    EdgeSet LF(int t) const { return merge(Lb(t), Fb(t)); }
    int sub_budget() const { return 2 * (n - 1) - 2; }

    Frame rotated_to(const Vertex& anchor_log0) const {
        Frame fr = *this;
        fr.rot = view->block_of(anchor_log0);
        for (int t = 0; t < 4; ++t) {
            int p = fr.phys(t);
            fr.L[static_cast<size_t>(t)] = base_L_phys[static_cast<size_t>(p)];
            fr.F[static_cast<size_t>(t)] = base_F_phys[static_cast<size_t>(p)];
        }
        return fr;
    }
};

inline Frame make_frame(const PartitionView& view, const BlockData& bd, int rot, int sig,
                        const EdgeSet& all_faults, int n, const SearchLimits& lim, int depth) {
    Frame fr;
    fr.view = &view;
    fr.rot = rot;
    fr.sig = sig;
    fr.base_L_phys = bd.L;
    fr.base_F_phys = bd.F;
    for (int t = 0; t < 4; ++t) {
        fr.L[static_cast<size_t>(t)] = bd.L[static_cast<size_t>(fr.phys(t))];
        fr.F[static_cast<size_t>(t)] = bd.F[static_cast<size_t>(fr.phys(t))];
    }
    fr.Lc = bd.Lc;
    fr.Fc = bd.Fc;
    fr.all_faults = &all_faults;
    fr.n = n;
    fr.lim = lim;
    fr.depth = depth;
    return fr;
}

// The prescribed crossing edge in frame orientation: xe log-even in block l,
// xo log-odd in block l+1.
struct PinInfo {
    Vertex xe, xo;
    int l = 0;
};

inline std::optional<PinInfo> frame_pin(const Frame& fr) {
    if (fr.Lc.empty()) return std::nullopt;
    const Edge& e = fr.Lc.front();
    PinInfo p;
    if (fr.log_even(e.a())) {
        p.xe = e.a();
        p.xo = e.b();
    } else {
        p.xe = e.b();
        p.xo = e.a();
    }
    p.l = fr.log_block(p.xe);
    return p;
}

// Crossing partner of w: skips faulty links, excluded vertices and vertices
// incident to avoid_incident; + direction first.
inline std::optional<Vertex> partner_opt(const Frame& fr, const Vertex& w,
                                         const EdgeSet& avoid_incident,
                                         const std::vector<Vertex>& exclude) {
    for (const Vertex& p : fr.view->crossing_neighbors(w)) {
        Edge e(fr.view->host(), w, p);
        if (contains(*fr.all_faults, e)) continue;
        if (std::find(exclude.begin(), exclude.end(), p) != exclude.end()) continue;
        if (!clear_of(avoid_incident, p)) continue;
        return p;
    }
    return std::nullopt;
}

inline Vertex partner(const Frame& fr, const Vertex& w, const EdgeSet& avoid_incident,
                      const std::vector<Vertex>& exclude = {}) {
    auto p = partner_opt(fr, w, avoid_incident, exclude);
    if (!p) throw PlanFail("no usable crossing partner at " + w.str());
    return *p;
}

inline EdgeSet to_sub_edges(const Frame& fr, const EdgeSet& es) {
    EdgeSet out;
    const auto& sub = fr.view->sub();
    for (const auto& e : es) out.emplace_back(sub, fr.view->to_sub(e.a()), fr.view->to_sub(e.b()));
    sort_unique(out);
    return out;
}

inline Path from_sub_path(const Frame& fr, int phys_block, const Path& p) {
    Path out;
    out.reserve(p.size());
    for (const auto& v : p) out.push_back(fr.view->from_sub(phys_block, v));
    return out;
}

Path solve_block(const Frame& fr, int t, const EdgeSet& extraL, const Vertex& e1, const Vertex& e2);
std::pair<Path, Path> block_cover(const Frame& fr, int t, const EdgeSet& extraL, const Vertex& a,
                                  const Vertex& b, const Vertex& c, const Vertex& d);
Path block_minus(const Frame& fr, int t, const Vertex& deleted, const Vertex& e1, const Vertex& e2);
Path block_cycle(const Frame& fr, int t);

// ---- path utilities ---------------------------------------------------------

inline size_t pos_of(const Path& p, const Vertex& w) {
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] == w) return i;
    throw PlanFail("vertex " + w.str() + " not on the path");
}

inline Vertex nbr_toward(const Path& p, const Vertex& w, const Vertex& z) {
    size_t iw = pos_of(p, w), iz = pos_of(p, z);
    if (iw == iz) throw PlanFail("nbr_toward: identical anchors");
    return iz > iw ? p[iw + 1] : p[iw - 1];
}

// Remove path edge (x,y): (piece ending at x, piece starting at y).
inline std::pair<Path, Path> cut_edge(const Path& p, const Vertex& x, const Vertex& y) {
    size_t ix = pos_of(p, x), iy = pos_of(p, y);
    if (ix + 1 != iy && iy + 1 != ix) throw PlanFail("cut_edge: not a path edge");
    size_t cut = std::min(ix, iy);
    Path first(p.begin(), p.begin() + static_cast<long>(cut) + 1);
    Path second(p.begin() + static_cast<long>(cut) + 1, p.end());
    if (!(first.back() == x)) {
        std::reverse(first.begin(), first.end());
        std::reverse(second.begin(), second.end());
        std::swap(first, second);
    }
    if (!(first.back() == x && second.front() == y)) throw PlanFail("cut_edge: orientation lost");
    return {std::move(first), std::move(second)};
}

// Remove cycle edge (a,b) from a cycle (closing edge implicit): path a..b.
inline Path open_cycle(const Path& cyc, const Vertex& a, const Vertex& b) {
    size_t m = cyc.size();
    size_t ia = pos_of(cyc, a), ib = pos_of(cyc, b);
    bool fwd = (ia + 1) % m == ib;
    bool bwd = (ib + 1) % m == ia;
    if (!fwd && !bwd) throw PlanFail("open_cycle: not a cycle edge");
    Path out;
    out.reserve(m);
    long step = fwd ? -1 : 1;
    size_t cur = ia;
    for (size_t k = 0; k < m; ++k) {
        out.push_back(cyc[cur]);
        cur = (cur + m + static_cast<size_t>((step + static_cast<long>(m)) % static_cast<long>(m))) % m;
    }
    if (!(out.front() == a && out.back() == b)) throw PlanFail("open_cycle: walk failed");
    return out;
}

inline std::array<Vertex, 2> cycle_nbrs(const Path& cyc, const Vertex& w) {
    size_t m = cyc.size();
    size_t i = pos_of(cyc, w);
    return {cyc[(i + m - 1) % m], cyc[(i + 1) % m]};
}

// Walk the cycle from `from` to `to`, taking the first step away from
// `avoid` (which must be a cycle neighbor of `from`).
inline Path cycle_walk(const Path& cyc, const Vertex& from, const Vertex& to, const Vertex& avoid) {
    size_t m = cyc.size();
    size_t i = pos_of(cyc, from);
    long dir = cyc[(i + 1) % m] == avoid ? -1 : 1;
    Path out;
    size_t cur = i;
    for (size_t k = 0; k < m; ++k) {
        out.push_back(cyc[cur]);
        if (cyc[cur] == to) return out;
        cur = (cur + m + static_cast<size_t>((dir + static_cast<long>(m)) % static_cast<long>(m))) % m;
    }
    throw PlanFail("cycle_walk: target not reached");
}

// ---- weave -------------------------------------------------------------------

struct Weave {
    std::vector<Path> segs;
    std::vector<std::pair<Vertex, Vertex>> links;

    void seg(Path p) {
        if (p.empty()) throw PlanFail("empty segment");
        segs.push_back(std::move(p));
    }
    void link(const Vertex& a, const Vertex& b) { links.emplace_back(a, b); }

    Path assemble(const BalancedHypercube& h, const Vertex& u, const Vertex& v) const {
        std::map<Vertex, std::vector<Vertex>> adj;
        size_t total = 0;
        for (const auto& s : segs) {
            total += s.size();
            for (size_t i = 0; i + 1 < s.size(); ++i) {
                adj[s[i]].push_back(s[i + 1]);
                adj[s[i + 1]].push_back(s[i]);
            }
            if (s.size() == 1) adj[s[0]]; // keep singletons visible
        }
        if (total != h.vertex_count())
            throw PlanFail("weave: segments cover " + std::to_string(total) + " of " +
                           std::to_string(h.vertex_count()) + " vertices");
        for (const auto& [a, b] : links) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        if (adj.size() != h.vertex_count()) throw PlanFail("weave: duplicate or missing vertices");
        for (const auto& [w, nb] : adj) {
            size_t need = (w == u || w == v) ? 1 : 2;
            if (nb.size() != need)
                throw PlanFail("weave: degree " + std::to_string(nb.size()) + " at " + w.str());
        }
        Path out;
        out.reserve(total);
        Vertex prev = u, cur = u;
        out.push_back(u);
        while (!(cur == v)) {
            const auto& nb = adj[cur];
            Vertex next = nb[0];
            if (out.size() > 1 && next == prev) {
                if (nb.size() < 2) throw PlanFail("weave: walk stalled");
                next = nb[1];
            }
            prev = cur;
            cur = next;
            out.push_back(cur);
            if (out.size() > total) throw PlanFail("weave: walk loops");
        }
        if (out.size() != total)
            throw PlanFail("weave: walk covered " + std::to_string(out.size()) +
                           " vertices; splice leaves a cycle" + dump());
        return out;
    }

    std::string dump() const {
        std::ostringstream os;
        os << " [segs:";
        for (const auto& s : segs) os << " " << s.front().str() << ".." << s.back().str() << "(" << s.size() << ")";
        os << " links:";
        for (const auto& [a, b] : links) os << " " << a.str() << "-" << b.str();
        os << "]";
        return os.str();
    }
};

// ---- anchored split ------------------------------------------------------------

struct SplitOut {
    Path piece_anchor; // ends at the anchor
    Path piece_mate;   // starts at the mate
    Vertex mate;
    Vertex mate_out;
};

Vertex pick_clear_multi(const PartitionView& view, int block, Parity p,
                        const EdgeSet& avoid_here, const EdgeSet& avoid_next,
                        const std::vector<Vertex>& excl);

SplitOut anchored_split(const Frame& fr, int t, const EdgeSet& extraL, const Vertex& e1,
                        const Vertex& e2, const Vertex& anchor, const Vertex& side,
                        const EdgeSet& mate_avoid, const std::vector<Vertex>& mate_excl = {});

// heavy-block covering structure
struct Heavy {
    bool is_cycle = true;
    Path body;
    Vertex pa, pb; // pr-1 path ends (pa log-even) when !is_cycle
};

Heavy make_heavy(const Frame& fr);
std::optional<Vertex> free_body_nbr(const Frame& fr, const Heavy& hv, const Vertex& w,
                                    const std::vector<Vertex>& avoid_mate);

Path plan_all_small(Frame fr, const Vertex& u, const Vertex& v);
Path plan_heavy(const Frame& fr, const Vertex& u, const Vertex& v);

// The pin leaves the even endpoint's block but not from the endpoint itself;
// handles both light and heavy block-0 loads.
Path plan_pin_at_u_block(const Frame& fr, const Vertex& ue, const Vertex& vo);

// The prescribed crossing edge starts at the even endpoint itself: the
// endpoint's only path edge is the pin, its block is covered minus the
// endpoint, and the rest is chained through covers.
Path plan_consumed(const Frame& fr, const Vertex& ue, const Vertex& vo);

// logical orientation helper for pick_edge_on_path results
struct HookPair {
    Vertex ae, bo, ae_out, bo_out;
};

inline HookPair orient(const Frame& fr, const EdgeOnPath& e) {
    if (fr.log_even(e.s)) return {e.s, e.t, e.s_out, e.t_out};
    return {e.t, e.s, e.t_out, e.s_out};
}

} // namespace bh::detail

#endif
