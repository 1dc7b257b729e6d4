#include "bh/constructor.hpp"

#include "constructor_internal.hpp"

namespace bh {

// ===========================================================================
// dimension selection / normalization / case classification
// ===========================================================================

namespace {

struct DimStats {
    std::vector<int> fault_count, presc_count;
};

DimStats dim_stats(const BalancedHypercube& h, const EdgeSet& F, const LinearForest& L) {
    DimStats st;
    st.fault_count.assign(static_cast<size_t>(h.n()), 0);
    st.presc_count.assign(static_cast<size_t>(h.n()), 0);
    for (const auto& e : F) st.fault_count[static_cast<size_t>(e.dim())]++;
    for (const auto& e : L.edges()) st.presc_count[static_cast<size_t>(e.dim())]++;
    return st;
}

bool faults_share_vertex(const EdgeSet& F) {
    if (F.empty()) return false;
    for (const Vertex& w : {F.front().a(), F.front().b()}) {
        bool all = true;
        for (const auto& e : F)
            if (!e.touches(w)) all = false;
        if (all) return true;
    }
    return false;
}

// All admissible dimension choices, preferred (largest j) first.
std::vector<DimensionChoice> admissible_dimensions(const BalancedHypercube& h, const EdgeSet& F,
                                                   const LinearForest& L) {
    const int n = h.n();
    DimStats st = dim_stats(h, F, L);
    std::vector<DimensionChoice> out;
    auto make = [&](int j, DimensionRule rule) {
        DimensionChoice dc;
        dc.j = j;
        dc.rule = rule;
        dc.crossing_fault_count = st.fault_count[static_cast<size_t>(j)];
        dc.crossing_prescribed_count = st.presc_count[static_cast<size_t>(j)];
        return dc;
    };
    if (static_cast<int>(F.size()) == 2 * n - 3 && faults_share_vertex(F)) {
        // concentrated faults: a dimension with 1-2 faults and no prescribed edge
        for (int j = n - 1; j >= 1; --j)
            if (st.presc_count[static_cast<size_t>(j)] == 0 &&
                st.fault_count[static_cast<size_t>(j)] >= 1 &&
                st.fault_count[static_cast<size_t>(j)] <= 2)
                out.push_back(make(j, DimensionRule::ConcentratedFaults));
    }
    for (int j = n - 1; j >= 1; --j)
        if (st.fault_count[static_cast<size_t>(j)] + st.presc_count[static_cast<size_t>(j)] <= 1)
            out.push_back(make(j, DimensionRule::SparseDimension));
    return out;
}

DimensionChoice select_dimension_raw(const BalancedHypercube& h, const EdgeSet& F,
                                     const LinearForest& L) {
    auto all = admissible_dimensions(h, F, L);
    if (all.empty()) throw NoAdmissibleDimension("only dimension 0 qualifies for the partition");
    return all.front();
}

} // namespace

DimensionChoice select_dimension(const Instance& inst) {
    BalancedHypercube h(inst.n);
    if (inst.n < 3) throw Error("select_dimension: needs n >= 3");
    return select_dimension_raw(h, inst.faults, inst.prescribed);
}

int normalize_rotation(const std::array<int, 4>& loads) {
    int best = *std::max_element(loads.begin(), loads.end());
    for (int c = 0; c < 4; ++c)
        if (loads[static_cast<size_t>((4 - c) % 4)] == best) return c;
    return 0;
}

CaseFamily classify(const BlockData& bd) {
    if (bd.Fc.size() >= 2) return CaseFamily::FaultCrossing2;
    if (bd.Fc.size() == 1) return CaseFamily::FaultCrossing;
    if (bd.Lc.size() == 1) return CaseFamily::PrescribedCrossing;
    return CaseFamily::NoCrossing;
}

// ===========================================================================
// lemma-backed candidate searches
// ===========================================================================

namespace {

std::string ctx_str(const char* op, const PartitionView& view, int block) {
    std::ostringstream os;
    os << op << " in block " << block << " (n=" << view.host().n() << ", j=" << view.dimension()
       << ")";
    return os.str();
}

std::vector<Vertex> block_neighbors(const PartitionView& view, const Vertex& r) {
    std::vector<Vertex> out;
    for (const Vertex& w : view.host().neighbors(r))
        if (view.block_of(w) == view.block_of(r)) out.push_back(w);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

using detail::clear_of;

bool forest_with(const EdgeSet& base, const std::vector<Edge>& add) {
    EdgeSet all = base;
    for (const auto& e : add) all.push_back(e);
    sort_unique(all);
    if (all.size() != base.size() + add.size()) return false;
    try {
        LinearForest::validate(all);
        return true;
    } catch (const NotAForest&) {
        return false;
    }
}

} // namespace

Vertex pick_vertex_clear(const PartitionView& view, int block, Parity p, const EdgeSet& avoid_here,
                         const EdgeSet& avoid_next, const std::optional<Vertex>& excluded) {
    for (const Vertex& x : view.block_vertices(block)) {
        if (x.parity() != p) continue;
        if (excluded && *excluded == x) continue;
        if (!clear_of(avoid_here, x)) continue;
        auto cp = view.crossing_neighbors(x);
        if (!clear_of(avoid_next, cp[0]) || !clear_of(avoid_next, cp[1])) continue;
        return x;
    }
    throw NoCandidate(ctx_str("pick_vertex_clear", view, block));
}

EdgeOnPath pick_edge_on_path(const PartitionView& view, const Path& seq, bool is_cycle,
                             const EdgeSet& L_here, const EdgeSet& avoid_s_side,
                             const EdgeSet& avoid_t_side, bool strict,
                             const std::optional<Vertex>& excluded, EdgeOrient orient,
                             const EdgeSet* faults) {
    size_t m = seq.size();
    size_t steps = is_cycle ? m : m - 1;
    auto usable = [&](const Vertex& w, const Vertex& out, const EdgeSet& avoid) {
        if (!clear_of(avoid, out)) return false;
        if (faults && contains(*faults, Edge(view.host(), w, out))) return false;
        return true;
    };
    for (size_t i = 0; i < steps; ++i) {
        if (!is_cycle && (i == 0 || i + 2 == m)) continue; // keep path endpoints interior
        const Vertex& x = seq[i];
        const Vertex& y = seq[(i + 1) % m];
        if (orient == EdgeOrient::even_first && !x.even()) continue;
        if (orient == EdgeOrient::odd_first && x.even()) continue;
        const Vertex& s = x.even() ? x : y;
        const Vertex& t = x.even() ? y : x;
        if (excluded && (*excluded == s || *excluded == t)) continue;
        Edge e(view.host(), s, t);
        if (contains(L_here, e)) continue;
        auto sp = view.crossing_neighbors(s);
        auto tp = view.crossing_neighbors(t);
        if (strict) {
            if (!usable(s, sp[0], avoid_s_side) || !usable(s, sp[1], avoid_s_side)) continue;
            if (!usable(t, tp[0], avoid_t_side) || !usable(t, tp[1], avoid_t_side)) continue;
            return {s, t, sp[0], tp[0]};
        }
        int si = usable(s, sp[0], avoid_s_side) ? 0 : (usable(s, sp[1], avoid_s_side) ? 1 : -1);
        int ti = usable(t, tp[0], avoid_t_side) ? 0 : (usable(t, tp[1], avoid_t_side) ? 1 : -1);
        if (si < 0 || ti < 0) continue;
        return {s, t, sp[static_cast<size_t>(si)], tp[static_cast<size_t>(ti)]};
    }
    throw NoCandidate(
        ctx_str("pick_edge_on_path", view, seq.empty() ? -1 : view.block_of(seq.front())));
}

Vertex pick_vertex_unlinked(const PartitionView& view, int block, Parity p, const EdgeSet& L_here,
                            const EdgeSet& avoid_next, const Vertex& far_endpoint,
                            const std::optional<std::pair<Vertex, Vertex>>& pin) {
    for (const Vertex& x : view.block_vertices(block)) {
        if (x.parity() != p) continue;
        if (!clear_of(L_here, x)) continue;
        auto cp = view.crossing_neighbors(x);
        if (!clear_of(avoid_next, cp[0]) || !clear_of(avoid_next, cp[1])) continue;
        bool bad = false;
        for (const Vertex& c : cp)
            if (far_endpoint.size() == c.size() && view.block_of(far_endpoint) == view.block_of(c) &&
                view.host().adjacent(far_endpoint, c))
                bad = true;
        if (bad) continue;
        if (pin) {
            if (x == pin->first || x == pin->second) continue;
            const Vertex& near = p == Parity::Even ? pin->first : pin->second;
            for (const Vertex& c : cp)
                if (view.block_of(near) == view.block_of(c) && view.host().adjacent(near, c))
                    bad = true;
            if (bad) continue;
        }
        return x;
    }
    throw NoCandidate(ctx_str("pick_vertex_unlinked", view, block));
}

std::pair<Vertex, Vertex> pick_two_neighbors(const PartitionView& view, const Vertex& r,
                                             const EdgeSet& L_here, const EdgeSet& F_here,
                                             const EdgeSet& avoid_target) {
    auto nbrs = block_neighbors(view, r);
    auto ok_arm = [&](const Vertex& s) {
        Edge e(view.host(), r, s);
        if (contains(F_here, e) || contains(L_here, e)) return false;
        auto sp = view.crossing_neighbors(s);
        return clear_of(avoid_target, sp[0]) || clear_of(avoid_target, sp[1]);
    };
    for (const Vertex& s : nbrs) {
        if (!ok_arm(s)) continue;
        if (!forest_with(L_here, {Edge(view.host(), r, s)})) continue;
        for (const Vertex& t : nbrs) {
            if (t == s || !ok_arm(t)) continue;
            if (!forest_with(L_here, {Edge(view.host(), r, s), Edge(view.host(), r, t)})) continue;
            return {s, t};
        }
    }
    throw NoCandidate(ctx_str("pick_two_neighbors", view, view.block_of(r)));
}

Vertex pick_extension_neighbor(const PartitionView& view, const Vertex& r, const EdgeSet& L_here,
                               const EdgeSet& F_here, const Vertex& y, const Vertex& z,
                               const EdgeSet& target_forest, bool strengthened) {
    LinearForest Lf = LinearForest::validate(L_here);
    auto internal_in = [&](const Vertex& w) { return degree_in(target_forest, w) >= 2; };
    for (const Vertex& s : block_neighbors(view, r)) {
        Edge e(view.host(), r, s);
        if (contains(L_here, e) || contains(F_here, e)) continue;
        if (s == y || s == z) continue;
        if (!Lf.can_add(e)) continue;
        LinearForest ext = Lf.plus(e);
        if (!compatible(ext, y, z)) continue;
        auto sp = view.crossing_neighbors(s);
        bool ok = strengthened ? (clear_of(target_forest, sp[0]) || clear_of(target_forest, sp[1]))
                               : (!internal_in(sp[0]) || !internal_in(sp[1]));
        if (!ok) continue;
        return s;
    }
    throw NoCandidate(ctx_str("pick_extension_neighbor", view, view.block_of(r)));
}

std::pair<Vertex, Vertex> pick_detour_pair(const PartitionView& view, const Vertex& x,
                                           const EdgeSet& L_here, const EdgeSet& F_here,
                                           const Vertex& y, const Vertex& z, const EdgeSet& L_prev,
                                           const EdgeSet& F_prev) {
    EdgeSet avoid_prev = detail::merge(L_prev, F_prev);
    EdgeSet lifted = L_here;
    Edge xy(view.host(), x, y);
    lifted.erase(std::remove(lifted.begin(), lifted.end(), xy), lifted.end());

    auto nbrs = block_neighbors(view, x);
    for (const Vertex& s : nbrs) {
        if (s == y) continue;
        Edge es(view.host(), x, s);
        if (contains(F_here, es) || contains(lifted, es)) continue;
        auto sp = view.crossing_neighbors(s);
        if (!clear_of(avoid_prev, sp[0]) && !clear_of(avoid_prev, sp[1])) continue;
        if (!forest_with(lifted, {es})) continue;
        for (const Vertex& t : nbrs) {
            if (t == y || t == s) continue;
            if (t == view.host().shadow(s)) continue;
            Edge et(view.host(), x, t);
            if (contains(F_here, et) || contains(lifted, et)) continue;
            auto tp = view.crossing_neighbors(t);
            if (degree_in(L_prev, tp[0]) >= 2 && degree_in(L_prev, tp[1]) >= 2) continue;
            if (!forest_with(lifted, {es, et})) continue;
            LinearForest ext = LinearForest::validate(lifted).plus(es).plus(et);
            if (!compatible(ext, y, z)) continue;
            return {s, t};
        }
    }
    throw NoCandidate(ctx_str("pick_detour_pair", view, view.block_of(x)));
}

Vertex pick_crossing_neighbor(const PartitionView& view, const Vertex& anchor, const EdgeSet& L_here,
                              const EdgeSet& F_here, const Vertex& y, const EdgeSet& avoid_out) {
    LinearForest Lf = LinearForest::validate(L_here);
    for (const Vertex& z : block_neighbors(view, anchor)) {
        if (z == y) continue;
        Edge e(view.host(), anchor, z);
        if (contains(L_here, e) || contains(F_here, e)) continue;
        if (!Lf.can_add(e)) continue;
        auto zp = view.crossing_neighbors(z);
        if (!clear_of(avoid_out, zp[0]) && !clear_of(avoid_out, zp[1])) continue;
        return z;
    }
    throw NoCandidate(ctx_str("pick_crossing_neighbor", view, view.block_of(anchor)));
}

Vertex pick_crossing_neighbor_l0(const PartitionView& view, const Vertex& x, const EdgeSet& L0,
                                 const EdgeSet& F0, const Vertex& y, const EdgeSet& L3) {
    return pick_crossing_neighbor(view, x, L0, F0, y, L3);
}

std::pair<Vertex, Vertex> pick_branch_pair_l0(const PartitionView& view, const Vertex& x,
                                              const EdgeSet& L0, const EdgeSet& F0, const Vertex& y,
                                              const EdgeSet& L3) {
    EdgeSet lifted = L0;
    Edge xy(view.host(), x, y);
    lifted.erase(std::remove(lifted.begin(), lifted.end(), xy), lifted.end());
    auto nbrs = block_neighbors(view, x);
    for (const Vertex& s : nbrs) {
        if (s == y) continue;
        Edge es(view.host(), x, s);
        if (contains(F0, es) || contains(lifted, es)) continue;
        auto sp = view.crossing_neighbors(s);
        if (!clear_of(L3, sp[0]) || !clear_of(L3, sp[1])) continue;
        if (!forest_with(lifted, {es})) continue;
        for (const Vertex& t : nbrs) {
            if (t == y || t == s) continue;
            Edge et(view.host(), x, t);
            if (contains(F0, et) || contains(lifted, et)) continue;
            if (!forest_with(lifted, {es, et})) continue;
            return {s, t};
        }
    }
    throw NoCandidate(ctx_str("pick_branch_pair_l0", view, view.block_of(x)));
}

// ===========================================================================
// internal machinery out-of-line definitions
// ===========================================================================

namespace detail {

Path solve_block(const Frame& fr, int t, const EdgeSet& extraL, const Vertex& e1, const Vertex& e2) {
    t = (t % 4 + 4) % 4;
    int p = fr.phys(t);
    EdgeSet Lfull = merge(fr.Lb(t), extraL);
    if (static_cast<int>(Lfull.size() + fr.Fb(t).size()) > fr.sub_budget())
        throw PlanFail("block " + std::to_string(t) + " request exceeds the sub-budget");
    if (e1.parity() == e2.parity()) throw PlanFail("block endpoints share a parity");
    if (fr.view->block_of(e1) != p || fr.view->block_of(e2) != p)
        throw PlanFail("block endpoints outside the block");

    const auto& sub = fr.view->sub();
    EdgeSet subF = to_sub_edges(fr, fr.Fb(t));
    LinearForest subL;
    try {
        subL = LinearForest::validate(to_sub_edges(fr, Lfull));
    } catch (const NotAForest& e) {
        throw PlanFail(std::string("forced edges are not a forest: ") + e.what());
    }
    Vertex s1 = fr.view->to_sub(e1), s2 = fr.view->to_sub(e2);
    if (!compatible(subL, s1, s2))
        throw PlanFail("block endpoints " + e1.str() + "," + e2.str() +
                       " incompatible with the forest");

    Path sp;
    try {
        sp = construct_impl(sub, subF, subL, s1, s2, fr.lim, fr.depth + 1);
    } catch (const UnsupportedCase&) {
        if (sub.vertex_count() > 64) throw;
        auto res = ham_path(sub, subF, subL, s1, s2, fr.lim);
        if (res.out_of_budget()) throw SearchBudgetError("block oracle fallback ran out of budget");
        if (!res.found()) throw PlanFail("block oracle fallback found no path");
        sp = *res.value;
    }
    if (!(sp.front() == s1)) std::reverse(sp.begin(), sp.end());
    return from_sub_path(fr, p, sp);
}

std::pair<Path, Path> block_cover(const Frame& fr, int t, const EdgeSet& extraL, const Vertex& a,
                                  const Vertex& b, const Vertex& c, const Vertex& d) {
    t = (t % 4 + 4) % 4;
    if (fr.view->sub().vertex_count() > 64) throw PlanFail("two-path cover beyond desk scale");
    const auto& sub = fr.view->sub();
    EdgeSet subF = to_sub_edges(fr, fr.Fb(t));
    LinearForest subL = LinearForest::validate(to_sub_edges(fr, merge(fr.Lb(t), extraL)));
    Vertex sa = fr.view->to_sub(a), sb = fr.view->to_sub(b);
    Vertex sc = fr.view->to_sub(c), sd = fr.view->to_sub(d);
    if (sa.parity() == sb.parity() || sc.parity() == sd.parity())
        throw PlanFail("cover pairs must each join opposite parities");
    if (a == b || a == c || a == d || b == c || b == d || c == d)
        throw PlanFail("cover anchors collide");
    if (!sa.even()) std::swap(sa, sb);
    if (!sc.even()) std::swap(sc, sd);
    auto res = two_path_cover_general(sub, subF, subL, sa, sb, sc, sd, fr.lim);
    if (res.out_of_budget()) throw SearchBudgetError("two-path cover ran out of budget");
    if (!res.found()) throw PlanFail("no two-path cover for the requested anchors");
    Path p1 = from_sub_path(fr, fr.phys(t), res.value->first);
    Path p2 = from_sub_path(fr, fr.phys(t), res.value->second);
    auto fix = [&](Path& pp, const Vertex& from) {
        if (!(pp.front() == from)) std::reverse(pp.begin(), pp.end());
    };
    if (p1.front() == a || p1.back() == a) {
        fix(p1, a);
        fix(p2, c);
        return {p1, p2};
    }
    fix(p2, a);
    fix(p1, c);
    return {p2, p1};
}

Path block_minus(const Frame& fr, int t, const Vertex& deleted, const Vertex& e1, const Vertex& e2) {
    t = (t % 4 + 4) % 4;
    if (fr.view->sub().vertex_count() > 64) throw PlanFail("vertex-deleted path beyond desk scale");
    const auto& sub = fr.view->sub();
    EdgeSet subF = to_sub_edges(fr, fr.Fb(t));
    LinearForest subL = LinearForest::validate(to_sub_edges(fr, fr.Lb(t)));
    auto res = ham_path_minus_vertex_general(sub, subF, subL, fr.view->to_sub(deleted),
                                             fr.view->to_sub(e1), fr.view->to_sub(e2), fr.lim);
    if (res.out_of_budget()) throw SearchBudgetError("vertex-deleted search ran out of budget");
    if (!res.found()) throw PlanFail("no vertex-deleted path for the requested anchors");
    Path p = from_sub_path(fr, fr.phys(t), *res.value);
    if (!(p.front() == e1)) std::reverse(p.begin(), p.end());
    return p;
}

// Multi-deleted variant: the removed vertices (a consumed forest chain) are
// dropped together with their forest edges.
Path block_minus_set(const Frame& fr, int t, const std::vector<Vertex>& removed, const Vertex& e1,
                     const Vertex& e2) {
    t = (t % 4 + 4) % 4;
    if (fr.view->sub().vertex_count() > 64) throw PlanFail("vertex-deleted path beyond desk scale");
    const auto& sub = fr.view->sub();
    EdgeSet subF = to_sub_edges(fr, fr.Fb(t));
    EdgeSet keepL;
    for (const auto& e : fr.Lb(t)) {
        bool touched = false;
        for (const Vertex& r : removed)
            if (e.touches(r)) touched = true;
        if (!touched) keepL.push_back(e);
    }
    LinearForest subL = LinearForest::validate(to_sub_edges(fr, keepL));
    std::vector<Vertex> sub_removed;
    for (const Vertex& r : removed) sub_removed.push_back(fr.view->to_sub(r));
    auto res = ham_path_minus_set(sub, subF, subL, sub_removed, fr.view->to_sub(e1),
                                  fr.view->to_sub(e2), fr.lim);
    if (res.out_of_budget()) throw SearchBudgetError("vertex-deleted search ran out of budget");
    if (!res.found()) throw PlanFail("no set-deleted path for the requested anchors");
    Path p = from_sub_path(fr, fr.phys(t), *res.value);
    if (!(p.front() == e1)) std::reverse(p.begin(), p.end());
    return p;
}

Path block_cycle(const Frame& fr, int t) {
    t = (t % 4 + 4) % 4;
    const EdgeSet& Lb = fr.Lb(t);
    if (!Lb.empty()) {
        const Edge& closing = Lb.front();
        EdgeSet rest = Lb;
        rest.erase(rest.begin());
        if (static_cast<int>(rest.size() + fr.Fb(t).size()) <= fr.sub_budget()) {
            Frame tmp = fr;
            tmp.L[static_cast<size_t>(t)] = rest;
            Path p = solve_block(tmp, t, {}, closing.a(), closing.b());
            return p; // the closing edge is implicit between back() and front()
        }
    }
    if (fr.view->sub().vertex_count() > 64) throw PlanFail("block cycle beyond desk scale");
    const auto& sub = fr.view->sub();
    auto res = ham_cycle_through(sub, to_sub_edges(fr, fr.Fb(t)),
                                 LinearForest::validate(to_sub_edges(fr, Lb)), fr.lim);
    if (res.out_of_budget()) throw SearchBudgetError("block cycle ran out of budget");
    if (!res.found()) throw PlanFail("no hamiltonian cycle in the loaded block");
    return from_sub_path(fr, fr.phys(t), *res.value);
}


// pick_vertex_clear with a set of excluded vertices
Vertex pick_clear_multi(const PartitionView& view, int block, Parity p, const EdgeSet& avoid_here,
                        const EdgeSet& avoid_next, const std::vector<Vertex>& excl) {
    for (const Vertex& x : view.block_vertices(block)) {
        if (x.parity() != p) continue;
        if (std::find(excl.begin(), excl.end(), x) != excl.end()) continue;
        if (!clear_of(avoid_here, x)) continue;
        auto cp = view.crossing_neighbors(x);
        if (!clear_of(avoid_next, cp[0]) || !clear_of(avoid_next, cp[1])) continue;
        return x;
    }
    throw NoCandidate("pick_clear_multi in block " + std::to_string(block));
}

SplitOut anchored_split(const Frame& fr, int t, const EdgeSet& extraL, const Vertex& e1,
                        const Vertex& e2, const Vertex& anchor, const Vertex& side,
                        const EdgeSet& mate_avoid, const std::vector<Vertex>& mate_excl) {
    if (anchor == e1 || anchor == e2)
        throw PlanFail("anchored_split: anchor " + anchor.str() + " is an endpoint of [" +
                       e1.str() + "," + e2.str() + "]");
    EdgeSet Lall = merge(fr.Lb(t), extraL);

    std::string plain_err;
    try {
        Path p = solve_block(fr, t, extraL, e1, e2);
        Vertex mate = nbr_toward(p, anchor, side);
        Edge cut(fr.view->host(), anchor, mate);
        if (contains(Lall, cut)) throw PlanFail("anchored_split: cut edge is forced");
        auto po = partner_opt(fr, mate, mate_avoid, mate_excl);
        if (!po) throw PlanFail("anchored_split: mate has no clear partner");
        auto [pa, pm] = cut_edge(p, anchor, mate);
        return {std::move(pa), std::move(pm), mate, *po};
    } catch (const PlanFail& e) {
        plain_err = e.what();
    }

    if (fr.load(t) + static_cast<int>(extraL.size()) + 2 > fr.sub_budget())
        throw PlanFail(std::string("anchored_split: ") + plain_err + "; fork unaffordable");
    auto [f1, f2] = pick_two_neighbors(*fr.view, anchor, Lall, fr.Fb(t), mate_avoid);
    EdgeSet extra2 = extraL;
    extra2.emplace_back(fr.view->host(), anchor, f1);
    extra2.emplace_back(fr.view->host(), anchor, f2);
    sort_unique(extra2);
    Path p = solve_block(fr, t, extra2, e1, e2);
    Vertex mate = nbr_toward(p, anchor, side);
    if (!(mate == f1 || mate == f2)) throw PlanFail("anchored_split: fork arms went astray");
    auto po = partner_opt(fr, mate, mate_avoid, mate_excl);
    if (!po) throw PlanFail("anchored_split: fork mate has no clear partner");
    auto [pa, pm] = cut_edge(p, anchor, mate);
    return {std::move(pa), std::move(pm), mate, *po};
}

Heavy make_heavy(const Frame& fr) {
    Heavy hv;
    int load0 = fr.load(0);
    if (load0 == 2 * fr.n - 3) {
        try {
            hv.is_cycle = true;
            hv.body = block_cycle(fr, 0);
            return hv;
        } catch (const PlanFail&) {
            // no H-cycle (a block vertex may have lost too many edges);
            // withhold one fault, close a cycle without it and drop the
            // fault edge if it landed on the cycle
            const EdgeSet& F0 = fr.Fb(0);
            for (size_t fi = 0; fi < F0.size(); ++fi) {
                Frame tr = fr;
                EdgeSet rest = F0;
                Edge f = rest[fi];
                rest.erase(rest.begin() + static_cast<long>(fi));
                tr.F[0] = rest;
                Path cyc;
                try {
                    cyc = block_cycle(tr, 0);
                } catch (const PlanFail&) {
                    continue;
                }
                bool f_on = false;
                for (size_t i = 0; i < cyc.size(); ++i)
                    if (Edge(fr.view->host(), cyc[i], cyc[(i + 1) % cyc.size()]) == f) f_on = true;
                if (!f_on) {
                    hv.is_cycle = true;
                    hv.body = cyc;
                    return hv;
                }
                hv.is_cycle = false;
                hv.body = open_cycle(cyc, f.a(), f.b());
                hv.pa = fr.log_even(hv.body.front()) ? hv.body.front() : hv.body.back();
                hv.pb = fr.log_even(hv.body.front()) ? hv.body.back() : hv.body.front();
                if (!(hv.body.front() == hv.pa)) std::reverse(hv.body.begin(), hv.body.end());
                return hv;
            }
            throw;
        }
    }
    hv.is_cycle = false;
    if (!fr.Fb(0).empty()) {
        auto res = hpath_from_faulty_block(*fr.view, fr.phys(0), fr.Lb(0), fr.Fb(0), fr.lim);
        hv.body = res.path;
    } else {
        // fully prescribed block: solver realization of the prescribed
        // laceability import
        if (fr.view->sub().vertex_count() > 64) throw PlanFail("heavy block beyond desk scale");
        const auto& sub = fr.view->sub();
        LinearForest subL = LinearForest::validate(to_sub_edges(fr, fr.Lb(0)));
        Path found;
        for (const Vertex& sv : sub.vertices()) {
            if (!sv.even() || subL.internal(sv)) continue;
            for (const Vertex& sw : sub.vertices()) {
                if (sw.even() || subL.internal(sw)) continue;
                if (!compatible(subL, sv, sw)) continue;
                auto res = ham_path(sub, {}, subL, sv, sw, fr.lim);
                if (res.found()) {
                    found = *res.value;
                    break;
                }
            }
            if (!found.empty()) break;
        }
        if (found.empty()) throw PlanFail("no path through the fully prescribed block");
        hv.body = from_sub_path(fr, fr.phys(0), found);
    }
    hv.pa = fr.log_even(hv.body.front()) ? hv.body.front() : hv.body.back();
    hv.pb = fr.log_even(hv.body.front()) ? hv.body.back() : hv.body.front();
    if (!(hv.body.front() == hv.pa)) std::reverse(hv.body.begin(), hv.body.end());
    return hv;
}

std::optional<Vertex> free_body_nbr(const Frame& fr, const Heavy& hv, const Vertex& w,
                                    const std::vector<Vertex>& avoid_mate) {
    std::vector<Vertex> cands;
    if (hv.is_cycle) {
        auto nn = cycle_nbrs(hv.body, w);
        cands = {nn[0], nn[1]};
    } else {
        size_t i = pos_of(hv.body, w);
        if (i > 0) cands.push_back(hv.body[i - 1]);
        if (i + 1 < hv.body.size()) cands.push_back(hv.body[i + 1]);
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (const Vertex& c : cands) {
        if (std::find(avoid_mate.begin(), avoid_mate.end(), c) != avoid_mate.end()) continue;
        Edge e(fr.view->host(), w, c);
        if (contains(fr.Lb(0), e)) continue;
        return c;
    }
    return std::nullopt;
}

} // namespace detail

// ===========================================================================
// spec-level block operations
// ===========================================================================

Path hcycle_block(const PartitionView& view, int t, const EdgeSet& L_blk, const EdgeSet& F_blk,
                  const SearchLimits& lim) {
    int host_n = view.host().n();
    if (static_cast<int>(L_blk.size() + F_blk.size()) != 2 * host_n - 3)
        throw Error("hcycle_block: needs |L u F| = 2n-3");
    if (L_blk.empty()) throw Error("hcycle_block: needs a prescribed edge to close the cycle");
    BlockData bd;
    bd.L[static_cast<size_t>(t)] = L_blk;
    bd.F[static_cast<size_t>(t)] = F_blk;
    detail::Frame fr = detail::make_frame(view, bd, t, 1, bd.F[static_cast<size_t>(t)], host_n, lim, 0);
    return detail::block_cycle(fr, 0);
}

BlockPathResult hpath_from_faulty_block(const PartitionView& view, int t, const EdgeSet& L_blk,
                                        const EdgeSet& F_blk, const SearchLimits& lim) {
    int host_n = view.host().n();
    if (static_cast<int>(L_blk.size() + F_blk.size()) != 2 * host_n - 2)
        throw Error("hpath_from_faulty_block: needs |L u F| = 2n-2");
    if (F_blk.empty()) throw Error("hpath_from_faulty_block: needs a fault to withhold");

    Edge f = F_blk.front();
    EdgeSet rest = F_blk;
    rest.erase(rest.begin());
    Path cyc;
    {
        BlockData bd;
        bd.L[static_cast<size_t>(t)] = L_blk;
        bd.F[static_cast<size_t>(t)] = rest;
        detail::Frame fr =
            detail::make_frame(view, bd, t, 1, bd.F[static_cast<size_t>(t)], host_n, lim, 0);
        cyc = detail::block_cycle(fr, 0);
    }

    auto on_cycle = [&](const Edge& e) {
        size_t m = cyc.size();
        for (size_t i = 0; i < m; ++i)
            if (Edge(view.host(), cyc[i], cyc[(i + 1) % m]) == e) return true;
        return false;
    };
    Edge drop = f;
    if (!on_cycle(f)) {
        bool found = false;
        size_t m = cyc.size();
        for (size_t i = 0; i < m && !found; ++i) {
            Edge step(view.host(), cyc[i], cyc[(i + 1) % m]);
            if (!contains(L_blk, step)) {
                drop = step;
                found = true;
            }
        }
        if (!found) throw ConstructionFailure("hpath_from_faulty_block: cycle is fully prescribed");
    }
    Path p = detail::open_cycle(cyc, drop.a(), drop.b());
    BlockPathResult out;
    out.a = p.front().even() ? p.front() : p.back();
    out.b = p.front().even() ? p.back() : p.front();
    if (!(p.front() == out.a)) std::reverse(p.begin(), p.end());
    out.path = std::move(p);
    return out;
}

// ===========================================================================
// light-bucket splice plans (all block loads within the sub-budget)
// ===========================================================================

namespace detail {

namespace {

// d == 0: cyclic chain with the split in block 0 (main-1 case 1 shape).
Path plan_same_block(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    auto pin = frame_pin(fr);
    const auto& view = *fr.view;
    const auto& h = view.host();

    Vertex a, b, a_out, b_out; // block-0 hooks: a up into 1, b down into 3
    Path p0;
    if (pin && (pin->l == 0 || pin->l == 3)) {
        const Vertex anchor = pin->l == 0 ? pin->xe : pin->xo;
        const EdgeSet avoid = pin->l == 0 ? fr.LF(3) : fr.LF(1);
        if (anchor == ue || anchor == vo) throw PlanFail("pin endpoint coincides with a path endpoint");
        std::optional<Vertex> mate;
        if (fr.load(0) + 1 <= fr.sub_budget()) {
            Vertex y = pick_extension_neighbor(view, anchor, fr.Lb(0), fr.Fb(0), ue, vo, avoid, true);
            p0 = solve_block(fr, 0, {Edge(h, anchor, y)}, ue, vo);
            mate = y;
        } else {
            p0 = solve_block(fr, 0, {}, ue, vo);
            for (const Vertex& cand : {nbr_toward(p0, anchor, vo), nbr_toward(p0, anchor, ue)}) {
                Edge e(h, anchor, cand);
                if (contains(fr.Lb(0), e)) continue;
                if (partner_opt(fr, cand, avoid, {})) {
                    mate = cand;
                    break;
                }
            }
            if (!mate) throw PlanFail("no free path edge at the pin endpoint");
        }
        if (pin->l == 0) {
            a = pin->xe;
            b = *mate;
            a_out = pin->xo;
            b_out = partner(fr, b, avoid);
        } else {
            b = pin->xo;
            a = *mate;
            b_out = pin->xe;
            a_out = partner(fr, a, avoid);
        }
    } else {
        p0 = solve_block(fr, 0, {}, ue, vo);
        auto hp = orient(fr, pick_edge_on_path(view, p0, false, fr.Lb(0), fr.LF(fr.sig > 0 ? 1 : 3),
                                               fr.LF(fr.sig > 0 ? 3 : 1), false, std::nullopt,
                                               EdgeOrient::any, fr.all_faults));
        a = hp.ae;
        b = hp.bo;
        a_out = hp.ae_out;
        b_out = hp.bo_out;
    }

    Vertex i1 = a_out;
    Vertex w1 = (pin && pin->l == 1)
                    ? pin->xe
                    : pick_vertex_clear(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2), i1);
    if (!compatible(LinearForest::validate(fr.Lb(1)), i1, w1))
        throw PlanFail("block-1 endpoints incompatible");
    Path p1 = solve_block(fr, 1, {}, i1, w1);
    Vertex i2 = (pin && pin->l == 1) ? pin->xo : partner(fr, w1, fr.LF(2));
    Vertex w2 = (pin && pin->l == 2)
                    ? pin->xe
                    : pick_vertex_clear(view, fr.phys(2), fr.want(true), fr.Lb(2), fr.LF(3), i2);
    if (!compatible(LinearForest::validate(fr.Lb(2)), i2, w2))
        throw PlanFail("block-2 endpoints incompatible");
    Path p2 = solve_block(fr, 2, {}, i2, w2);
    Vertex i3 = (pin && pin->l == 2) ? pin->xo : partner(fr, w2, fr.LF(3), {b_out});
    if (i3 == b_out) throw PlanFail("block-3 entries collide");
    if (!compatible(LinearForest::validate(fr.Lb(3)), i3, b_out))
        throw PlanFail("block-3 endpoints incompatible");
    Path p3 = solve_block(fr, 3, {}, i3, b_out);

    auto [s0a, s0b] = cut_edge(p0, a, b);
    Weave wv;
    wv.seg(s0a);
    wv.seg(s0b);
    wv.seg(p1);
    wv.seg(p2);
    wv.seg(p3);
    wv.link(a, a_out);
    wv.link(w1, i2);
    wv.link(w2, i3);
    wv.link(b_out, b);
    return wv.assemble(h, ue, vo);
}

// d == 1: descending chain 0 -> 3 -> 2 -> 1 (main-2 case 1.1 shape).
Path plan_chain(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    auto pin = frame_pin(fr);
    const auto& view = *fr.view;
    if (pin && pin->l == 0) throw PlanFail("chain cannot host a pin between blocks 0 and 1");

    Vertex x, x_out;
    if (pin && pin->l == 3) {
        x = pin->xo;
        x_out = pin->xe;
    } else {
        x = pick_vertex_clear(view, fr.phys(0), fr.want(false), fr.Lb(0), fr.LF(3), std::nullopt);
        x_out = partner(fr, x, fr.LF(3));
    }
    if (x == ue) throw PlanFail("exit pick hit the endpoint");
    if (!compatible(LinearForest::validate(fr.Lb(0)), ue, x)) throw PlanFail("exit incompatible");
    Path p0 = solve_block(fr, 0, {}, ue, x);

    Vertex q, q_out;
    if (pin && pin->l == 2) {
        q = pin->xo;
        q_out = pin->xe;
    } else {
        q = pick_vertex_clear(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2), x_out);
        q_out = partner(fr, q, fr.LF(2));
    }
    if (q == x_out) throw PlanFail("block-3 anchors collide");
    if (!compatible(LinearForest::validate(fr.Lb(3)), x_out, q))
        throw PlanFail("block-3 endpoints incompatible");
    Path p3 = solve_block(fr, 3, {}, x_out, q);

    Vertex r, r_out;
    if (pin && pin->l == 1) {
        r = pin->xo;
        r_out = pin->xe;
    } else {
        r = pick_vertex_clear(view, fr.phys(2), fr.want(false), fr.Lb(2), fr.LF(1), q_out);
        r_out = partner(fr, r, fr.LF(1), {vo});
    }
    if (r == q_out || r_out == vo) throw PlanFail("chain landing collides");
    if (!compatible(LinearForest::validate(fr.Lb(2)), q_out, r))
        throw PlanFail("block-2 endpoints incompatible");
    Path p2 = solve_block(fr, 2, {}, q_out, r);
    if (!compatible(LinearForest::validate(fr.Lb(1)), r_out, vo))
        throw PlanFail("chain landing incompatible with the final block forest");
    Path p1 = solve_block(fr, 1, {}, r_out, vo);

    Weave wv;
    wv.seg(p0);
    wv.seg(p3);
    wv.seg(p2);
    wv.seg(p1);
    wv.link(x, x_out);
    wv.link(q, q_out);
    wv.link(r, r_out);
    return wv.assemble(view.host(), ue, vo);
}

// Shared by the d == 2 and d == 3 shapes: block-0 path u -> x with a cut
// edge (a,b); a hooks up into block 1, b and x hook down into block 3.
struct Block0Split {
    Path p0;
    Vertex x, x_out, a, b, a_out, b_out;
};

Block0Split split_block0(const Frame& fr, const Vertex& ue, const Vertex& vo,
                         const std::optional<PinInfo>& pin) {
    const auto& view = *fr.view;
    const auto& h = view.host();
    Block0Split out;
    if (pin && pin->l == 3) {
        out.x = pin->xo;
        out.x_out = pin->xe;
    } else {
        out.x = pick_vertex_clear(view, fr.phys(0), fr.want(false), fr.Lb(0), fr.LF(3), std::nullopt);
        out.x_out = partner(fr, out.x, fr.LF(3), {vo});
    }
    if (out.x == ue || out.x_out == vo) throw PlanFail("block-0 exit unusable");
    if (!compatible(LinearForest::validate(fr.Lb(0)), ue, out.x)) throw PlanFail("exit incompatible");
    out.p0 = solve_block(fr, 0, {}, ue, out.x);

    if (pin && pin->l == 0) {
        const Vertex& xe = pin->xe;
        if (xe == ue) throw PlanFail("pin at the even endpoint");
        // the mate must sit on the x side so the even hook faces u
        std::optional<Vertex> mate;
        {
            Vertex cand = nbr_toward(out.p0, xe, out.x);
            Edge e(h, xe, cand);
            if (!contains(fr.Lb(0), e) && !(cand == out.x) &&
                partner_opt(fr, cand, fr.LF(3), {out.x_out}))
                mate = cand;
        }
        if (!mate && fr.load(0) + 1 <= fr.sub_budget()) {
            // force a screened edge at the pin endpoint and accept it only
            // when it comes out oriented toward x
            Vertex y = pick_extension_neighbor(view, xe, fr.Lb(0), fr.Fb(0), ue, out.x, fr.LF(3),
                                               true);
            out.p0 = solve_block(fr, 0, {Edge(h, xe, y)}, ue, out.x);
            if (nbr_toward(out.p0, xe, out.x) == y &&
                partner_opt(fr, y, fr.LF(3), {out.x_out}))
                mate = y;
        }
        if (!mate) throw PlanFail("no usable path edge at the pin endpoint");
        out.a = xe;
        out.b = *mate;
        out.a_out = pin->xo;
        out.b_out = partner(fr, out.b, fr.LF(3), {out.x_out});
    } else {
        // the even hook must sit on the u side of the cut for the chain to
        // close
        EdgeOrient need = fr.sig > 0 ? EdgeOrient::even_first : EdgeOrient::odd_first;
        auto hp = orient(fr, pick_edge_on_path(view, out.p0, false, fr.Lb(0),
                                               fr.LF(fr.sig > 0 ? 1 : 3), fr.LF(fr.sig > 0 ? 3 : 1),
                                               false, std::nullopt, need, fr.all_faults));
        out.a = hp.ae;
        out.b = hp.bo;
        out.a_out = hp.ae_out;
        out.b_out = hp.bo_out;
        if (out.b_out == out.x_out) {
            auto alt = partner_opt(fr, out.b, fr.LF(3), {out.x_out});
            if (!alt) throw PlanFail("block-3 entries collide");
            out.b_out = *alt;
        }
    }
    return out;
}

// d == 3: anchored-split chain (main-2 case 1.3 shape).
Path plan_anchored(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    auto pin = frame_pin(fr);
    const auto& view = *fr.view;
    if (pin && pin->l == 2) {
        // the pin enters v's block from block 2: cover block 3 over the pin
        auto b0 = split_block0(fr, ue, vo, std::nullopt);
        if (pin->xo == b0.x_out || pin->xo == b0.b_out || pin->xo == vo)
            throw PlanFail("pin collides with the block-3 anchors");
        auto [c1, c2] = block_cover(fr, 3, {}, b0.b_out, pin->xo, b0.x_out, vo);
        Vertex ch = pick_vertex_clear(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2),
                                      b0.a_out);
        if (!compatible(LinearForest::validate(fr.Lb(1)), b0.a_out, ch))
            throw PlanFail("block-1 endpoints incompatible");
        Path p1 = solve_block(fr, 1, {}, b0.a_out, ch);
        Vertex ch_out = partner(fr, ch, fr.LF(2), {pin->xe});
        if (ch_out == pin->xe) throw PlanFail("block-2 entries collide");
        if (!compatible(LinearForest::validate(fr.Lb(2)), ch_out, pin->xe))
            throw PlanFail("block-2 endpoints incompatible");
        Path p2 = solve_block(fr, 2, {}, ch_out, pin->xe);
        auto [s0a, s0b] = cut_edge(b0.p0, b0.a, b0.b);
        Weave wv;
        wv.seg(s0a);
        wv.seg(s0b);
        wv.seg(p1);
        wv.seg(p2);
        wv.seg(c1);
        wv.seg(c2);
        wv.link(b0.a, b0.a_out);
        wv.link(ch, ch_out);
        wv.link(pin->xe, pin->xo);
        wv.link(b0.x, b0.x_out);
        wv.link(b0.b_out, b0.b);
        return wv.assemble(view.host(), ue, vo);
    }

    auto b0 = split_block0(fr, ue, vo, pin);

    if (!compatible(LinearForest::validate(fr.Lb(3)), b0.b_out, vo))
        throw PlanFail("block-3 endpoints incompatible");
    auto sp3 = anchored_split(fr, 3, {}, b0.b_out, vo, b0.x_out, b0.b_out, fr.LF(2));

    Vertex c = (pin && pin->l == 1)
                   ? pin->xe
                   : pick_vertex_clear(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2), b0.a_out);
    if (!compatible(LinearForest::validate(fr.Lb(1)), b0.a_out, c))
        throw PlanFail("block-1 endpoints incompatible");
    Path p1 = solve_block(fr, 1, {}, b0.a_out, c);
    Vertex c_out = (pin && pin->l == 1) ? pin->xo : partner(fr, c, fr.LF(2), {sp3.mate_out});
    if (c_out == sp3.mate_out) throw PlanFail("block-2 entries collide");

    if (!compatible(LinearForest::validate(fr.Lb(2)), c_out, sp3.mate_out))
        throw PlanFail("block-2 endpoints incompatible");
    Path p2 = solve_block(fr, 2, {}, c_out, sp3.mate_out);

    auto [s0a, s0b] = cut_edge(b0.p0, b0.a, b0.b);
    Weave wv;
    wv.seg(s0a);
    wv.seg(s0b);
    wv.seg(p1);
    wv.seg(p2);
    wv.seg(sp3.piece_anchor);
    wv.seg(sp3.piece_mate);
    wv.link(b0.a, b0.a_out);
    wv.link(c, c_out);
    wv.link(sp3.mate, sp3.mate_out);
    wv.link(b0.x, b0.x_out);
    wv.link(b0.b_out, b0.b);
    return wv.assemble(view.host(), ue, vo);
}

// d == 2: double-split chain (main-2 case 1.2 shape).
Path plan_double(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    auto pin = frame_pin(fr);
    const auto& view = *fr.view;
    if (pin && pin->l == 1) throw PlanFail("double-split cannot host a pin between blocks 1 and 2");

    auto b0 = split_block0(fr, ue, vo, pin);

    Vertex z;
    if (pin && pin->l == 2) {
        z = pin->xo;
        if (z == b0.x_out || z == b0.b_out) throw PlanFail("pin collides with block-3 entries");
    } else {
        std::optional<Vertex> zz;
        try {
            zz = pick_vertex_unlinked(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2), vo,
                                      std::nullopt);
        } catch (const NoCandidate&) {
        }
        if (!zz || *zz == b0.x_out || *zz == b0.b_out)
            zz = pick_vertex_clear(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2),
                                   zz ? std::optional<Vertex>(*zz) : std::nullopt);
        z = *zz;
        if (z == b0.x_out || z == b0.b_out) throw PlanFail("block-3 anchors collide");
    }
    if (!compatible(LinearForest::validate(fr.Lb(3)), b0.x_out, z))
        throw PlanFail("block-3 endpoints incompatible");
    std::optional<SplitOut> sp3o;
    std::vector<Vertex> ztried;
    for (int tries = 0; tries < 3; ++tries) {
        try {
            sp3o = anchored_split(fr, 3, {}, b0.x_out, z, b0.b_out, b0.x_out, fr.LF(2));
            break;
        } catch (const PlanFail&) {
            if (pin && pin->l == 2) throw; // z pinned: nothing to vary
            ztried.push_back(z);
            std::vector<Vertex> excl = {b0.x_out, b0.b_out};
            for (const Vertex& zz : ztried) excl.push_back(zz);
            z = pick_clear_multi(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2), excl);
            if (!compatible(LinearForest::validate(fr.Lb(3)), b0.x_out, z))
                throw PlanFail("block-3 endpoints incompatible");
        }
    }
    if (!sp3o) throw PlanFail("block-3 split exhausted");
    auto sp3 = *sp3o;
    Vertex z_out = (pin && pin->l == 2) ? pin->xe : partner(fr, z, fr.LF(2), {sp3.mate_out, vo});
    if (z_out == sp3.mate_out || z_out == vo) throw PlanFail("block-2 entries collide");

    if (!compatible(LinearForest::validate(fr.Lb(2)), sp3.mate_out, vo))
        throw PlanFail("block-2 endpoints incompatible");
    auto sp2 = anchored_split(fr, 2, {}, sp3.mate_out, vo, z_out, sp3.mate_out, fr.LF(1));
    if (sp2.mate_out == b0.a_out) throw PlanFail("block-1 entries collide");
    if (!compatible(LinearForest::validate(fr.Lb(1)), b0.a_out, sp2.mate_out))
        throw PlanFail("block-1 endpoints incompatible");
    Path p1 = solve_block(fr, 1, {}, b0.a_out, sp2.mate_out);

    auto [s0a, s0b] = cut_edge(b0.p0, b0.a, b0.b);
    Weave wv;
    wv.seg(s0a);
    wv.seg(s0b);
    wv.seg(sp3.piece_anchor);
    wv.seg(sp3.piece_mate);
    wv.seg(sp2.piece_anchor);
    wv.seg(sp2.piece_mate);
    wv.seg(p1);
    wv.link(b0.a, b0.a_out);
    wv.link(sp2.mate, sp2.mate_out);
    wv.link(sp3.mate, sp3.mate_out);
    wv.link(z, z_out);
    wv.link(b0.x, b0.x_out);
    wv.link(b0.b_out, b0.b);
    return wv.assemble(view.host(), ue, vo);
}

} // namespace

// The pin leaves the even endpoint's own block (but not from the endpoint):
// cut the block-0 spine at the pin's even end and route both dangling pieces
// through covers in the outer blocks. Covers the chain/double/anchored pin
// slots that the plain shapes cannot carry.
Path plan_pin_at_u_block(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    auto pin = frame_pin(fr);
    if (!pin || pin->l != 0) throw PlanFail("pin does not leave block 0");
    const auto& view = *fr.view;
    const Vertex xe = pin->xe, xo = pin->xo;
    if (xe == ue) throw PlanFail("pin endpoint coincides with a path endpoint");
    const int d = fr.log_block(vo);
    if (d == 0) throw PlanFail("same-block placements use the ring shape");

    Path piece_a, piece_m; // [ue .. xe], [m .. xh]; m hangs down into block 3
    Vertex xh, xh_out, mate, mate_out;
    if (fr.load(0) <= fr.sub_budget()) {
        xh = pick_vertex_clear(view, fr.phys(0), fr.want(false), fr.Lb(0), fr.LF(3), std::nullopt);
        if (xh == xo) throw PlanFail("block-0 exit hits the pin");
        if (!compatible(LinearForest::validate(fr.Lb(0)), ue, xh))
            throw PlanFail("exit incompatible");
        xh_out = partner(fr, xh, fr.LF(3), {vo});
        Path p0 = solve_block(fr, 0, {}, ue, xh);
        std::optional<Vertex> m;
        std::optional<Vertex> po;
        for (const Vertex& cand : {nbr_toward(p0, xe, xh), nbr_toward(p0, xe, ue)}) {
            Edge e(view.host(), xe, cand);
            if (contains(fr.Lb(0), e) || cand == xh || cand == ue) continue;
            po = partner_opt(fr, cand, fr.LF(3), {xh_out});
            if (po) {
                m = cand;
                break;
            }
        }
        if (!m) throw PlanFail("no usable path edge at the pin endpoint");
        auto [pa, pm] = cut_edge(p0, xe, *m);
        piece_a = pa;
        piece_m = pm;
        mate = *m;
        mate_out = *po;
    } else {
        // heavy block 0: cut its covering cycle beside u and at the pin end
        Heavy hv = make_heavy(fr);
        if (!hv.is_cycle) throw PlanFail("pin with a fully loaded block");
        auto xx = free_body_nbr(fr, hv, ue, {xe});
        if (!xx) throw PlanFail("no free cycle edge at the endpoint");
        xh = *xx;
        xh_out = partner(fr, xh, fr.LF(3), {vo});
        Path body = open_cycle(hv.body, ue, xh);
        std::reverse(body.begin(), body.end()); // u .. xh
        std::optional<Vertex> m;
        std::optional<Vertex> po;
        for (const Vertex& cand : {nbr_toward(body, xe, xh), nbr_toward(body, xe, ue)}) {
            if (contains(fr.Lb(0), Edge(view.host(), xe, cand))) continue;
            po = partner_opt(fr, cand, fr.LF(3), {xh_out});
            if (po) {
                m = cand;
                break;
            }
        }
        if (!m) throw PlanFail("no usable cycle edge at the pin endpoint");
        auto [pa, pm] = cut_edge(body, xe, *m);
        piece_a = pa;
        piece_m = pm;
        mate = *m;
        mate_out = *po;
    }
    Weave wv;
    wv.seg(piece_a);
    wv.seg(piece_m);
    wv.link(xe, xo);
    wv.link(xh, xh_out);
    wv.link(mate, mate_out);

    if (d == 3) {
        Vertex q = pick_clear_multi(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2),
                                    {xh_out, mate_out, vo});
        if (vo == xh_out || vo == mate_out) throw PlanFail("block-3 anchors collide");
        Vertex q_out = partner(fr, q, fr.LF(2));
        Vertex r = pick_vertex_clear(view, fr.phys(2), fr.want(false), fr.Lb(2), fr.LF(1), q_out);
        Path p2 = solve_block(fr, 2, {}, q_out, r);
        Vertex r_out = partner(fr, r, fr.LF(1), {xo});
        if (r_out == xo) throw PlanFail("block-1 entries collide");
        if (!compatible(LinearForest::validate(fr.Lb(1)), r_out, xo))
            throw PlanFail("block-1 endpoints incompatible");
        Path p1 = solve_block(fr, 1, {}, r_out, xo);
        std::string why3;
        for (int pairing = 0; pairing < 2; ++pairing) {
            try {
                Weave w2 = wv;
                auto [c1, c2] = pairing == 0 ? block_cover(fr, 3, {}, xh_out, q, mate_out, vo)
                                             : block_cover(fr, 3, {}, mate_out, q, xh_out, vo);
                w2.seg(c1);
                w2.seg(c2);
                w2.seg(p2);
                w2.seg(p1);
                w2.link(q, q_out);
                w2.link(r, r_out);
                return w2.assemble(view.host(), ue, vo);
            } catch (const PlanFail& e) {
                why3 = e.what();
            }
        }
        throw PlanFail(std::string("pin-at-u (0,3) exhausted: ") + why3);
    }

    Vertex q1 = pick_clear_multi(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2),
                                 {xh_out, mate_out});
    Vertex q2 = pick_clear_multi(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2),
                                 {xh_out, mate_out, q1});
    auto [c1, c2] = block_cover(fr, 3, {}, xh_out, q1, mate_out, q2);
    Vertex q1o = partner(fr, q1, fr.LF(2), {vo});
    Vertex q2o = partner(fr, q2, fr.LF(2), {vo, q1o});
    wv.seg(c1);
    wv.seg(c2);
    wv.link(q1, q1o);
    wv.link(q2, q2o);

    if (d == 2) {
        Vertex rr = pick_clear_multi(view, fr.phys(2), fr.want(false), fr.Lb(2), fr.LF(1),
                                     {q1o, q2o, vo});
        if (vo == q1o || vo == q2o) throw PlanFail("block-2 anchors collide");
        Vertex rr_out = partner(fr, rr, fr.LF(1), {xo});
        if (rr_out == xo) throw PlanFail("block-1 entries collide");
        if (!compatible(LinearForest::validate(fr.Lb(1)), rr_out, xo))
            throw PlanFail("block-1 endpoints incompatible");
        Path p1 = solve_block(fr, 1, {}, rr_out, xo);
        std::string why2;
        for (int pairing = 0; pairing < 2; ++pairing) {
            try {
                Weave w2 = wv;
                auto [k1, k2] = pairing == 0 ? block_cover(fr, 2, {}, q1o, rr, q2o, vo)
                                             : block_cover(fr, 2, {}, q2o, rr, q1o, vo);
                w2.seg(k1);
                w2.seg(k2);
                w2.seg(p1);
                w2.link(rr, rr_out);
                return w2.assemble(view.host(), ue, vo);
            } catch (const PlanFail& e) {
                why2 = e.what();
            }
        }
        throw PlanFail(std::string("pin-at-u (0,2) exhausted: ") + why2);
    }

    // d == 1: two block-2 pass-throughs, then a block-1 cover holding v and xo
    Vertex r1 = pick_clear_multi(view, fr.phys(2), fr.want(false), fr.Lb(2), fr.LF(1), {q1o, q2o});
    Vertex r2 = pick_clear_multi(view, fr.phys(2), fr.want(false), fr.Lb(2), fr.LF(1),
                                 {q1o, q2o, r1});
    auto [k1, k2] = block_cover(fr, 2, {}, q1o, r1, q2o, r2);
    Vertex r1o = partner(fr, r1, fr.LF(1), {xo, vo});
    Vertex r2o = partner(fr, r2, fr.LF(1), {xo, vo, r1o});
    std::string why1;
    for (int pairing = 0; pairing < 2; ++pairing) {
        try {
            Weave w2 = wv;
            auto [m1, m2] = pairing == 0 ? block_cover(fr, 1, {}, r1o, xo, r2o, vo)
                                         : block_cover(fr, 1, {}, r2o, xo, r1o, vo);
            w2.seg(k1);
            w2.seg(k2);
            w2.seg(m1);
            w2.seg(m2);
            w2.link(r1, r1o);
            w2.link(r2, r2o);
            return w2.assemble(view.host(), ue, vo);
        } catch (const PlanFail& e) {
            why1 = e.what();
        }
    }
    throw PlanFail(std::string("pin-at-u (0,1) exhausted: ") + why1);
}

Path plan_all_small(Frame fr, const Vertex& u, const Vertex& v) {
    Vertex ue = fr.log_even(u) ? u : v;
    Vertex vo = fr.log_even(u) ? v : u;
    fr = fr.rotated_to(ue);
    for (int t = 0; t < 4; ++t)
        if (fr.load(t) > fr.sub_budget()) throw PlanFail("a block exceeds the light-bucket budget");
    auto pin = frame_pin(fr);
    int d = fr.log_block(vo);
    if (pin && pin->l == 0 && d != 0) return plan_pin_at_u_block(fr, ue, vo);
    switch (d) {
        case 0: return plan_same_block(fr, ue, vo);
        case 1: return plan_chain(fr, ue, vo);
        case 2: return plan_double(fr, ue, vo);
        default: return plan_anchored(fr, ue, vo);
    }
}

// The even endpoint is the pin's own even end: the global path must open
// with the pin, so the endpoint's block is covered by a vertex-deleted path
// and the remaining blocks chain from the pin's odd end.
Path plan_consumed(const Frame& fr0, const Vertex& ue, const Vertex& vo) {
    auto pin0 = frame_pin(fr0);
    if (!pin0) throw PlanFail("endpoint does not consume the pin");
    Frame fr = fr0.rotated_to(pin0->xo); // logical 0 = the pin's odd-end block
    const auto& view = *fr.view;
    const Vertex xo = pin0->xo;
    const int dl = fr.log_block(vo);
    if (fr.log_block(ue) != 3) throw PlanFail("consumed pin spans unexpected blocks");

    // the maximal forest chain from the pin's even end away from the pin must
    // end at the even endpoint: the global path is forced along all of it
    std::vector<Vertex> consumed{pin0->xe};
    {
        LinearForest Lfull = LinearForest::validate(merge(fr.Lb(3), fr.Lc));
        Vertex prev = xo, cur = pin0->xe;
        while (true) {
            bool moved = false;
            for (const auto& e : Lfull.edges()) {
                if (!e.touches(cur)) continue;
                Vertex o = e.other(cur);
                if (o == prev) continue;
                prev = cur;
                cur = o;
                consumed.push_back(cur);
                moved = true;
                break;
            }
            if (!moved) break;
        }
    }
    if (!(consumed.back() == ue)) throw PlanFail("endpoint does not consume the pin");
    std::reverse(consumed.begin(), consumed.end()); // ue .. xe
    for (const Vertex& c : consumed)
        if (c == vo) throw PlanFail("odd endpoint sits on the consumed chain");

    auto cover_pair = [&](int t, const Vertex& a, const Vertex& b, const Vertex& c,
                          const Vertex& d) { return block_cover(fr, t, {}, a, b, c, d); };
    const std::vector<Vertex>& o_excl = consumed; // partners must miss the prefix

    Weave wv;
    wv.seg(Path(consumed.begin(), consumed.end()));
    wv.link(consumed.back(), xo);

    if (dl == 0) {
        Vertex c1 = pick_vertex_clear(view, fr.phys(0), fr.want(true), fr.Lb(0), fr.LF(1),
                                      std::nullopt);
        Vertex c2 = pick_vertex_clear(view, fr.phys(0), fr.want(true), fr.Lb(0), fr.LF(1), c1);
        auto [m1, m2] = cover_pair(0, c1, xo, c2, vo);
        Vertex c1o = partner(fr, c1, fr.LF(1));
        Vertex c2o = partner(fr, c2, fr.LF(1), {c1o});
        Vertex d1 = pick_vertex_clear(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2), std::nullopt);
        Vertex d2 = pick_vertex_clear(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2), d1);
        auto [n1, n2] = cover_pair(1, d1, c1o, d2, c2o);
        Vertex d1o = partner(fr, d1, fr.LF(2));
        Vertex d2o = partner(fr, d2, fr.LF(2), {d1o});
        Vertex e1 = pick_clear_multi(view, fr.phys(2), fr.want(true), fr.Lb(2), fr.Lb(3), {});
        Vertex e2 = pick_clear_multi(view, fr.phys(2), fr.want(true), fr.Lb(2), fr.Lb(3), {e1});
        auto [k1, k2] = cover_pair(2, e1, d1o, e2, d2o);
        std::vector<Vertex> x1 = o_excl;
        Vertex o1 = partner(fr, e1, fr.Lb(3), x1);
        x1.push_back(o1);
        Vertex o2 = partner(fr, e2, fr.Lb(3), x1);
        Path pm = block_minus_set(fr, 3, consumed, o1, o2);
        wv.seg(m1);
        wv.seg(m2);
        wv.seg(n1);
        wv.seg(n2);
        wv.seg(k1);
        wv.seg(k2);
        wv.seg(pm);
        wv.link(c1, c1o);
        wv.link(c2, c2o);
        wv.link(d1, d1o);
        wv.link(d2, d2o);
        wv.link(e1, o1);
        wv.link(e2, o2);
        return wv.assemble(view.host(), ue, vo);
    }

    // chain prefix: blocks 0 .. dl-1 single paths, then the cover block;
    // a block beyond the sub-budget contributes its opened covering cycle
    Vertex in = xo;
    std::vector<Path> chain;
    for (int t = 0; t < dl; ++t) {
        if (fr.load(t) > fr.sub_budget()) {
            Path body = block_cycle(fr, t);
            auto nn = cycle_nbrs(body, in);
            std::optional<Vertex> gg;
            for (const Vertex& cand : {std::min(nn[0], nn[1]), std::max(nn[0], nn[1])}) {
                if (contains(fr.Lb(t), Edge(view.host(), in, cand))) continue;
                if (partner_opt(fr, cand, fr.LF(t + 1), {vo})) {
                    gg = cand;
                    break;
                }
            }
            if (!gg) throw PlanFail("consumed chain: loaded block has no free exit");
            Path chunk = open_cycle(body, in, *gg);
            Vertex nxt = partner(fr, *gg, fr.LF(t + 1), {vo});
            wv.seg(chunk);
            wv.link(*gg, nxt);
            in = nxt;
            continue;
        }
        Vertex w = pick_vertex_clear(view, fr.phys(t), fr.want(true), fr.Lb(t), fr.LF(t + 1), in);
        if (!compatible(LinearForest::validate(fr.Lb(t)), in, w))
            throw PlanFail("consumed chain endpoints incompatible");
        chain.push_back(solve_block(fr, t, {}, in, w));
        Vertex nxt = partner(fr, w, fr.LF(t + 1), {vo});
        wv.seg(chain.back());
        wv.link(w, nxt);
        in = nxt;
    }

    if (dl == 3) {
        for (const Vertex& c : consumed)
            if (c == in) throw PlanFail("chain landing on the consumed prefix");
        Path pm = block_minus_set(fr, 3, consumed, in, vo);
        wv.seg(pm);
        return wv.assemble(view.host(), ue, vo);
    }

    // cover block dl holds v and the chain landing; its two even exits feed
    // the remaining single blocks and finally the deleted-endpoint block
    Vertex e1 = pick_vertex_clear(view, fr.phys(dl), fr.want(true), fr.Lb(dl), fr.LF(dl + 1),
                                  std::nullopt);
    Vertex e2 = pick_vertex_clear(view, fr.phys(dl), fr.want(true), fr.Lb(dl), fr.LF(dl + 1), e1);
    auto [m1, m2] = block_cover(fr, dl, {}, e1, in, e2, vo);
    wv.seg(m1);
    wv.seg(m2);
    std::vector<Vertex> x2 = o_excl;
    Vertex in1 = partner(fr, e1, dl == 2 ? fr.Lb(3) : fr.LF(dl + 1), x2);
    x2.push_back(in1);
    Vertex in2 = partner(fr, e2, dl == 2 ? fr.Lb(3) : fr.LF(dl + 1), x2);
    wv.link(e1, in1);
    wv.link(e2, in2);
    if (dl == 2) {
        Path pm = block_minus_set(fr, 3, consumed, in1, in2);
        wv.seg(pm);
        return wv.assemble(view.host(), ue, vo);
    }
    // dl == 1: one more single block (block 2), then the deleted block
    Vertex w1 = pick_vertex_clear(view, fr.phys(2), fr.want(true), fr.Lb(2), fr.Lb(3), in1);
    Vertex w2 = pick_vertex_clear(view, fr.phys(2), fr.want(true), fr.Lb(2), fr.Lb(3), w1);
    if (w2 == in2 || w1 == in2) throw PlanFail("consumed cover anchors collide");
    auto [k1, k2] = block_cover(fr, 2, {}, w1, in1, w2, in2);
    wv.seg(k1);
    wv.seg(k2);
    std::vector<Vertex> x3 = o_excl;
    Vertex o1 = partner(fr, w1, fr.Lb(3), x3);
    x3.push_back(o1);
    Vertex o2 = partner(fr, w2, fr.Lb(3), x3);
    wv.link(w1, o1);
    wv.link(w2, o2);
    Path pm = block_minus_set(fr, 3, consumed, o1, o2);
    wv.seg(pm);
    return wv.assemble(view.host(), ue, vo);
}

// ===========================================================================
// top-level dispatch
// ===========================================================================

Path construct_under_dimension(const BalancedHypercube& h, const EdgeSet& F,
                               const LinearForest& L, const Vertex& u0, const Vertex& v0,
                               const SearchLimits& lim, int depth, const DimensionChoice& dc);

Path construct_impl(const BalancedHypercube& h, const EdgeSet& F, const LinearForest& L,
                    const Vertex& u0, const Vertex& v0, const SearchLimits& lim, int depth) {
    const int n = h.n();
    if (n <= 2) {
        auto res = ham_path(h, F, L, u0, v0, lim);
        if (res.out_of_budget()) throw SearchBudgetError("base oracle ran out of budget");
        if (!res.found())
            throw ConstructionFailure("base case (n=" + std::to_string(n) +
                                      ") reported infeasible for a valid instance");
        Path p = *res.value;
        if (!(p.front() == u0)) std::reverse(p.begin(), p.end());
        return p;
    }

    std::vector<DimensionChoice> dims = admissible_dimensions(h, F, L);
    if (dims.empty())
        throw UnsupportedCase("dimension selection: only dimension 0 qualifies for the partition");

    std::string all_log;
    for (const DimensionChoice& dc : dims) {
        try {
            return construct_under_dimension(h, F, L, u0, v0, lim, depth, dc);
        } catch (const ConstructionFailure& e) {
            all_log += e.what();
        }
    }
    throw ConstructionFailure("every admissible dimension failed: " + all_log);
}

Path construct_under_dimension(const BalancedHypercube& h, const EdgeSet& F, const LinearForest& L,
                               const Vertex& u0, const Vertex& v0, const SearchLimits& lim,
                               int depth, const DimensionChoice& dc) {
    const int n = h.n();
    if (dc.crossing_fault_count >= 2) {
        if (n <= 3) {
            auto res = ham_path(h, F, L, u0, v0, lim);
            if (res.out_of_budget()) throw SearchBudgetError("crossing-fault oracle ran out of budget");
            if (!res.found())
                throw ConstructionFailure("two-crossing-fault oracle fallback found no path");
            Path p = *res.value;
            if (!(p.front() == u0)) std::reverse(p.begin(), p.end());
            return p;
        }
        throw UnsupportedCase("two faulty crossing edges at n > 3");
    }

    PartitionView view(h, dc.j);
    Instance tmp;
    tmp.n = n;
    tmp.faults = F;
    tmp.prescribed = L;
    tmp.u = u0;
    tmp.v = v0;
    BlockData bd = restrict_to_blocks(tmp, view);
    std::array<int, 4> loads{};
    for (int i = 0; i < 4; ++i) loads[static_cast<size_t>(i)] = bd.load(i);
    int c = normalize_rotation(loads);
    int rot = (4 - c) % 4;
    int load0 = loads[static_cast<size_t>(rot)];

    std::string log;
    for (int sig : {+1, -1}) {
        Frame fr = make_frame(view, bd, rot, sig, F, n, lim, depth);
        try {
            Vertex ue = fr.log_even(u0) ? u0 : v0;
            Vertex vo = fr.log_even(u0) ? v0 : u0;
            auto pin = frame_pin(fr);
            Path p;
            bool done = false;
            if (pin) {
                // when the forest forces the even endpoint through the pin,
                // only the consumed-chain shape can work
                try {
                    p = plan_consumed(fr, ue, vo);
                    done = true;
                } catch (const PlanFail&) {
                }
            }
            if (!done)
                p = load0 <= fr.sub_budget() ? plan_all_small(fr, u0, v0) : plan_heavy(fr, u0, v0);
            if (!(p.front() == u0)) std::reverse(p.begin(), p.end());
            ValidationReport rep = validate_path(tmp, p);
            if (!rep.ok)
                throw PlanFail("plan produced an invalid path: " + rep.violations.front().detail);
            return p;
        } catch (const PlanFail& e) {
            log += std::string("\n  [sig=") + (sig > 0 ? "+" : "-") + "] " + e.what();
        } catch (const NoCandidate& e) {
            log += std::string("\n  [sig=") + (sig > 0 ? "+" : "-") + "] " + e.what();
        }
    }
    throw ConstructionFailure("no splice plan succeeded (n=" + std::to_string(n) +
                              ", j=" + std::to_string(dc.j) + ", load0=" + std::to_string(load0) +
                              ", |Lc|=" + std::to_string(bd.Lc.size()) +
                              ", |Fc|=" + std::to_string(bd.Fc.size()) + "):" + log);
}

} // namespace detail

Path construct(const Instance& inst, const SearchLimits& lim) {
    BalancedHypercube h(inst.n);
    Path p = detail::construct_impl(h, inst.faults, inst.prescribed, inst.u, inst.v, lim, 0);
    ValidationReport rep = validate_path(inst, p);
    if (!rep.ok)
        throw ConstructionFailure("constructed path failed the independent validator: " +
                                  rep.violations.front().detail);
    return p;
}

} // namespace bh
