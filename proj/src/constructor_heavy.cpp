// Splice plans for the heavy bucket: block 0 carries load 2n-3 (covered by an
// H-cycle) or 2n-2 (covered by a withheld-fault H-path), and the outer blocks
// carry at most one edge between them.
#include "constructor_internal.hpp"

namespace bh::detail {

namespace {

// A hook pair out of the block-0 body: an even vertex linking up into block 1
// and an odd vertex linking down into block 3, with their chosen partners.
struct HookSet {
    std::vector<Path> pieces; // body pieces after the openings
    Vertex a, b, a_out, b_out;
    // second pair when requested
    bool has2 = false;
    Vertex a2, b2, a2_out, b2_out;
};

// Open the body so that it exposes one (or two) hook pairs, honoring a pin
// whose lower block is 0 (cut at xe) or 3 (cut at xo).
HookSet open_body(const Frame& fr, const Heavy& hv, const std::optional<PinInfo>& pin,
                  bool need_second, const std::vector<Vertex>& keep_clear = {}) {
    const auto& view = *fr.view;
    HookSet out;
    auto pick_partner_up = [&](const Vertex& w, std::vector<Vertex> excl) {
        for (const Vertex& k : keep_clear) excl.push_back(k);
        return partner(fr, w, fr.LF(1), excl);
    };
    auto pick_partner_down = [&](const Vertex& w, std::vector<Vertex> excl) {
        for (const Vertex& k : keep_clear) excl.push_back(k);
        return partner(fr, w, fr.LF(3), excl);
    };

    if (hv.is_cycle) {
        // first opening
        if (pin && pin->l == 0) {
            auto mate = free_body_nbr(fr, hv, pin->xe, keep_clear);
            if (!mate) throw PlanFail("no free cycle edge at the pin endpoint");
            out.a = pin->xe;
            out.b = *mate;
            out.a_out = pin->xo;
            out.b_out = pick_partner_down(out.b, {});
        } else if (pin && pin->l == 3) {
            auto mate = free_body_nbr(fr, hv, pin->xo, keep_clear);
            if (!mate) throw PlanFail("no free cycle edge at the pin endpoint");
            out.b = pin->xo;
            out.a = *mate;
            out.b_out = pin->xe;
            out.a_out = pick_partner_up(out.a, {});
        } else {
            auto hp = orient(fr, pick_edge_on_path(view, hv.body, true, fr.Lb(0), fr.LF(fr.sig > 0 ? 1 : 3),
                                                   fr.LF(fr.sig > 0 ? 3 : 1), true, std::nullopt,
                                                   EdgeOrient::any, fr.all_faults));
            out.a = hp.ae;
            out.b = hp.bo;
            out.a_out = pick_partner_up(out.a, {});
            out.b_out = pick_partner_down(out.b, {});
        }
        Edge first_cut(view.host(), out.a, out.b);
        if (!need_second) {
            out.pieces.push_back(open_cycle(hv.body, out.a, out.b));
            return out;
        }
        // second opening away from the first
        Path arc = open_cycle(hv.body, out.a, out.b);
        std::optional<Vertex> excl;
        auto hp2 = orient(fr, pick_edge_on_path(view, arc, false, fr.Lb(0), fr.LF(fr.sig > 0 ? 1 : 3),
                                                fr.LF(fr.sig > 0 ? 3 : 1), true, excl,
                                                EdgeOrient::any, fr.all_faults));
        out.has2 = true;
        out.a2 = hp2.ae;
        out.b2 = hp2.bo;
        out.a2_out = pick_partner_up(out.a2, {out.a_out});
        out.b2_out = pick_partner_down(out.b2, {out.b_out});
        auto [p1, p2] = cut_edge(arc, out.a2, out.b2);
        if (!(p1.back() == out.a2)) std::swap(p1, p2);
        out.pieces.push_back(p1);
        out.pieces.push_back(p2);
        return out;
    }

    // pr-1 path body: the ends are the first hook pair
    if (pin) throw PlanFail("a pin cannot coexist with a fully loaded block");
    out.a = hv.pa;
    out.b = hv.pb;
    out.a_out = pick_partner_up(out.a, {});
    out.b_out = pick_partner_down(out.b, {});
    if (!need_second) {
        out.pieces.push_back(hv.body);
        return out;
    }
    auto hp2 = orient(fr, pick_edge_on_path(view, hv.body, false, fr.Lb(0), {}, {}, false,
                                            std::nullopt, EdgeOrient::any, fr.all_faults));
    out.has2 = true;
    out.a2 = hp2.ae;
    out.b2 = hp2.bo;
    out.a2_out = pick_partner_up(out.a2, {out.a_out});
    out.b2_out = pick_partner_down(out.b2, {out.b_out});
    auto [p1, p2] = cut_edge(hv.body, out.a2, out.b2);
    if (!(p1.back() == out.a2)) std::swap(p1, p2);
    out.pieces.push_back(p1);
    out.pieces.push_back(p2);
    return out;
}

void add_pieces(Weave& wv, const HookSet& hs) {
    for (const auto& p : hs.pieces) wv.seg(p);
}

// ---- placements with both endpoints outside block 0 -------------------------

// u in 1, v in 2: single chain through the body.
Path heavy_12(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    auto pin = frame_pin(fr);
    if (pin && pin->l == 1) throw PlanFail("heavy (1,2) cannot host this pin directly");
    HookSet hs = open_body(fr, make_heavy(fr), pin, false, {ue, vo});
    if (hs.a_out == ue) throw PlanFail("hook collides with the endpoint");
    if (!compatible(LinearForest::validate(fr.Lb(1)), hs.a_out, ue))
        throw PlanFail("block-1 endpoints incompatible");
    Path p1 = solve_block(fr, 1, {}, ue, hs.a_out);
    Vertex c, c_out;
    if (pin && pin->l == 2) {
        c = pin->xo;
        c_out = pin->xe;
    } else {
        c = pick_vertex_clear(*fr.view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2), hs.b_out);
        c_out = partner(fr, c, fr.LF(2), {vo});
    }
    if (c == hs.b_out || c_out == vo) throw PlanFail("block-3 anchors collide");
    if (!compatible(LinearForest::validate(fr.Lb(3)), hs.b_out, c))
        throw PlanFail("block-3 endpoints incompatible");
    Path p3 = solve_block(fr, 3, {}, hs.b_out, c);
    if (!compatible(LinearForest::validate(fr.Lb(2)), c_out, vo))
        throw PlanFail("block-2 endpoints incompatible");
    Path p2 = solve_block(fr, 2, {}, c_out, vo);
    Weave wv;
    add_pieces(wv, hs);
    wv.seg(p1);
    wv.seg(p3);
    wv.seg(p2);
    wv.link(hs.a, hs.a_out);
    wv.link(hs.b, hs.b_out);
    wv.link(c, c_out);
    return wv.assemble(fr.view->host(), ue, vo);
}

// u in 2, v in 3, pin from u's block into v's block: split both endpoint
// blocks, hook the spares through a second body opening and a block-3 cover.
Path heavy_23_pin2(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    auto pin = frame_pin(fr);
    const auto& view = *fr.view;
    const Vertex xe = pin->xe, xo = pin->xo;
    if (xe == ue || xo == vo) throw PlanFail("pin touches an endpoint");
    Heavy hv = make_heavy(fr);
    if (!hv.is_cycle) throw PlanFail("pin with a path-covered block");
    HookSet hs = open_body(fr, hv, std::nullopt, false, {ue, vo});
    Path arc = hs.pieces.front();

    Vertex c = pick_clear_multi(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2), {hs.a_out});
    Vertex c_out = partner(fr, c, fr.LF(2), {ue, xo});
    if (!compatible(LinearForest::validate(fr.Lb(2)), ue, c_out))
        throw PlanFail("block-2 endpoints incompatible");
    auto sp2 = anchored_split(fr, 2, {}, ue, c_out, xe, c_out, fr.LF(1), {hs.a_out});
    // pieces [ue..xe], [m..c_out]; m hangs into block 1
    if (!compatible(LinearForest::validate(fr.Lb(1)), hs.a_out, c))
        throw PlanFail("block-1 endpoints incompatible");
    auto sp1 = anchored_split(fr, 1, {}, hs.a_out, c, sp2.mate_out, c, fr.Lb(0), {});
    // pieces [a_out..mate_out(2)], [q .. c]; q hangs onto the body
    Vertex qo = sp1.mate_out; // even body vertex
    if (std::find(arc.begin(), arc.end(), qo) == arc.end())
        throw PlanFail("second opening missed the body");
    Vertex g = [&]() {
        for (const Vertex& cand : {nbr_toward(arc, qo, arc.front()), nbr_toward(arc, qo, arc.back())}) {
            if (contains(fr.Lb(0), Edge(view.host(), qo, cand))) continue;
            if (partner_opt(fr, cand, fr.Lb(3), {hs.b_out, vo})) return cand;
        }
        throw PlanFail("no usable body edge at the second opening");
    }();
    auto [arc1, arc2] = cut_edge(arc, qo, g);
    Vertex g_out = partner(fr, g, fr.Lb(3), {hs.b_out, vo});
    std::string why;
    for (int pairing = 0; pairing < 2; ++pairing) {
        try {
            auto [c1, c2] = pairing == 0 ? block_cover(fr, 3, {}, hs.b_out, xo, g_out, vo)
                                         : block_cover(fr, 3, {}, g_out, xo, hs.b_out, vo);
            Weave wv;
            wv.seg(arc1);
            wv.seg(arc2);
            wv.seg(sp2.piece_anchor);
            wv.seg(sp2.piece_mate);
            wv.seg(sp1.piece_anchor);
            wv.seg(sp1.piece_mate);
            wv.seg(c1);
            wv.seg(c2);
            wv.link(hs.a, hs.a_out);
            wv.link(hs.b, hs.b_out);
            wv.link(xe, xo);
            wv.link(sp2.mate, sp2.mate_out);
            wv.link(sp1.mate, qo);
            wv.link(g, g_out);
            wv.link(c, c_out);
            return wv.assemble(view.host(), ue, vo);
        } catch (const PlanFail& e) {
            why = e.what();
        }
    }
    throw PlanFail(std::string("heavy (2,3) pin wiring exhausted: ") + why);
}

// u in 2, v in 3: chain through block 1 into the body and down.
Path heavy_23(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    auto pin = frame_pin(fr);
    if (pin && pin->l == 2) return heavy_23_pin2(fr, ue, vo);
    HookSet hs = open_body(fr, make_heavy(fr), pin, false, {ue, vo});
    Vertex c, c_out;
    if (pin && pin->l == 1) {
        c = pin->xe;
        c_out = pin->xo;
    } else {
        c = pick_vertex_clear(*fr.view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2), hs.a_out);
        c_out = partner(fr, c, fr.LF(2), {ue});
    }
    if (c == hs.a_out || c_out == ue) throw PlanFail("block-1 anchors collide");
    if (!compatible(LinearForest::validate(fr.Lb(1)), hs.a_out, c))
        throw PlanFail("block-1 endpoints incompatible");
    Path p1 = solve_block(fr, 1, {}, hs.a_out, c);
    if (!compatible(LinearForest::validate(fr.Lb(2)), c_out, ue))
        throw PlanFail("block-2 endpoints incompatible");
    Path p2 = solve_block(fr, 2, {}, ue, c_out);
    if (!compatible(LinearForest::validate(fr.Lb(3)), hs.b_out, vo))
        throw PlanFail("block-3 endpoints incompatible");
    Path p3 = solve_block(fr, 3, {}, hs.b_out, vo);
    Weave wv;
    add_pieces(wv, hs);
    wv.seg(p1);
    wv.seg(p2);
    wv.seg(p3);
    wv.link(hs.a, hs.a_out);
    wv.link(hs.b, hs.b_out);
    wv.link(c, c_out);
    return wv.assemble(fr.view->host(), ue, vo);
}

// u in 1, v in 3: two body openings, splits beside them, and a block-2 bridge.
Path heavy_13(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    auto pin = frame_pin(fr);
    Heavy hv = make_heavy(fr);
    HookSet hs = open_body(fr, hv, pin, true, {ue, vo});
    // block 1 carries u with hooks a_out (path end) and a2_out (split anchor)
    for (int side = 0; side < 2; ++side) {
        try {
            auto sp1 = anchored_split(fr, 1, {}, hs.a_out, ue, hs.a2_out,
                                      side == 0 ? ue : hs.a_out, fr.LF(2));
            auto sp3 = anchored_split(fr, 3, {}, hs.b_out, vo, hs.b2_out,
                                      side == 0 ? hs.b_out : vo, fr.LF(2));
            if (sp1.mate_out == sp3.mate_out) throw PlanFail("bridge anchors collide");
            if (!compatible(LinearForest::validate(fr.Lb(2)), sp1.mate_out, sp3.mate_out))
                throw PlanFail("bridge endpoints incompatible");
            Path p2 = solve_block(fr, 2, {}, sp1.mate_out, sp3.mate_out);
            Weave wv;
            add_pieces(wv, hs);
            wv.seg(sp1.piece_anchor);
            wv.seg(sp1.piece_mate);
            wv.seg(sp3.piece_anchor);
            wv.seg(sp3.piece_mate);
            wv.seg(p2);
            wv.link(hs.a, hs.a_out);
            wv.link(hs.b, hs.b_out);
            wv.link(hs.a2, hs.a2_out);
            wv.link(hs.b2, hs.b2_out);
            wv.link(sp1.mate, sp1.mate_out);
            wv.link(sp3.mate, sp3.mate_out);
            return wv.assemble(fr.view->host(), ue, vo);
        } catch (const PlanFail&) {
            if (side == 1) throw;
        }
    }
    throw PlanFail("heavy (1,3) exhausted");
}

// u in 2, v in 1: body opened once; block 1 split twice toward v.
// u in 2, v in 1, pin from u's block into block 3: split u's block at the
// pin and cover block 1 over the dangling hooks.
Path heavy_21_pin2(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    auto pin = frame_pin(fr);
    const auto& view = *fr.view;
    const Vertex xe = pin->xe, xo = pin->xo;
    if (xe == ue) throw PlanFail("pin touches the endpoint");
    Heavy hv = make_heavy(fr);
    HookSet hs = open_body(fr, hv, std::nullopt, false, {ue, vo});
    Vertex z = pick_clear_multi(view, fr.phys(2), fr.want(false), fr.Lb(2), fr.LF(1), {xo});
    if (!compatible(LinearForest::validate(fr.Lb(2)), ue, z))
        throw PlanFail("block-2 endpoints incompatible");
    auto sp2 = anchored_split(fr, 2, {}, ue, z, xe, z, fr.LF(1), {});
    // pieces [ue..xe], [m..z]; m hangs into block 1
    Vertex z_out = partner(fr, z, fr.LF(1), {sp2.mate_out, vo});
    if (z_out == sp2.mate_out || z_out == vo) throw PlanFail("block-1 entries collide");
    if (xo == hs.b_out) throw PlanFail("pin collides with the body hook");
    if (!compatible(LinearForest::validate(fr.Lb(3)), hs.b_out, xo))
        throw PlanFail("block-3 endpoints incompatible");
    Path p3 = solve_block(fr, 3, {}, hs.b_out, xo);
    std::string why;
    for (int pairing = 0; pairing < 2; ++pairing) {
        try {
            auto [c1, c2] = pairing == 0
                                ? block_cover(fr, 1, {}, sp2.mate_out, hs.a_out, z_out, vo)
                                : block_cover(fr, 1, {}, z_out, hs.a_out, sp2.mate_out, vo);
            Weave wv;
            for (const auto& p : hs.pieces) wv.seg(p);
            wv.seg(sp2.piece_anchor);
            wv.seg(sp2.piece_mate);
            wv.seg(p3);
            wv.seg(c1);
            wv.seg(c2);
            wv.link(hs.a, hs.a_out);
            wv.link(hs.b, hs.b_out);
            wv.link(xe, xo);
            wv.link(sp2.mate, sp2.mate_out);
            wv.link(z, z_out);
            return wv.assemble(view.host(), ue, vo);
        } catch (const PlanFail& e) {
            why = e.what();
        }
    }
    throw PlanFail(std::string("heavy (2,1) pin wiring exhausted: ") + why);
}

Path heavy_21(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    auto pin = frame_pin(fr);
    if (pin && pin->l == 2) return heavy_21_pin2(fr, ue, vo);
    Heavy hv = make_heavy(fr);
    HookSet hs = open_body(fr, hv, pin, false, {ue, vo});
    const auto& view = *fr.view;

    Vertex y1, y1_out;
    if (pin && pin->l == 1) {
        y1 = pin->xe;
        y1_out = pin->xo;
    } else {
        y1 = pick_vertex_clear(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2), hs.a_out);
        y1_out = partner(fr, y1, fr.LF(2), {ue});
    }
    if (y1 == hs.a_out || y1_out == ue) throw PlanFail("block-1 anchors collide");
    if (!compatible(LinearForest::validate(fr.Lb(1)), y1, vo))
        throw PlanFail("block-1 endpoints incompatible");
    // block 1: path y1 -> v, split at the body hook a_out with the mate toward v
    auto sp1 = anchored_split(fr, 1, {}, y1, vo, hs.a_out, vo, fr.LF(2), {y1_out});
    if (sp1.mate_out == y1_out) throw PlanFail("block-2 entries collide");
    // block 2: path u -> y1_out, split at sp1.mate_out with the mate toward u
    if (!compatible(LinearForest::validate(fr.Lb(2)), ue, y1_out))
        throw PlanFail("block-2 endpoints incompatible");
    auto sp2 = anchored_split(fr, 2, {}, ue, y1_out, sp1.mate_out, ue, fr.LF(3), {hs.b_out});
    if (sp2.mate_out == hs.b_out) throw PlanFail("block-3 entries collide");
    if (!compatible(LinearForest::validate(fr.Lb(3)), hs.b_out, sp2.mate_out))
        throw PlanFail("block-3 endpoints incompatible");
    Path p3 = solve_block(fr, 3, {}, sp2.mate_out, hs.b_out);

    Weave wv;
    add_pieces(wv, hs);
    wv.seg(sp1.piece_anchor);
    wv.seg(sp1.piece_mate);
    wv.seg(sp2.piece_anchor);
    wv.seg(sp2.piece_mate);
    wv.seg(p3);
    wv.link(hs.a, hs.a_out);
    wv.link(hs.b, hs.b_out);
    wv.link(y1, y1_out);
    wv.link(sp1.mate, sp1.mate_out);
    wv.link(sp2.mate, sp2.mate_out);
    return wv.assemble(view.host(), ue, vo);
}

// u in 3, v in 1: body opened once; block 2 covered by two paths.
Path heavy_31(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    auto pin = frame_pin(fr);
    if (pin && !(pin->l == 0 || pin->l == 1 || pin->l == 2 || pin->l == 3))
        throw PlanFail("heavy (3,1) pin slot missing");
    Heavy hv = make_heavy(fr);
    HookSet hs = open_body(fr, hv, (pin && (pin->l == 0 || pin->l == 3)) ? pin : std::nullopt,
                           false, {ue, vo});
    const auto& view = *fr.view;

    // block 3: u -> x, split at the body hook b_out (mate toward x)
    Vertex x, x_out;
    if (pin && pin->l == 2) {
        x = pin->xo;
        x_out = pin->xe;
        if (x == hs.b_out || x == ue) throw PlanFail("pin collides with the block-3 anchors");
    } else {
        x = pick_vertex_clear(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2), hs.b_out);
    }
    if (x == hs.b_out) throw PlanFail("block-3 anchors collide");
    if (!compatible(LinearForest::validate(fr.Lb(3)), ue, x))
        throw PlanFail("block-3 endpoints incompatible");
    auto sp3 = anchored_split(fr, 3, {}, ue, x, hs.b_out, x, fr.LF(2));
    if (!(pin && pin->l == 2)) x_out = partner(fr, x, fr.LF(2), {sp3.mate_out});
    if (x_out == sp3.mate_out) throw PlanFail("block-2 entries collide");

    // block 1: e -> v, split at the body hook a_out (mate toward v)
    Vertex e, e_out;
    bool e_pinned = pin && pin->l == 1;
    if (e_pinned) {
        e = pin->xe;
        if (e == hs.a_out || e == vo) throw PlanFail("pin collides with the block-1 anchors");
    } else {
        e = pick_vertex_clear(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2), hs.a_out);
    }
    if (e == hs.a_out) throw PlanFail("block-1 anchors collide");
    if (!compatible(LinearForest::validate(fr.Lb(1)), e, vo))
        throw PlanFail("block-1 endpoints incompatible");
    auto sp1 = anchored_split(fr, 1, {}, e, vo, hs.a_out, vo, fr.LF(2));
    e_out = e_pinned ? pin->xo : partner(fr, e, fr.LF(2), {sp3.mate_out, x_out, sp1.mate_out});
    if (e_out == sp3.mate_out || e_out == x_out || e_out == sp1.mate_out)
        throw PlanFail("block-2 entries collide");

    // block 2 cover: (mate3_out -> e_out) and (r_out -> x_out)
    auto [c1, c2] = block_cover(fr, 2, {}, sp3.mate_out, e_out, sp1.mate_out, x_out);
    Weave wv;
    add_pieces(wv, hs);
    wv.seg(sp3.piece_anchor);
    wv.seg(sp3.piece_mate);
    wv.seg(sp1.piece_anchor);
    wv.seg(sp1.piece_mate);
    wv.seg(c1);
    wv.seg(c2);
    wv.link(hs.a, hs.a_out);
    wv.link(hs.b, hs.b_out);
    wv.link(sp3.mate, sp3.mate_out);
    wv.link(sp1.mate, sp1.mate_out);
    wv.link(e, e_out);
    wv.link(x, x_out);
    return wv.assemble(view.host(), ue, vo);
}

// ---- placements with exactly one endpoint in block 0 ------------------------

// Pin lands in the loaded block away from the endpoint (l = 3): open the
// covering cycle beside u and beside the pin's odd end, then route through
// covers sized by v's block.
Path heavy_0j_pin_into_heavy(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    auto pin = frame_pin(fr);
    const auto& view = *fr.view;
    const int j = fr.log_block(vo);
    Heavy hv = make_heavy(fr);
    if (!hv.is_cycle) throw PlanFail("pin with a path-covered block");
    const Vertex xo = pin->xo, xe = pin->xe; // xo in block 0, xe in block 3
    auto x1 = free_body_nbr(fr, hv, ue, {xo});
    auto g1 = free_body_nbr(fr, hv, xo, {ue});
    if ((!g1 || !x1) &&
        !contains(fr.Lb(0), Edge(view.host(), ue, xo))) {
        auto nn = cycle_nbrs(hv.body, ue);
        if (nn[0] == xo || nn[1] == xo) {
            // open only at (ue, xo): the pin is the block-0 exit
            Path arc = open_cycle(hv.body, ue, xo);
            Weave w2;
            w2.seg(arc);
            w2.link(xo, xe);
            Vertex in = xe;
            for (int t = 3; t > j; --t) {
                Vertex w = pick_clear_multi(view, fr.phys(t), fr.want(false), fr.Lb(t),
                                            fr.LF(t - 1), {in, vo});
                if (!compatible(LinearForest::validate(fr.Lb(t)), in, w))
                    throw PlanFail("pin chain endpoints incompatible");
                Path pt = solve_block(fr, t, {}, in, w);
                Vertex nxt = partner(fr, w, fr.LF(t - 1), {vo});
                w2.seg(pt);
                w2.link(w, nxt);
                in = nxt;
            }
            if (!compatible(LinearForest::validate(fr.Lb(j)), in, vo))
                throw PlanFail("pin chain landing incompatible");
            Path pj = solve_block(fr, j, {}, in, vo);
            w2.seg(pj);
            return w2.assemble(view.host(), ue, vo);
        }
    }
    if (!x1 || !g1 || *x1 == xo || *g1 == ue) throw PlanFail("no free cycle edges for the pin");
    if (*x1 == *g1) throw PlanFail("cycle openings collide");
    Vertex x = *x1, g = *g1;
    Vertex x_out = partner(fr, x, fr.LF(3), {xe, vo});
    Vertex g_out = partner(fr, g, fr.LF(1), {vo});
    // arcs after removing (ue,x) and (xo,g)
    // walk from u away from x until the first of {xo, g}
    Path a1, a2;
    {
        Path probe = cycle_walk(hv.body, ue, xo, x);
        if (std::find(probe.begin(), probe.end(), g) == probe.end()) {
            a1 = probe;                          // [ue .. xo]
            a2 = cycle_walk(hv.body, x, g, ue);  // [x .. g]
        } else {
            a1 = cycle_walk(hv.body, ue, g, x);  // [ue .. g]
            a2 = cycle_walk(hv.body, x, xo, ue); // [x .. xo]
        }
    }
    Weave wv;
    wv.seg(a1);
    wv.seg(a2);
    wv.link(x, x_out);
    wv.link(g, g_out);
    wv.link(xo, xe);

    if (j == 3) {
        // B3 cover; B2 and B1 single. The arc layout decides which cover
        // pair carries v, so try both pairings.
        Vertex q = pick_clear_multi(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2),
                                    {x_out, xe, vo});
        Vertex q_out = partner(fr, q, fr.LF(2));
        Vertex r = pick_clear_multi(view, fr.phys(2), fr.want(false), fr.Lb(2), fr.LF(1), {q_out});
        Path p2 = solve_block(fr, 2, {}, q_out, r);
        Vertex r_out = partner(fr, r, fr.LF(1), {g_out});
        Path p1 = solve_block(fr, 1, {}, r_out, g_out);
        std::string first_err;
        for (int pairing = 0; pairing < 2; ++pairing) {
            try {
                Weave w2 = wv;
                auto [c1, c2] = pairing == 0 ? block_cover(fr, 3, {}, x_out, q, xe, vo)
                                             : block_cover(fr, 3, {}, xe, q, x_out, vo);
                w2.seg(c1);
                w2.seg(c2);
                w2.seg(p2);
                w2.seg(p1);
                w2.link(q, q_out);
                w2.link(r, r_out);
                return w2.assemble(view.host(), ue, vo);
            } catch (const PlanFail& e) {
                if (pairing == 0) first_err = e.what();
            }
        }
        throw PlanFail(std::string("pin-into-heavy (0,3) exhausted: ") + first_err);
    }

    Vertex q1 = pick_clear_multi(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2),
                                 {x_out, xe});
    Vertex q2 = pick_clear_multi(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2),
                                 {x_out, xe, q1});
    auto [c1, c2] = block_cover(fr, 3, {}, x_out, q1, xe, q2);
    wv.seg(c1);
    wv.seg(c2);
    Vertex q1o = partner(fr, q1, fr.LF(2), {vo});
    Vertex q2o = partner(fr, q2, fr.LF(2), {vo, q1o});
    wv.link(q1, q1o);
    wv.link(q2, q2o);
    if (j == 2) {
        Vertex r = pick_clear_multi(view, fr.phys(2), fr.want(false), fr.Lb(2), fr.LF(1),
                                    {q1o, q2o, vo});
        Vertex r_out = partner(fr, r, fr.LF(1), {g_out});
        Path p1 = solve_block(fr, 1, {}, r_out, g_out);
        std::string first_err;
        for (int pairing = 0; pairing < 2; ++pairing) {
            try {
                Weave w2 = wv;
                auto [k1, k2] = pairing == 0 ? block_cover(fr, 2, {}, q1o, r, q2o, vo)
                                             : block_cover(fr, 2, {}, q2o, r, q1o, vo);
                w2.seg(k1);
                w2.seg(k2);
                w2.seg(p1);
                w2.link(r, r_out);
                return w2.assemble(view.host(), ue, vo);
            } catch (const PlanFail& e) {
                if (pairing == 0) first_err = e.what();
            }
        }
        throw PlanFail(std::string("pin-into-heavy (0,2) exhausted: ") + first_err);
    }
    // j == 1: both middle covers admit two pairings
    Vertex r1 = pick_clear_multi(view, fr.phys(2), fr.want(false), fr.Lb(2), fr.LF(1), {q1o, q2o});
    Vertex r2 = pick_clear_multi(view, fr.phys(2), fr.want(false), fr.Lb(2), fr.LF(1),
                                 {q1o, q2o, r1});
    auto [k1, k2] = block_cover(fr, 2, {}, q1o, r1, q2o, r2);
    Vertex r1o = partner(fr, r1, fr.LF(1), {g_out, vo});
    Vertex r2o = partner(fr, r2, fr.LF(1), {g_out, vo, r1o});
    std::string first_err;
    for (int pairing = 0; pairing < 2; ++pairing) {
        try {
            Weave w2 = wv;
            auto [m1, m2] = pairing == 0 ? block_cover(fr, 1, {}, r1o, g_out, r2o, vo)
                                         : block_cover(fr, 1, {}, r2o, g_out, r1o, vo);
            w2.seg(k1);
            w2.seg(k2);
            w2.seg(m1);
            w2.seg(m2);
            w2.link(r1, r1o);
            w2.link(r2, r2o);
            return w2.assemble(view.host(), ue, vo);
        } catch (const PlanFail& e) {
            if (pairing == 0) first_err = e.what();
        }
    }
    throw PlanFail(std::string("pin-into-heavy (0,1) exhausted: ") + first_err);
}

// v in block 3 with the pin entering it from block 2.
Path heavy_0j_j3_pin2(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    auto pin = frame_pin(fr);
    const auto& view = *fr.view;
    Heavy hv = make_heavy(fr);
    if (!hv.is_cycle) throw PlanFail("pin with a path-covered block");
    const Vertex xe = pin->xe, xo = pin->xo; // xe in block 2, xo in block 3
    auto xx = free_body_nbr(fr, hv, ue, {});
    if (!xx) throw PlanFail("no free cycle edge at the endpoint");
    Vertex x = *xx;
    Vertex x_out = partner(fr, x, fr.LF(3), {vo, xo});
    Path body = open_cycle(hv.body, ue, x);
    std::reverse(body.begin(), body.end()); // u .. x
    if (xo == x_out || xo == vo) throw PlanFail("pin collides with the anchors");
    if (!compatible(LinearForest::validate(fr.Lb(3)), x_out, vo))
        throw PlanFail("block-3 endpoints incompatible");
    // split the block-3 path at the pin's odd end, the mate toward v
    auto sp3 = anchored_split(fr, 3, {}, x_out, vo, xo, vo, EdgeSet{});
    // mate hangs up into block 0: open the cycle again at its partner
    Vertex m_out = sp3.mate_out; // partner in block 0 chosen fault-free
    if (std::find(body.begin(), body.end(), m_out) == body.end())
        throw PlanFail("second opening missed the body");
    Vertex gg = [&]() {
        Vertex c = nbr_toward(body, m_out, ue);
        if (contains(fr.Lb(0), Edge(view.host(), m_out, c)) || c == ue || c == x)
            throw PlanFail("no usable body edge at the second opening");
        return c;
    }();
    auto [bpa, bpb] = cut_edge(body, m_out, gg);
    // orient: one piece holds ue .. ; the other runs to x
    Vertex g_out = partner(fr, gg, fr.LF(1), {});
    Vertex c = pick_clear_multi(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2), {});
    Path p1 = solve_block(fr, 1, {}, g_out, c);
    Vertex c_out = partner(fr, c, fr.LF(2), {xe});
    if (c_out == xe) throw PlanFail("block-2 entries collide");
    if (!compatible(LinearForest::validate(fr.Lb(2)), c_out, xe))
        throw PlanFail("block-2 endpoints incompatible");
    Path p2 = solve_block(fr, 2, {}, c_out, xe);
    Weave wv;
    wv.seg(bpa);
    wv.seg(bpb);
    wv.seg(sp3.piece_anchor);
    wv.seg(sp3.piece_mate);
    wv.seg(p1);
    wv.seg(p2);
    wv.link(x, x_out);
    wv.link(sp3.mate, m_out);
    wv.link(gg, g_out);
    wv.link(c, c_out);
    wv.link(xe, xo);
    return wv.assemble(view.host(), ue, vo);
}

// v in block 2 with the pin entering it from block 1.
Path heavy_0j_j2_pin1(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    auto pin = frame_pin(fr);
    const auto& view = *fr.view;
    Heavy hv = make_heavy(fr);
    if (!hv.is_cycle) throw PlanFail("pin with a path-covered block");
    const Vertex xe = pin->xe, xo = pin->xo; // xe in block 1, xo in block 2
    auto xx = free_body_nbr(fr, hv, ue, {});
    if (!xx) throw PlanFail("no free cycle edge at the endpoint");
    Vertex x = *xx;
    Vertex x_out = partner(fr, x, fr.LF(3), {vo});
    Path body = open_cycle(hv.body, ue, x);
    std::reverse(body.begin(), body.end()); // u .. x
    Vertex q = pick_clear_multi(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2), {x_out});
    if (!compatible(LinearForest::validate(fr.Lb(3)), x_out, q))
        throw PlanFail("block-3 endpoints incompatible");
    // block 2 cover pairs (q_out, xo), (c, vo); block 3 cover via a pass-through
    Vertex q_out = partner(fr, q, fr.LF(2), {xo, vo});
    Vertex c = pick_clear_multi(view, fr.phys(2), fr.want(true), fr.Lb(2), fr.Lb(3),
                                {q_out});
    if (c == vo || q_out == vo || q_out == xo) throw PlanFail("block-2 anchors collide");
    auto [k1, k2] = block_cover(fr, 2, {}, q_out, xo, c, vo);
    Vertex c_out = partner(fr, c, fr.Lb(3), {});
    // c_out lands in block 3: split the block-3 single path there instead
    if (!compatible(LinearForest::validate(fr.Lb(3)), x_out, q))
        throw PlanFail("block-3 endpoints incompatible");
    auto sp3 = anchored_split(fr, 3, {}, x_out, q, c_out, q, EdgeSet{});
    // mate hangs into block 0: second opening
    Vertex m_out = sp3.mate_out;
    if (std::find(body.begin(), body.end(), m_out) == body.end())
        throw PlanFail("second opening missed the body");
    Vertex gg = [&]() {
        Vertex cc = nbr_toward(body, m_out, ue);
        if (contains(fr.Lb(0), Edge(view.host(), m_out, cc)) || cc == ue || cc == x)
            throw PlanFail("no usable body edge at the second opening");
        return cc;
    }();
    auto [bpa, bpb] = cut_edge(body, m_out, gg);
    Vertex g_out = partner(fr, gg, fr.LF(1), {xe});
    if (g_out == xe) throw PlanFail("block-1 entries collide");
    if (!compatible(LinearForest::validate(fr.Lb(1)), g_out, xe))
        throw PlanFail("block-1 endpoints incompatible");
    Path p1 = solve_block(fr, 1, {}, g_out, xe);
    Weave wv;
    wv.seg(bpa);
    wv.seg(bpb);
    wv.seg(k1);
    wv.seg(k2);
    wv.seg(sp3.piece_anchor);
    wv.seg(sp3.piece_mate);
    wv.seg(p1);
    wv.link(x, x_out);
    wv.link(q, q_out);
    wv.link(c, c_out);
    wv.link(sp3.mate, m_out);
    wv.link(gg, g_out);
    wv.link(xe, xo);
    return wv.assemble(view.host(), ue, vo);
}

// Withheld-fault body whose even endpoint u sits in the path interior: cut a
// free body edge at u and route the two pieces through covers in the clean
// outer blocks.
Path heavy_0j_pr1_interior(const Frame& fr, const Vertex& ue, const Vertex& vo, const Heavy& hv) {
    const auto& view = *fr.view;
    const int j = fr.log_block(vo);
    size_t iu = pos_of(hv.body, ue);
    std::optional<Vertex> cutv;
    std::vector<Vertex> around;
    if (iu > 0) around.push_back(hv.body[iu - 1]);
    if (iu + 1 < hv.body.size()) around.push_back(hv.body[iu + 1]);
    for (const Vertex& cand : around) {
        if (!contains(fr.Lb(0), Edge(view.host(), ue, cand))) {
            cutv = cand;
            break;
        }
    }
    if (!cutv) throw PlanFail("no free body edge at the endpoint");
    auto [piece_u, piece_far] = cut_edge(hv.body, ue, *cutv);
    if (!(piece_u.back() == ue)) {
        std::swap(piece_u, piece_far);
        std::reverse(piece_u.begin(), piece_u.end());
        std::reverse(piece_far.begin(), piece_far.end());
    }
    std::reverse(piece_u.begin(), piece_u.end()); // u .. f_u
    Vertex fu = piece_u.back();
    Vertex x = *cutv;                             // odd cut mate, hooks into block 3
    Vertex t = partner(fr, x, fr.LF(3), {});      // even-side landing in block 3
    bool exits_up = fr.log_even(fu);

    Weave wv;
    wv.seg(piece_u);
    wv.seg(piece_far);
    wv.link(x, t);

    if (exits_up) {
        // f_u = the even body end: up into block 1; the far piece ends at the
        // odd body end: down into block 3
        Vertex fr_end = piece_far.back() == x ? piece_far.front() : piece_far.back();
        if (!(piece_far.front() == x)) std::reverse(piece_far.begin(), piece_far.end());
        fr_end = piece_far.back();
        Vertex fu_out = partner(fr, fu, fr.LF(1), {vo});
        Vertex fr_out = partner(fr, fr_end, fr.LF(3), {t});
        wv.segs[1] = piece_far;
        wv.link(fu, fu_out);
        wv.link(fr_end, fr_out);
        if (j == 1) {
            Vertex c1 = pick_vertex_clear(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2),
                                          std::nullopt);
            Vertex y1 = pick_vertex_clear(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2), c1);
            auto [b1a, b1b] = block_cover(fr, 1, {}, c1, fu_out, y1, vo);
            Vertex c1o = partner(fr, c1, fr.LF(2));
            Vertex y1o = partner(fr, y1, fr.LF(2), {c1o});
            Vertex d = pick_clear_multi(view, fr.phys(2), fr.want(true), fr.Lb(2), fr.LF(3), {});
            Vertex zt = pick_clear_multi(view, fr.phys(2), fr.want(true), fr.Lb(2), fr.LF(3), {d});
            auto [b2a, b2b] = block_cover(fr, 2, {}, d, c1o, zt, y1o);
            Vertex d_out = partner(fr, d, fr.LF(3), {fr_out, t});
            Vertex zt_out = partner(fr, zt, fr.LF(3), {fr_out, t, d_out});
            auto [b3a, b3b] = block_cover(fr, 3, {}, fr_out, d_out, t, zt_out);
            wv.seg(b1a);
            wv.seg(b1b);
            wv.seg(b2a);
            wv.seg(b2b);
            wv.seg(b3a);
            wv.seg(b3b);
            wv.link(c1, c1o);
            wv.link(y1, y1o);
            wv.link(d, d_out);
            wv.link(zt, zt_out);
            return wv.assemble(view.host(), ue, vo);
        }
        if (j == 2) {
            Vertex c1 = pick_vertex_clear(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2),
                                          std::nullopt);
            Path p1 = solve_block(fr, 1, {}, fu_out, c1);
            Vertex c1o = partner(fr, c1, fr.LF(2), {vo});
            Vertex d = pick_vertex_clear(view, fr.phys(2), fr.want(true), fr.Lb(2), fr.LF(3),
                                         std::nullopt);
            Vertex z = pick_vertex_clear(view, fr.phys(2), fr.want(true), fr.Lb(2), fr.LF(3), d);
            auto [b2a, b2b] = block_cover(fr, 2, {}, d, c1o, z, vo);
            Vertex d_out = partner(fr, d, fr.LF(3), {fr_out, t});
            Vertex z_out = partner(fr, z, fr.LF(3), {fr_out, t, d_out});
            auto [b3a, b3b] = block_cover(fr, 3, {}, fr_out, d_out, t, z_out);
            wv.seg(p1);
            wv.seg(b2a);
            wv.seg(b2b);
            wv.seg(b3a);
            wv.seg(b3b);
            wv.link(c1, c1o);
            wv.link(d, d_out);
            wv.link(z, z_out);
            return wv.assemble(view.host(), ue, vo);
        }
        // j == 3
        Vertex c1 = pick_vertex_clear(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2),
                                      std::nullopt);
        Path p1 = solve_block(fr, 1, {}, fu_out, c1);
        Vertex c1o = partner(fr, c1, fr.LF(2));
        Vertex d = pick_vertex_clear(view, fr.phys(2), fr.want(true), fr.Lb(2), fr.LF(3),
                                     std::nullopt);
        Path p2 = solve_block(fr, 2, {}, c1o, d);
        Vertex d_out = partner(fr, d, fr.LF(3), {fr_out, t, vo});
        auto [b3a, b3b] = block_cover(fr, 3, {}, fr_out, d_out, t, vo);
        wv.seg(p1);
        wv.seg(p2);
        wv.seg(b3a);
        wv.seg(b3b);
        wv.link(c1, c1o);
        wv.link(d, d_out);
        return wv.assemble(view.host(), ue, vo);
    }

    // f_u odd: the u-piece exits down into block 3; the far piece ends at the
    // even body end, hooking up into block 1
    if (!(piece_far.front() == x)) std::reverse(piece_far.begin(), piece_far.end());
    wv.segs[1] = piece_far;
    Vertex fa = piece_far.back(); // even end
    Vertex fu_out = partner(fr, fu, fr.LF(3), {t});
    Vertex fa_out = partner(fr, fa, fr.LF(1), {vo});
    wv.link(fu, fu_out);
    wv.link(fa, fa_out);
    if (j == 1) {
        Vertex q1 = pick_clear_multi(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2),
                                     {fu_out, t});
        Vertex q2 = pick_clear_multi(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2),
                                     {fu_out, t, q1});
        auto [b3a, b3b] = block_cover(fr, 3, {}, fu_out, q1, t, q2);
        Vertex q1o = partner(fr, q1, fr.LF(2));
        Vertex q2o = partner(fr, q2, fr.LF(2), {q1o});
        Vertex r1 = pick_clear_multi(view, fr.phys(2), fr.want(false), fr.Lb(2), fr.LF(1),
                                     {q1o, q2o});
        Vertex r2 = pick_clear_multi(view, fr.phys(2), fr.want(false), fr.Lb(2), fr.LF(1),
                                     {q1o, q2o, r1});
        auto [b2a, b2b] = block_cover(fr, 2, {}, q1o, r1, q2o, r2);
        Vertex r1o = partner(fr, r1, fr.LF(1), {vo, fa_out});
        Vertex r2o = partner(fr, r2, fr.LF(1), {vo, fa_out, r1o});
        auto [b1a, b1b] = block_cover(fr, 1, {}, r1o, fa_out, r2o, vo);
        wv.seg(b3a);
        wv.seg(b3b);
        wv.seg(b2a);
        wv.seg(b2b);
        wv.seg(b1a);
        wv.seg(b1b);
        wv.link(q1, q1o);
        wv.link(q2, q2o);
        wv.link(r1, r1o);
        wv.link(r2, r2o);
        return wv.assemble(view.host(), ue, vo);
    }
    if (j == 2) {
        Vertex q1 = pick_clear_multi(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2),
                                     {fu_out, t});
        Vertex q2 = pick_clear_multi(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2),
                                     {fu_out, t, q1});
        auto [b3a, b3b] = block_cover(fr, 3, {}, fu_out, q1, t, q2);
        Vertex q1o = partner(fr, q1, fr.LF(2), {vo});
        Vertex q2o = partner(fr, q2, fr.LF(2), {vo, q1o});
        Vertex c = pick_vertex_clear(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2), fa_out);
        Vertex c_out = partner(fr, c, fr.LF(2), {vo, q1o, q2o});
        Path p1 = solve_block(fr, 1, {}, fa_out, c);
        auto [b2a, b2b] = block_cover(fr, 2, {}, q1o, c_out, q2o, vo);
        wv.seg(b3a);
        wv.seg(b3b);
        wv.seg(p1);
        wv.seg(b2a);
        wv.seg(b2b);
        wv.link(q1, q1o);
        wv.link(q2, q2o);
        wv.link(c, c_out);
        return wv.assemble(view.host(), ue, vo);
    }
    // j == 3
    Vertex q = pick_clear_multi(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2),
                                {fu_out, t, vo});
    if (vo == t || vo == fu_out) throw PlanFail("block-3 anchors collide");
    auto [b3a, b3b] = block_cover(fr, 3, {}, fu_out, q, t, vo);
    Vertex q_out = partner(fr, q, fr.LF(2));
    Vertex r = pick_vertex_clear(view, fr.phys(2), fr.want(false), fr.Lb(2), fr.LF(1), q_out);
    Path p2 = solve_block(fr, 2, {}, q_out, r);
    Vertex r_out = partner(fr, r, fr.LF(1), {fa_out});
    if (r_out == fa_out) throw PlanFail("block-1 entries collide");
    Path p1 = solve_block(fr, 1, {}, r_out, fa_out);
    wv.seg(b3a);
    wv.seg(b3b);
    wv.seg(p2);
    wv.seg(p1);
    wv.link(q, q_out);
    wv.link(r, r_out);
    return wv.assemble(view.host(), ue, vo);
}

// u in block 0. The body is opened beside u (cycle) or already ends at u
// (withheld-fault path); j names v's block.
Path heavy_0j(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    auto pin = frame_pin(fr);
    const int j0 = fr.log_block(vo);
    if (pin) {
        if (pin->l == 0) return plan_pin_at_u_block(fr, ue, vo);
        if (pin->l == 3) return heavy_0j_pin_into_heavy(fr, ue, vo);
        if (j0 == 3 && pin->l == 2) return heavy_0j_j3_pin2(fr, ue, vo);
        if (j0 == 2 && pin->l == 1) return heavy_0j_j2_pin1(fr, ue, vo);
        bool handled = (j0 == 1 && (pin->l == 1 || pin->l == 2)) ||
                       (j0 == 2 && pin->l == 2) || (j0 == 3 && pin->l == 1);
        if (!handled) throw PlanFail("heavy (0,j) cannot host this pin directly");
    }
    Heavy hv = make_heavy(fr);
    const auto& view = *fr.view;
    const int j = fr.log_block(vo);

    // the u-anchored body piece and its odd hook into block 3
    Path body_path;
    Vertex x, x_out;
    if (hv.is_cycle) {
        std::optional<Vertex> xx;
        if (pin && pin->l == 3) {
            auto nn = cycle_nbrs(hv.body, ue);
            if (!(nn[0] == pin->xo || nn[1] == pin->xo))
                throw PlanFail("pin not beside the endpoint on the cycle");
            if (contains(fr.Lb(0), Edge(view.host(), ue, pin->xo)))
                throw PlanFail("cycle edge at the pin is prescribed");
            xx = pin->xo;
        } else {
            xx = free_body_nbr(fr, hv, ue, {});
        }
        if (!xx) throw PlanFail("no free cycle edge at the endpoint");
        x = *xx;
        x_out = (pin && pin->l == 3) ? pin->xe : partner(fr, x, fr.LF(3), {vo});
        body_path = open_cycle(hv.body, ue, x);
        std::reverse(body_path.begin(), body_path.end());
        if (!(body_path.front() == ue)) std::reverse(body_path.begin(), body_path.end());
    } else {
        if (!(ue == hv.pa)) return heavy_0j_pr1_interior(fr, ue, vo, hv);
        x = hv.pb;
        x_out = partner(fr, x, fr.LF(3), {vo});
        body_path = hv.body;
    }

    if (j == 1) {
        // chain 0 -> 3 -> 2 -> 1
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
        if (r == q_out) throw PlanFail("block-2 anchors collide");
        if (!compatible(LinearForest::validate(fr.Lb(2)), q_out, r))
            throw PlanFail("block-2 endpoints incompatible");
        Path p2 = solve_block(fr, 2, {}, q_out, r);
        if (!compatible(LinearForest::validate(fr.Lb(1)), r_out, vo))
            throw PlanFail("block-1 endpoints incompatible");
        Path p1 = solve_block(fr, 1, {}, r_out, vo);
        Weave wv;
        wv.seg(body_path);
        wv.seg(p3);
        wv.seg(p2);
        wv.seg(p1);
        wv.link(x, x_out);
        wv.link(q, q_out);
        wv.link(r, r_out);
        return wv.assemble(view.host(), ue, vo);
    }

    EdgeOrient need = fr.sig > 0 ? EdgeOrient::even_first : EdgeOrient::odd_first;
    if (j == 2) {
        // like the light double-split, with the body as the block-0 path
        auto hp = orient(fr, pick_edge_on_path(view, body_path, false, fr.Lb(0),
                                               fr.LF(fr.sig > 0 ? 1 : 3), fr.LF(fr.sig > 0 ? 3 : 1),
                                               hv.is_cycle, std::nullopt, need, fr.all_faults));
        Vertex a = hp.ae, b = hp.bo, a_out = hp.ae_out, b_out = hp.bo_out;
        if (b_out == x_out) {
            auto alt = partner_opt(fr, b, fr.LF(3), {x_out});
            if (!alt) throw PlanFail("block-3 entries collide");
            b_out = *alt;
        }
        Vertex z;
        if (pin && pin->l == 2) {
            z = pin->xo;
        } else {
            z = pick_vertex_clear(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2), x_out);
        }
        if (z == x_out || z == b_out) throw PlanFail("block-3 anchors collide");
        if (!compatible(LinearForest::validate(fr.Lb(3)), x_out, z))
            throw PlanFail("block-3 endpoints incompatible");
        auto sp3 = anchored_split(fr, 3, {}, x_out, z, b_out, x_out, fr.LF(2));
        Vertex z_out = (pin && pin->l == 2) ? pin->xe : partner(fr, z, fr.LF(2), {sp3.mate_out, vo});
        if (z_out == sp3.mate_out || z_out == vo) throw PlanFail("block-2 entries collide");
        if (!compatible(LinearForest::validate(fr.Lb(2)), sp3.mate_out, vo))
            throw PlanFail("block-2 endpoints incompatible");
        auto sp2 = anchored_split(fr, 2, {}, sp3.mate_out, vo, z_out, sp3.mate_out, fr.LF(1),
                                  {a_out});
        if (sp2.mate_out == a_out) throw PlanFail("block-1 entries collide");
        if (!compatible(LinearForest::validate(fr.Lb(1)), a_out, sp2.mate_out))
            throw PlanFail("block-1 endpoints incompatible");
        Path p1 = solve_block(fr, 1, {}, a_out, sp2.mate_out);

        auto [s0a, s0b] = cut_edge(body_path, a, b);
        Weave wv;
        wv.seg(s0a);
        wv.seg(s0b);
        wv.seg(sp3.piece_anchor);
        wv.seg(sp3.piece_mate);
        wv.seg(sp2.piece_anchor);
        wv.seg(sp2.piece_mate);
        wv.seg(p1);
        wv.link(a, a_out);
        wv.link(sp2.mate, sp2.mate_out);
        wv.link(sp3.mate, sp3.mate_out);
        wv.link(z, z_out);
        wv.link(x, x_out);
        wv.link(b_out, b);
        return wv.assemble(view.host(), ue, vo);
    }

    // j == 3: anchored chain with the body as the block-0 path
    auto hp = orient(fr, pick_edge_on_path(view, body_path, false, fr.Lb(0),
                                           fr.LF(fr.sig > 0 ? 1 : 3), fr.LF(fr.sig > 0 ? 3 : 1),
                                           hv.is_cycle, std::nullopt, need, fr.all_faults));
    Vertex a = hp.ae, b = hp.bo, a_out = hp.ae_out, b_out = hp.bo_out;
    if (b_out == x_out) {
        auto alt = partner_opt(fr, b, fr.LF(3), {x_out});
        if (!alt) throw PlanFail("block-3 entries collide");
        b_out = *alt;
    }
    if (!compatible(LinearForest::validate(fr.Lb(3)), b_out, vo))
        throw PlanFail("block-3 endpoints incompatible");
    auto sp3 = anchored_split(fr, 3, {}, b_out, vo, x_out, b_out, fr.LF(2));
    Vertex c = (pin && pin->l == 1)
                   ? pin->xe
                   : pick_vertex_clear(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2), a_out);
    if (!compatible(LinearForest::validate(fr.Lb(1)), a_out, c))
        throw PlanFail("block-1 endpoints incompatible");
    Path p1 = solve_block(fr, 1, {}, a_out, c);
    Vertex c_out = (pin && pin->l == 1) ? pin->xo : partner(fr, c, fr.LF(2), {sp3.mate_out});
    if (c_out == sp3.mate_out) throw PlanFail("block-2 entries collide");
    if (!compatible(LinearForest::validate(fr.Lb(2)), c_out, sp3.mate_out))
        throw PlanFail("block-2 endpoints incompatible");
    Path p2 = solve_block(fr, 2, {}, c_out, sp3.mate_out);

    auto [s0a, s0b] = cut_edge(body_path, a, b);
    Weave wv;
    wv.seg(s0a);
    wv.seg(s0b);
    wv.seg(p1);
    wv.seg(p2);
    wv.seg(sp3.piece_anchor);
    wv.seg(sp3.piece_mate);
    wv.link(a, a_out);
    wv.link(c, c_out);
    wv.link(sp3.mate, sp3.mate_out);
    wv.link(x, x_out);
    wv.link(b_out, b);
    return wv.assemble(view.host(), ue, vo);
}

// ---- same-block placements ---------------------------------------------------

// u,v both in block 0.
// Shared tail: ring the outer blocks over a cut edge of the block-0 spine.
Path ring_over_spine(const Frame& fr, const Vertex& ue, const Vertex& vo, const Path& p0,
                     const std::optional<PinInfo>& pin) {
    const auto& view = *fr.view;
    const auto& h = view.host();
    if (p0.empty()) throw PlanFail("no block-0 spine");
    auto hp = orient(fr, pick_edge_on_path(view, p0, false, fr.Lb(0), fr.LF(fr.sig > 0 ? 1 : 3),
                                           fr.LF(fr.sig > 0 ? 3 : 1), true, std::nullopt,
                                           EdgeOrient::any, fr.all_faults));
    Vertex w1 = (pin && pin->l == 1)
                    ? pin->xe
                    : pick_vertex_clear(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2), hp.ae_out);
    Path p1 = solve_block(fr, 1, {}, hp.ae_out, w1);
    Vertex i2 = (pin && pin->l == 1) ? pin->xo : partner(fr, w1, fr.LF(2));
    Vertex w2 = (pin && pin->l == 2)
                    ? pin->xe
                    : pick_vertex_clear(view, fr.phys(2), fr.want(true), fr.Lb(2), fr.LF(3), i2);
    Path p2 = solve_block(fr, 2, {}, i2, w2);
    Vertex i3 = (pin && pin->l == 2) ? pin->xo : partner(fr, w2, fr.LF(3), {hp.bo_out});
    if (i3 == hp.bo_out) throw PlanFail("block-3 entries collide");
    Path p3 = solve_block(fr, 3, {}, i3, hp.bo_out);
    auto [s0a, s0b] = cut_edge(p0, hp.ae, hp.bo);
    Weave wv;
    wv.seg(s0a);
    wv.seg(s0b);
    wv.seg(p1);
    wv.seg(p2);
    wv.seg(p3);
    wv.link(hp.ae, hp.ae_out);
    wv.link(w1, i2);
    wv.link(w2, i3);
    wv.link(hp.bo_out, hp.bo);
    return wv.assemble(h, ue, vo);
}

// Spine via the lifted-edge surgery of the loaded block: drop one
// prescribed end edge (or withhold a fault) so the block admits a direct
// u-v path, then restore it through the ring.
Path heavy_00_lifted(const Frame& fr, const Vertex& ue, const Vertex& vo,
                     const std::optional<PinInfo>& pin) {
    const auto& view = *fr.view;
    const auto& h = view.host();
    LinearForest L0 = LinearForest::validate(fr.Lb(0));
    std::optional<Edge> lift;
    for (const auto& mp : L0.maximal_paths()) {
        for (const Vertex& end : {mp.front(), mp.back()}) {
            if (end == ue || end == vo) continue;
            lift = Edge(h, end, end == mp.front() ? mp[1] : mp[mp.size() - 2]);
            break;
        }
        if (lift) break;
    }
    EdgeSet lifted = fr.Lb(0);
    std::optional<Edge> withheld;
    EdgeSet F0 = fr.Fb(0);
    if (lift) lifted.erase(std::remove(lifted.begin(), lifted.end(), *lift), lifted.end());
    if (static_cast<int>(lifted.size() + F0.size()) > fr.sub_budget() && !F0.empty()) {
        withheld = F0.front();
        F0.erase(F0.begin());
    }
    if (!lift && !withheld) throw PlanFail("fully loaded block with nothing to lift");
    if (static_cast<int>(lifted.size() + F0.size()) > fr.sub_budget())
        throw PlanFail("lift did not reach the sub-budget");
    Frame tr = fr;
    tr.L[static_cast<size_t>(fr.logi(fr.phys(0)))] = lifted;
    tr.F[static_cast<size_t>(fr.logi(fr.phys(0)))] = F0;
    tr.L[0] = lifted;
    tr.F[0] = F0;
    if (!compatible(LinearForest::validate(lifted), ue, vo))
        throw PlanFail("lift incompatible with the endpoints");
    Path cand = solve_block(tr, 0, {}, ue, vo);
    auto on_path = [&](const Edge& e) {
        size_t i1 = pos_of(cand, e.a()), i2 = pos_of(cand, e.b());
        return i1 + 1 == i2 || i2 + 1 == i1;
    };
    if (lift && !on_path(*lift)) throw PlanFail("lifted edge missing from the block path");
    if (withheld && on_path(*withheld)) {
        // drop the withheld fault through the outer ring
        auto [sa, sb] = cut_edge(cand, withheld->a(), withheld->b());
        Vertex ra = fr.log_even(withheld->a()) ? withheld->a() : withheld->b();
        Vertex rb = fr.log_even(withheld->a()) ? withheld->b() : withheld->a();
        Vertex ra_out = partner(fr, ra, fr.LF(1), {vo});
        Vertex rb_out = partner(fr, rb, fr.LF(3), {ue});
        Vertex w1 = pick_vertex_clear(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2), ra_out);
        Path p1 = solve_block(fr, 1, {}, ra_out, w1);
        Vertex i2 = partner(fr, w1, fr.LF(2));
        Vertex w2 = pick_vertex_clear(view, fr.phys(2), fr.want(true), fr.Lb(2), fr.LF(3), i2);
        Path p2 = solve_block(fr, 2, {}, i2, w2);
        Vertex i3 = partner(fr, w2, fr.LF(3), {rb_out});
        Path p3 = solve_block(fr, 3, {}, i3, rb_out);
        Weave wv;
        wv.seg(sa);
        wv.seg(sb);
        wv.seg(p1);
        wv.seg(p2);
        wv.seg(p3);
        wv.link(ra, ra_out);
        wv.link(w1, i2);
        wv.link(w2, i3);
        wv.link(rb_out, rb);
        return wv.assemble(h, ue, vo);
    }
    return ring_over_spine(fr, ue, vo, cand, pin);
}

// Same-block endpoints on a covering cycle, u and v not cycle-adjacent:
// open beside each endpoint (a at u, b at v) and bridge per the arc layout.
Path heavy_00_nonadjacent(const Frame& fr, const Vertex& ue, const Vertex& vo, const Heavy& hv,
                          const Vertex& a, const Vertex& b) {
    const auto& view = *fr.view;
    const auto& h = view.host();
    auto pin = frame_pin(fr);
    if (pin && !(pin->l == 0 || pin->l == 3))
        throw PlanFail("non-adjacent spine hosts pins leaving block 0 only");
    if (pin && (pin->xe == ue || pin->xe == vo || pin->xo == ue || pin->xo == vo ||
                pin->xe == a || pin->xo == a || pin->xe == b || pin->xo == b))
        throw PlanFail("pin collides with the spine anchors");
    Vertex a_out = partner(fr, a, fr.LF(3), {});
    Vertex b_out = partner(fr, b, fr.LF(1), {});
    // arcs after removing (u,a),(v,b)
    Path arc_from_u = cycle_walk(hv.body, ue, vo, a);
    bool config_a = [&] {
        // does the walk from u away from a reach v without passing b?
        for (const auto& w : arc_from_u)
            if (w == b && !(w == vo)) return false;
        return true;
    }();
    if (!config_a) {
        if (pin) throw PlanFail("chain arcs cannot carry the pin");
        // arcs are [u..b] and [a..v]: same chain, entered at b
        Path arcB = cycle_walk(hv.body, ue, b, a);
        Path arcA = cycle_walk(hv.body, a, vo, ue);
        Vertex xx = pick_vertex_clear(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2),
                                      b_out);
        if (!compatible(LinearForest::validate(fr.Lb(1)), b_out, xx))
            throw PlanFail("block-1 endpoints incompatible");
        Path p1 = solve_block(fr, 1, {}, b_out, xx);
        Vertex yy = pick_vertex_clear(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2),
                                      a_out);
        if (!compatible(LinearForest::validate(fr.Lb(3)), a_out, yy))
            throw PlanFail("block-3 endpoints incompatible");
        Path p3 = solve_block(fr, 3, {}, a_out, yy);
        Vertex xx_out = partner(fr, xx, fr.LF(2));
        Vertex yy_out = partner(fr, yy, fr.LF(2), {xx_out});
        if (!compatible(LinearForest::validate(fr.Lb(2)), xx_out, yy_out))
            throw PlanFail("block-2 endpoints incompatible");
        Path p2 = solve_block(fr, 2, {}, xx_out, yy_out);
        Weave wv;
        wv.seg(arcB);
        wv.seg(arcA);
        wv.seg(p1);
        wv.seg(p2);
        wv.seg(p3);
        wv.link(b, b_out);
        wv.link(xx, xx_out);
        wv.link(yy_out, yy);
        wv.link(a_out, a);
        return wv.assemble(h, ue, vo);
    }
    // the u-v arc avoids both a and b: cut it at a strict edge and
    // bridge through splits beside the hooks plus a block-2 cover
    Path arc_ab = cycle_walk(hv.body, a, b, ue);
    HookPair st;
    if (pin) {
        const Vertex anchor = pin->l == 0 ? pin->xe : pin->xo;
        if (std::find(arc_from_u.begin(), arc_from_u.end(), anchor) == arc_from_u.end())
            throw PlanFail("pin endpoint off the u-v arc");
        std::optional<Vertex> mate;
        for (const Vertex& cand :
             {nbr_toward(arc_from_u, anchor, vo), nbr_toward(arc_from_u, anchor, ue)}) {
            Edge e(h, anchor, cand);
            if (contains(fr.Lb(0), e)) continue;
            if (partner_opt(fr, cand, pin->l == 0 ? fr.LF(3) : fr.LF(1), {})) {
                mate = cand;
                break;
            }
        }
        if (!mate) throw PlanFail("no usable arc edge at the pin endpoint");
        if (pin->l == 0) {
            st.ae = anchor;
            st.bo = *mate;
            st.ae_out = pin->xo;
            st.bo_out = partner(fr, *mate, fr.LF(3), {});
        } else {
            st.bo = anchor;
            st.ae = *mate;
            st.bo_out = pin->xe;
            st.ae_out = partner(fr, *mate, fr.LF(1), {});
        }
    } else {
        st = orient(fr, pick_edge_on_path(view, arc_from_u, false, fr.Lb(0),
                                          fr.LF(fr.sig > 0 ? 1 : 3), fr.LF(fr.sig > 0 ? 3 : 1),
                                          true, std::nullopt, EdgeOrient::any, fr.all_faults));
    }
    Vertex xp = pick_clear_multi(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2),
                                 {st.ae});
    if (!compatible(LinearForest::validate(fr.Lb(1)), st.ae_out, xp))
        throw PlanFail("block-1 endpoints incompatible");
    auto sp1 = anchored_split(fr, 1, {}, st.ae_out, xp, b_out, st.ae_out, fr.LF(2));
    Vertex yp = pick_clear_multi(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2),
                                 {st.bo});
    if (!compatible(LinearForest::validate(fr.Lb(3)), st.bo_out, yp))
        throw PlanFail("block-3 endpoints incompatible");
    auto sp3 = anchored_split(fr, 3, {}, st.bo_out, yp, a_out, yp, fr.LF(2));
    Vertex xp_out = partner(fr, xp, fr.LF(2), {sp1.mate_out, sp3.mate_out});
    Vertex yp_out = partner(fr, yp, fr.LF(2), {sp1.mate_out, sp3.mate_out, xp_out});
    auto [c1, c2] = block_cover(fr, 2, {}, sp1.mate_out, sp3.mate_out, xp_out, yp_out);
    auto [pu, pv] = cut_edge(arc_from_u, st.ae, st.bo);
    Weave wv;
    wv.seg(pu);
    wv.seg(pv);
    wv.seg(arc_ab);
    wv.seg(sp1.piece_anchor);
    wv.seg(sp1.piece_mate);
    wv.seg(sp3.piece_anchor);
    wv.seg(sp3.piece_mate);
    wv.seg(c1);
    wv.seg(c2);
    wv.link(st.ae, st.ae_out);
    wv.link(st.bo, st.bo_out);
    wv.link(a, a_out);
    wv.link(b, b_out);
    wv.link(sp1.mate, sp1.mate_out);
    wv.link(sp3.mate, sp3.mate_out);
    wv.link(xp, xp_out);
    wv.link(yp, yp_out);
    return wv.assemble(h, ue, vo);
}


// Loaded block without an H-cycle: withhold one fault, anchor the block
// path at the endpoints directly and drop the fault through the outer ring
// if it gets used.
Path heavy_00_withheld(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    const auto& view = *fr.view;
    std::string last = "no withholding candidate";
    for (size_t fi = 0; fi < fr.Fb(0).size(); ++fi) {
        try {
            Frame tr = fr;
            EdgeSet rest = fr.Fb(0);
            Edge f = rest[fi];
            rest.erase(rest.begin() + static_cast<long>(fi));
            tr.F[0] = rest;
            Path cand = solve_block(tr, 0, {}, ue, vo);
            size_t i1 = pos_of(cand, f.a()), i2 = pos_of(cand, f.b());
            bool f_on = i1 + 1 == i2 || i2 + 1 == i1;
            Weave wv;
            Vertex ra, rb; // ring hooks
            if (f_on) {
                auto [sa, sb] = cut_edge(cand, f.a(), f.b());
                ra = fr.log_even(f.a()) ? f.a() : f.b();
                rb = fr.log_even(f.a()) ? f.b() : f.a();
                wv.seg(sa);
                wv.seg(sb);
            } else {
                auto hp = orient(fr, pick_edge_on_path(view, cand, false, fr.Lb(0),
                                                       fr.LF(fr.sig > 0 ? 1 : 3),
                                                       fr.LF(fr.sig > 0 ? 3 : 1), true,
                                                       std::nullopt, EdgeOrient::any,
                                                       fr.all_faults));
                ra = hp.ae;
                rb = hp.bo;
                auto [sa, sb] = cut_edge(cand, ra, rb);
                if (!(sa.back() == ra)) std::swap(sa, sb);
                wv.seg(sa);
                wv.seg(sb);
            }
            Vertex ra_out = partner(fr, ra, fr.LF(1), {vo});
            Vertex rb_out = partner(fr, rb, fr.LF(3), {ue});
            Vertex w1 = pick_vertex_clear(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2),
                                          ra_out);
            Path p1 = solve_block(fr, 1, {}, ra_out, w1);
            Vertex i2v = partner(fr, w1, fr.LF(2));
            Vertex w2 = pick_vertex_clear(view, fr.phys(2), fr.want(true), fr.Lb(2), fr.LF(3), i2v);
            Path p2 = solve_block(fr, 2, {}, i2v, w2);
            Vertex i3 = partner(fr, w2, fr.LF(3), {rb_out});
            Path p3 = solve_block(fr, 3, {}, i3, rb_out);
            wv.seg(p1);
            wv.seg(p2);
            wv.seg(p3);
            wv.link(ra, ra_out);
            wv.link(w1, i2v);
            wv.link(w2, i3);
            wv.link(rb_out, rb);
            return wv.assemble(view.host(), ue, vo);
        } catch (const PlanFail& e) {
            last = e.what();
        } catch (const NoCandidate& e) {
            last = e.what();
        }
    }
    throw PlanFail(std::string("withheld route failed: ") + last);
}

Path heavy_00(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    auto pin = frame_pin(fr);
    if (fr.load(0) == 2 * fr.n - 3) {
        try {
            Frame probe = fr;
            (void)block_cycle(probe, 0);
        } catch (const PlanFail&) {
            return heavy_00_withheld(fr, ue, vo);
        }
    }
    Heavy hv = make_heavy(fr);
    const auto& view = *fr.view;
    const auto& h = view.host();

    // Reduce to a block-0 path from u to v, then ring the outer blocks like
    // the light same-block plan.
    Path p0;
    if (hv.is_cycle) {
        auto nn = cycle_nbrs(hv.body, ue);
        bool adjacent = nn[0] == vo || nn[1] == vo;
        Edge uv = adjacent ? Edge(h, ue, vo) : Edge(h, hv.body.front(), hv.body.back());
        if (adjacent && !contains(fr.Lb(0), uv)) {
            p0 = open_cycle(hv.body, ue, vo);
        } else {
            // open beside u and beside v and bridge the two arcs through the
            // outer ring separately (config A), or fall back to a direct
            // recursive path when the load still fits with one lifted edge
// both free cycle edges at each endpoint are admissible; the
            // choice decides the arc layout, so try the combinations
            std::vector<Vertex> acands, bcands;
            for (const Vertex& c : cycle_nbrs(hv.body, ue))
                if (!(c == vo) && !contains(fr.Lb(0), Edge(h, ue, c))) acands.push_back(c);
            for (const Vertex& c : cycle_nbrs(hv.body, vo))
                if (!(c == ue) && !contains(fr.Lb(0), Edge(h, vo, c))) bcands.push_back(c);
            if (acands.empty() || bcands.empty())
                throw PlanFail("no free cycle edges beside the endpoints");
            std::string nonadj_err = "?";
            for (const Vertex& atry : acands)
                for (const Vertex& btry : bcands) {
                    try {
                        return heavy_00_nonadjacent(fr, ue, vo, hv, atry, btry);
                    } catch (const PlanFail& e) {
                        nonadj_err = e.what();
                    } catch (const NoCandidate& e) {
                        nonadj_err = e.what();
                    }
                }
            auto pin2 = frame_pin(fr);
            if (pin2 && (pin2->l == 1 || pin2->l == 2)) return heavy_00_lifted(fr, ue, vo, pin2);
            throw PlanFail(std::string("non-adjacent spine exhausted: ") + nonadj_err);
        }
    } else {
        return heavy_00_lifted(fr, ue, vo, pin);
    }

    return ring_over_spine(fr, ue, vo, p0, pin);
}

// u,v both in block k != 0.
Path heavy_kk(const Frame& fr, const Vertex& ue, const Vertex& vo) {
    auto pin = frame_pin(fr);
    const auto& view = *fr.view;
    const int k = fr.log_block(ue);
    Heavy hv = make_heavy(fr);

    if (k == 1 && pin && pin->l == 1) {
        // both endpoints beside the pin's even end: force an edge at it, cut
        // it out, and route the dangling mate through a body opening
        if (!hv.is_cycle) throw PlanFail("pin with a path-covered block");
        const Vertex xe = pin->xe, xo = pin->xo;
        if (xe == ue || xo == vo) throw PlanFail("pin touches an endpoint");
        Vertex w = pick_extension_neighbor(view, xe, fr.Lb(1), fr.Fb(1), ue, vo, fr.Lb(0), false);
        Path p1 = solve_block(fr, 1, {Edge(view.host(), xe, w)}, ue, vo);
        auto [s1a, s1b] = cut_edge(p1, xe, w);
        Vertex w_out = partner(fr, w, fr.Lb(0), {});
        auto gg = free_body_nbr(fr, hv, w_out, {});
        if (!gg) throw PlanFail("no free body edge at the pin hook");
        Path arc = open_cycle(hv.body, w_out, *gg);
        Vertex g_out = partner(fr, *gg, fr.LF(3), {});
        Vertex q = pick_clear_multi(view, fr.phys(3), fr.want(false), fr.Lb(3), fr.LF(2), {g_out});
        if (!compatible(LinearForest::validate(fr.Lb(3)), g_out, q))
            throw PlanFail("block-3 endpoints incompatible");
        Path p3 = solve_block(fr, 3, {}, g_out, q);
        Vertex q_out = partner(fr, q, fr.LF(2), {xo});
        if (q_out == xo) throw PlanFail("block-2 entries collide");
        if (!compatible(LinearForest::validate(fr.Lb(2)), q_out, xo))
            throw PlanFail("block-2 endpoints incompatible");
        Path p2 = solve_block(fr, 2, {}, q_out, xo);
        Weave wv;
        wv.seg(s1a);
        wv.seg(s1b);
        wv.seg(arc);
        wv.seg(p3);
        wv.seg(p2);
        wv.link(xe, xo);
        wv.link(w, w_out);
        wv.link(*gg, g_out);
        wv.link(q, q_out);
        return wv.assemble(view.host(), ue, vo);
    }
    if (k == 1) {
        HookSet hs = open_body(fr, hv, pin, false, {ue, vo});
        // block 1: path u -> v, split at the body hook a_out, mate toward v
        auto sp1 = anchored_split(fr, 1, {}, ue, vo, hs.a_out, vo, fr.LF(2));
        Vertex y, y_out;
        if (pin && pin->l == 2) {
            y = pin->xe;
            y_out = pin->xo;
        } else {
            y = pick_vertex_clear(view, fr.phys(2), fr.want(true), fr.Lb(2), fr.LF(3), sp1.mate_out);
            y_out = partner(fr, y, fr.LF(3), {hs.b_out});
        }
        if (y == sp1.mate_out || y_out == hs.b_out) throw PlanFail("ring anchors collide");
        if (!compatible(LinearForest::validate(fr.Lb(2)), sp1.mate_out, y))
            throw PlanFail("block-2 endpoints incompatible");
        Path p2 = solve_block(fr, 2, {}, sp1.mate_out, y);
        if (!compatible(LinearForest::validate(fr.Lb(3)), y_out, hs.b_out))
            throw PlanFail("block-3 endpoints incompatible");
        Path p3 = solve_block(fr, 3, {}, y_out, hs.b_out);
        Weave wv;
        add_pieces(wv, hs);
        wv.seg(sp1.piece_anchor);
        wv.seg(sp1.piece_mate);
        wv.seg(p2);
        wv.seg(p3);
        wv.link(hs.a, hs.a_out);
        wv.link(hs.b, hs.b_out);
        wv.link(sp1.mate, sp1.mate_out);
        wv.link(y, y_out);
        return wv.assemble(view.host(), ue, vo);
    }
    if (k == 2) {
        // body hooked via a pick in block 1 and an opening at its partner
        if (!hv.is_cycle) {
            // path body: hooks are the ends
            HookSet hs = open_body(fr, hv, pin, false, {ue, vo});
            // block 2: u->v split at a bridge from block 1; block 1 path from
            // a_out to c; block 3 path from b_out to the other bridge
            Vertex c = pick_vertex_clear(view, fr.phys(1), fr.want(true), fr.Lb(1), fr.LF(2),
                                         hs.a_out);
            Path p1 = solve_block(fr, 1, {}, hs.a_out, c);
            Vertex c_out = partner(fr, c, fr.LF(2), {ue});
            auto sp2 = anchored_split(fr, 2, {}, ue, vo, c_out, vo, fr.LF(3));
            if (sp2.mate_out == hs.b_out) throw PlanFail("block-3 entries collide");
            if (!compatible(LinearForest::validate(fr.Lb(3)), sp2.mate_out, hs.b_out))
                throw PlanFail("block-3 endpoints incompatible");
            Path p3 = solve_block(fr, 3, {}, sp2.mate_out, hs.b_out);
            Weave wv;
            add_pieces(wv, hs);
            wv.seg(p1);
            wv.seg(sp2.piece_anchor);
            wv.seg(sp2.piece_mate);
            wv.seg(p3);
            wv.link(hs.a, hs.a_out);
            wv.link(hs.b, hs.b_out);
            wv.link(c, c_out);
            wv.link(sp2.mate, sp2.mate_out);
            return wv.assemble(view.host(), ue, vo);
        }
        // cycle body: open it at a block-1 pick's partner
        Vertex c, c_out, dd, dd_out;
        if (pin && pin->l == 0) {
            c_out = pin->xe;
            c = pin->xo;
            auto mate = free_body_nbr(fr, hv, c_out, {});
            if (!mate) throw PlanFail("no free cycle edge at the pin endpoint");
            dd = *mate;
            dd_out = partner(fr, dd, fr.LF(3), {});
        } else if (pin && pin->l == 3) {
            dd = pin->xo;
            dd_out = pin->xe;
            auto mate = free_body_nbr(fr, hv, dd, {});
            if (!mate) throw PlanFail("no free cycle edge at the pin endpoint");
            c_out = *mate;
            c = partner(fr, c_out, fr.LF(1), {});
        } else {
            c = pick_vertex_clear(view, fr.phys(1), fr.want(false), fr.Lb(1), fr.LF(0), std::nullopt);
            c_out = partner(fr, c, fr.Lb(0), {});
            auto mate = free_body_nbr(fr, hv, c_out, {});
            if (!mate) throw PlanFail("no free cycle edge at the hook");
            dd = *mate;
            dd_out = partner(fr, dd, fr.LF(3), {});
        }
        Path arc = open_cycle(hv.body, c_out, dd);
        // block 2: u -> v with a cut toward blocks 1 and 3
        Path p2 = solve_block(fr, 2, {}, ue, vo);
        EdgeOnPath eop = pick_edge_on_path(view, p2, false, fr.Lb(2), fr.LF(fr.sig > 0 ? 3 : 1),
                                           fr.LF(fr.sig > 0 ? 1 : 3), false,
                                           pin ? std::optional<Vertex>(pin->l == 1 ? pin->xe : pin->xo)
                                               : std::nullopt,
                                           EdgeOrient::any, fr.all_faults);
        HookPair hp = orient(fr, eop); // ae up into 3, bo down into 1
        Vertex ah = hp.ae, bh = hp.bo;
        Vertex ah_out = (pin && pin->l == 2) ? pin->xo : hp.ae_out;
        if (pin && pin->l == 2) {
            // reroute the cut through the pin: cut at xe instead
            ah = pin->xe;
            std::optional<Vertex> mate;
            for (const Vertex& candm : {nbr_toward(p2, ah, vo), nbr_toward(p2, ah, ue)}) {
                Edge e(view.host(), ah, candm);
                if (contains(fr.Lb(2), e)) continue;
                if (partner_opt(fr, candm, fr.LF(1), {c})) {
                    mate = candm;
                    break;
                }
            }
            if (!mate) throw PlanFail("no free path edge at the pin endpoint");
            bh = *mate;
        }
        Vertex bh_out = (pin && pin->l == 1) ? pin->xe : partner(fr, bh, fr.LF(1), {c});
        if (pin && pin->l == 1) {
            if (!(bh == pin->xo)) {
                // cut at the pin's odd end
                bh = pin->xo;
                std::optional<Vertex> mate;
                for (const Vertex& candm : {nbr_toward(p2, bh, ue), nbr_toward(p2, bh, vo)}) {
                    Edge e(view.host(), bh, candm);
                    if (contains(fr.Lb(2), e)) continue;
                    if (partner_opt(fr, candm, fr.LF(3), {dd_out})) {
                        mate = candm;
                        break;
                    }
                }
                if (!mate) throw PlanFail("no free path edge at the pin endpoint");
                ah = *mate;
                bh_out = pin->xe;
            }
            ah_out = partner(fr, ah, fr.LF(3), {dd_out});
        }
        if (ah_out == dd_out) throw PlanFail("block-3 entries collide");
        if (bh_out == c) throw PlanFail("block-1 entries collide");
        Edge cut(view.host(), ah, bh);
        size_t i1 = pos_of(p2, ah), i2p = pos_of(p2, bh);
        if (i1 + 1 != i2p && i2p + 1 != i1) throw PlanFail("pin cut is not a path edge");
        if (contains(fr.Lb(2), cut)) throw PlanFail("pin cut is prescribed");
        if (!compatible(LinearForest::validate(fr.Lb(3)), ah_out, dd_out))
            throw PlanFail("block-3 endpoints incompatible");
        Path p3 = solve_block(fr, 3, {}, ah_out, dd_out);
        if (!compatible(LinearForest::validate(fr.Lb(1)), bh_out, c))
            throw PlanFail("block-1 endpoints incompatible");
        Path p1 = solve_block(fr, 1, {}, bh_out, c);
        auto [s2a, s2b] = cut_edge(p2, ah, bh);
        Weave wv;
        wv.seg(arc);
        wv.seg(s2a);
        wv.seg(s2b);
        wv.seg(p1);
        wv.seg(p3);
        wv.link(c, c_out);
        wv.link(dd, dd_out);
        wv.link(ah, ah_out);
        wv.link(bh, bh_out);
        return wv.assemble(view.host(), ue, vo);
    }
    throw PlanFail("heavy same-block placement deferred to the mirror frame");
}

} // namespace

Path plan_heavy(const Frame& fr0, const Vertex& u, const Vertex& v) {
    Frame fr = fr0;
    Vertex ue = fr.log_even(u) ? u : v;
    Vertex vo = fr.log_even(u) ? v : u;
    int i = fr.log_block(ue), j = fr.log_block(vo);
    if (i == 0 && j == 0) return heavy_00(fr, ue, vo);
    if (i == j) return heavy_kk(fr, ue, vo);
    if (i == 0) return heavy_0j(fr, ue, vo);
    if (j == 0) throw PlanFail("heavy (k,0) deferred to the mirror frame");
    if (i == 1 && j == 2) return heavy_12(fr, ue, vo);
    if (i == 2 && j == 3) return heavy_23(fr, ue, vo);
    if (i == 1 && j == 3) return heavy_13(fr, ue, vo);
    if (i == 2 && j == 1) return heavy_21(fr, ue, vo);
    if (i == 3 && j == 1) return heavy_31(fr, ue, vo);
    throw PlanFail("heavy placement (" + std::to_string(i) + "," + std::to_string(j) +
                   ") deferred to the mirror frame");
}

} // namespace bh::detail
