// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Expected total runtime is a few minutes on a desktop.
#include <chrono>
#include <cstdio>
#include <random>
#include <set>

#include "bh/compare.hpp"
#include "bh/constructor.hpp"
#include "bh/gen.hpp"
#include "bh/partition.hpp"
#include "bh/solvers.hpp"
#include "bh/validate.hpp"

using namespace bh;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, name,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

double secs_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1: full certification of BH_2 at budget 2 --------------------
void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    CertReport rep = certify(2, 2);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%llu cases, %zu failures, %llu inconclusive (%.1fs)",
                  static_cast<unsigned long long>(rep.instances_checked), rep.failures.size(),
                  static_cast<unsigned long long>(rep.inconclusive), secs_since(t0));
    report(1, "BH_2 is 2-fault-tolerant-prescribed hamiltonian laceable", rep.ok(), buf);
}

// ---- criterion 2: BH_1 budgets 0 and 1 --------------------------------------
void criterion2() {
    CertReport r0 = certify(1, 0);
    CertReport r1 = certify(1, 1);
    bool witness = false;
    BalancedHypercube h1(1);
    Edge w23(h1, Vertex::from_string("2"), Vertex::from_string("3"));
    for (const auto& f : r1.failures)
        if (f.F.size() == 1 && f.F[0] == w23 && f.u == Vertex::from_string("0") &&
            f.v == Vertex::from_string("3") && !f.inconclusive)
            witness = true;
    bool ok = r0.ok() && !r1.failures.empty() && witness;
    char buf[120];
    std::snprintf(buf, sizeof buf, "k=0: %zu failures; k=1: %zu failures, witness %s",
                  r0.failures.size(), r1.failures.size(), witness ? "found" : "missing");
    report(2, "BH_1 laceable at budget 0, tight at budget 1", ok, buf);
}

// ---- criterion 3: topology invariants up to n = 4 ---------------------------
void criterion3() {
    auto t0 = std::chrono::steady_clock::now();
    std::string why;
    bool ok = true;
    auto fail = [&](const std::string& msg) {
        if (ok) why = msg;
        ok = false;
    };
    for (int n = 1; n <= 4 && ok; ++n) {
        BalancedHypercube h(n);
        if (h.vertex_count() != (size_t{1} << (2 * n))) fail("vertex count");
        size_t even = 0;
        for (const Vertex& v : h.vertices()) {
            auto nb = h.neighbors(v);
            std::set<Vertex> uniq(nb.begin(), nb.end());
            if (uniq.size() != static_cast<size_t>(2 * n)) fail("regularity at " + v.str());
            for (const Vertex& w : nb)
                if (w.parity() == v.parity()) fail("bipartiteness at " + v.str());
            if (v.even()) ++even;
            Vertex s = h.shadow(v);
            auto nbs = h.neighbors(s);
            if (std::set<Vertex>(nbs.begin(), nbs.end()) != uniq) fail("shadow neighbors at " + v.str());
            if (h.shadow(s) != v || s == v) fail("shadow involution at " + v.str());
        }
        if (even * 2 != h.vertex_count()) fail("equal parts");
        if (n < 2) continue;
        for (int j = 1; j < n; ++j) {
            PartitionView view(h, j);
            const BalancedHypercube& sub = view.sub();
            for (int b = 0; b < 4 && ok; ++b) {
                std::set<Vertex> image;
                for (const Vertex& v : view.block_vertices(b)) {
                    image.insert(view.to_sub(v));
                    for (const Vertex& w : h.neighbors(v)) {
                        Edge e(h, v, w);
                        if (e.dim() == j) {
                            if (view.block_of(w) != (view.block_of(v) + (v.even() ? 1 : 3)) % 4)
                                fail("crossing block");
                        } else if (!sub.adjacent(view.to_sub(v), view.to_sub(w))) {
                            fail("drop-digit adjacency");
                        }
                    }
                }
                if (image.size() != sub.vertex_count()) fail("block bijection");
            }
        }
        if (n > 3) continue;
        for (int d = 1; d < n; ++d)
            for (int c = 0; c < 4 && ok; ++c) {
                DigitShift f(h, d, c);
                for (const Vertex& v : h.vertices())
                    for (const Vertex& w : h.neighbors(v))
                        if (!h.adjacent(f(v), f(w))) fail("digit shift automorphism");
            }
        for (int a = 1; a < n; ++a)
            for (int b = 1; b < n && ok; ++b) {
                DigitSwap f(h, a, b);
                for (const Vertex& v : h.vertices())
                    for (const Vertex& w : h.neighbors(v))
                        if (!h.adjacent(f(v), f(w))) fail("digit swap automorphism");
            }
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "%s (%.1fs)", ok ? "n<=4 exhaustive" : why.c_str(), secs_since(t0));
    report(3, "topology invariants", ok, buf);
}

// ---- criterion 4: theorem subroutines exhaustive at BH_2 ---------------------
void criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    BalancedHypercube h(2);
    std::vector<Vertex> X, Y;
    for (const Vertex& v : h.vertices()) (v.even() ? X : Y).push_back(v);
    bool ok = true;
    std::string why;
    // hamiltonian laceability: every even/odd pair
    for (const Vertex& u : X)
        for (const Vertex& v : Y) {
            auto r = ham_path(h, {}, LinearForest{}, u, v);
            if (!r.found()) {
                ok = false;
                why = "laceability " + u.str() + "-" + v.str();
            }
        }
    // two-path covers: all pairwise distinct u,x in X and v,y in Y
    long covers = 0;
    for (const Vertex& u : X)
        for (const Vertex& x : X) {
            if (x == u) continue;
            for (const Vertex& v : Y)
                for (const Vertex& y : Y) {
                    if (y == v) continue;
                    auto r = two_path_cover(h, u, v, x, y);
                    ++covers;
                    if (!r.found()) {
                        ok = false;
                        why = "cover " + u.str() + "," + v.str() + "|" + x.str() + "," + y.str();
                    }
                }
        }
    // vertex-deleted paths: every (w, x, y) in both parity orientations
    for (const Vertex& w : h.vertices())
        for (const Vertex& x : h.vertices()) {
            if (x.parity() == w.parity()) continue;
            for (const Vertex& y : h.vertices()) {
                if (y.parity() == w.parity() || y == x || !(x < y)) continue;
                auto r = ham_path_minus_vertex(h, w, x, y);
                if (!r.found()) {
                    ok = false;
                    why = "deleted " + w.str() + ": " + x.str() + "-" + y.str();
                }
            }
        }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%ld covers + 64 laceability pairs + 448 deleted-vertex paths (%.1fs)%s%s",
                  covers, secs_since(t0), ok ? "" : " first miss: ", ok ? "" : why.c_str());
    report(4, "cited theorem statements exhaustively witnessed at BH_2", ok, buf);
}

// ---- criterion 5: constructor/oracle agreement at n = 3 ----------------------
void criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    CompareOptions opt;
    opt.oracle_subsample = 4; // 50 of 200
    RunStats st = run_compare(3, 200, 4, 42, opt);
    bool ok = st.failures == 0 && st.successes + st.unsupported == st.instances &&
              st.unsupported == st.unsupported_solved && st.oracle_inconclusive == 0;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%d/%d constructed, %d unsupported (%d oracle-solved), %d cross-checks, %d failures (%.1fs)",
                  st.successes, st.instances, st.unsupported, st.unsupported_solved,
                  st.oracle_agreements, st.failures, secs_since(t0));
    report(5, "constructor validates and agrees with the oracle at n=3", ok, buf);
}

// ---- criterion 6: lemma-margin property suite --------------------------------
struct MarginHarness {
    std::mt19937_64 rng;
    int n;
    BalancedHypercube h;
    PartitionView view;

    explicit MarginHarness(int n_, std::uint64_t seed) : rng(seed), n(n_), h(n_), view(h, n_ - 1) {}

    Vertex rnd_vertex(int block, Parity p) {
        while (true) {
            Vertex v = view.from_sub(block, Vertex::from_rank(n - 1, rng() % view.sub().vertex_count()));
            if (v.parity() == p) return v;
        }
    }

    // random forest/fault sets inside one block with a load cap
    void rnd_block_sets(int block, int max_load, EdgeSet& L, EdgeSet& F) {
        L.clear();
        F.clear();
        if (max_load <= 0) return;
        int total = static_cast<int>(rng() % static_cast<std::uint64_t>(max_load + 1));
        int nl = static_cast<int>(rng() % static_cast<std::uint64_t>(total + 1));
        LinearForest lf;
        int guard = 0;
        while (static_cast<int>(L.size() + F.size()) < total && guard++ < 400) {
            Vertex v = view.from_sub(block, Vertex::from_rank(n - 1, rng() % view.sub().vertex_count()));
            auto nb = h.neighbors(v);
            Vertex w = nb[rng() % nb.size()];
            if (view.block_of(w) != block) continue;
            Edge e(h, v, w);
            if (contains(L, e) || contains(F, e)) continue;
            if (static_cast<int>(L.size()) < nl) {
                if (!lf.can_add(e)) continue;
                lf = lf.plus(e);
                L.push_back(e);
                sort_unique(L);
            } else {
                F.push_back(e);
                sort_unique(F);
            }
        }
    }
};

void criterion6() {
    auto t0 = std::chrono::steady_clock::now();
    const int kTrials = 10000;
    long nocand = 0;
    std::string first;
    for (int n : {3, 4}) {
        MarginHarness mh(n, 1000 + static_cast<std::uint64_t>(n));
        for (int it = 0; it < kTrials / 2; ++it) {
            // le-2 style pick: loads <= 2n-4 across this and the next block
            EdgeSet L0, F0, L1, F1;
            mh.rnd_block_sets(1, 2 * n - 4, L0, F0);
            mh.rnd_block_sets(2, 2 * n - 4, L1, F1);
            EdgeSet avoid_next = L1;
            for (const auto& e : F1) avoid_next.push_back(e);
            sort_unique(avoid_next);
            Vertex excl = mh.rnd_vertex(1, Parity::Even);
            try {
                pick_vertex_clear(mh.view, 1, Parity::Even, L0, avoid_next, excl);
            } catch (const NoCandidate& e) {
                ++nocand;
                if (first.empty()) first = e.what();
            }
            // le-4 style pick with the far endpoint
            Vertex far = mh.rnd_vertex(2, Parity::Even);
            try {
                pick_vertex_unlinked(mh.view, 1, Parity::Even, L0, avoid_next, far, std::nullopt);
            } catch (const NoCandidate& e) {
                ++nocand;
                if (first.empty()) first = e.what();
            }
            // le-9 style pick at a clear vertex
            try {
                Vertex r = pick_vertex_clear(mh.view, 1, Parity::Even, L0, {}, std::nullopt);
                EdgeSet LF0 = L0;
                for (const auto& e : F0) LF0.push_back(e);
                sort_unique(LF0);
                if (!incident(LF0, r) && static_cast<int>(L0.size() + F0.size()) <= 2 * n - 5)
                    pick_two_neighbors(mh.view, r, L0, F0, avoid_next);
            } catch (const NoCandidate& e) {
                ++nocand;
                if (first.empty()) first = e.what();
            }
            // le-8 style pick: extension neighbor at a lightly loaded vertex
            if (static_cast<int>(L0.size() + F0.size()) <= 2 * n - 5) {
                Vertex r = mh.rnd_vertex(1, Parity::Even);
                LinearForest lf = LinearForest::validate(L0);
                if (lf.degree(r) <= 1) {
                    Vertex y = mh.rnd_vertex(1, Parity::Even);
                    Vertex z = mh.rnd_vertex(1, Parity::Odd);
                    if (compatible(lf, y, z) && y != r) {
                        try {
                            pick_extension_neighbor(mh.view, r, L0, F0, y, z, L1, false);
                        } catch (const NoCandidate& e) {
                            ++nocand;
                            if (first.empty()) first = e.what();
                        }
                    }
                }
            }
            // le-11 / le-13 style pick: crossing neighbor at a clear anchor
            try {
                Vertex anchor = mh.rnd_vertex(1, Parity::Even);
                LinearForest lf = LinearForest::validate(L0);
                if (lf.degree(anchor) <= 1) {
                    Vertex y = mh.rnd_vertex(1, Parity::Odd);
                    pick_crossing_neighbor(mh.view, anchor, L0, F0, y, L1);
                }
            } catch (const NoCandidate& e) {
                ++nocand;
                if (first.empty()) first = e.what();
            }
            // le-3 style pick over a freshly solved block path at n = 3
            if (n == 3 && it % 20 == 0) {
                EdgeSet sL0, sF0;
                mh.rnd_block_sets(1, 2, sL0, sF0);
                EdgeSet subL, subF;
                for (const auto& e : sL0) subL.emplace_back(mh.view.sub(), mh.view.to_sub(e.a()),
                                                            mh.view.to_sub(e.b()));
                for (const auto& e : sF0) subF.emplace_back(mh.view.sub(), mh.view.to_sub(e.a()),
                                                            mh.view.to_sub(e.b()));
                sort_unique(subL);
                sort_unique(subF);
                LinearForest lf;
                try {
                    lf = LinearForest::validate(subL);
                } catch (const NotAForest&) {
                    continue;
                }
                Vertex su, sv;
                int guard = 0;
                do {
                    su = Vertex::from_rank(2, mh.rng() % 16);
                    sv = Vertex::from_rank(2, mh.rng() % 16);
                } while ((su.parity() == sv.parity() || !compatible(lf, su, sv)) && guard++ < 100);
                if (guard >= 100) continue;
                auto res = ham_path(mh.view.sub(), subF, lf, su, sv);
                if (!res.found()) continue;
                Path lifted;
                for (const auto& w : *res.value) lifted.push_back(mh.view.from_sub(1, w));
                try {
                    pick_edge_on_path(mh.view, lifted, false, sL0, L1, EdgeSet{}, false,
                                      std::nullopt);
                } catch (const NoCandidate& e) {
                    ++nocand;
                    if (first.empty()) first = e.what();
                }
            }
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "%ld NoCandidate over ~%d contexts at n in {3,4} (%.1fs)%s%s",
                  nocand, 5 * kTrials, secs_since(t0), first.empty() ? "" : " first: ",
                  first.c_str());
    report(6, "lemma-margin searches never come up empty", nocand == 0, buf);
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    if (g_failures == 0) std::printf("acceptance: all criteria passed\n");
    else std::printf("acceptance: %d criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
