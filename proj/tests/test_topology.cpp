#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "bh/partition.hpp"
#include "bh/topology.hpp"

using namespace bh;

namespace {
Vertex V(const char* s) { return Vertex::from_string(s); }
} // namespace

TEST_CASE("neighbor formulas") {
    BalancedHypercube h2(2);
    CHECK(h2.neighbor(V("00"), 1, Sign::plus) == V("11"));
    CHECK(h2.neighbor(V("00"), 1, Sign::minus) == V("31"));
    BalancedHypercube h1(1);
    CHECK(h1.neighbor(V("0"), 0, Sign::plus) == V("1"));
    CHECK(h1.neighbor(V("0"), 0, Sign::minus) == V("3"));
    CHECK_THROWS_AS(h2.neighbor(V("00"), 2, Sign::plus), DimensionOutOfRange);

    // symmetry: w = nbr(v,j,s) implies v is among w's j-dimensional neighbors
    BalancedHypercube h3(3);
    for (const Vertex& v : h3.vertices())
        for (int j = 0; j < 3; ++j)
            for (Sign s : {Sign::plus, Sign::minus}) {
                Vertex w = h3.neighbor(v, j, s);
                bool back = h3.neighbor(w, j, Sign::plus) == v || h3.neighbor(w, j, Sign::minus) == v;
                CHECK(back);
            }
}

TEST_CASE("neighbor sets") {
    BalancedHypercube h1(1);
    auto nb1 = h1.neighbors(V("0"));
    CHECK(std::set<Vertex>(nb1.begin(), nb1.end()) == std::set<Vertex>{V("1"), V("3")});

    BalancedHypercube h2(2);
    auto nb2 = h2.neighbors(V("00"));
    CHECK(std::set<Vertex>(nb2.begin(), nb2.end()) ==
          std::set<Vertex>{V("10"), V("30"), V("11"), V("31")});

    // |N(v)| = 2n on random vertices up to n = 5
    for (int n = 1; n <= 5; ++n) {
        BalancedHypercube h(n);
        std::uint64_t state = 12345;
        for (int k = 0; k < 100; ++k) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            Vertex v = Vertex::from_rank(n, state % h.vertex_count());
            auto nb = h.neighbors(v);
            CHECK(std::set<Vertex>(nb.begin(), nb.end()).size() == static_cast<size_t>(2 * n));
        }
    }
}

TEST_CASE("shadow vertex") {
    BalancedHypercube h2(2);
    CHECK(h2.shadow(V("00")) == V("20"));
    CHECK(h2.shadow(h2.shadow(V("13"))) == V("13"));
    CHECK(h2.shadow(h2.neighbor(V("00"), 1, Sign::plus)) == h2.neighbor(V("00"), 1, Sign::minus));
    CHECK(h2.shadow(V("11")) == V("31"));

    // fixed-point-free involution with identical neighbor sets, n <= 4
    for (int n = 1; n <= 4; ++n) {
        BalancedHypercube h(n);
        for (const Vertex& v : h.vertices()) {
            Vertex s = h.shadow(v);
            CHECK(s != v);
            CHECK(h.shadow(s) == v);
            auto a = h.neighbors(v);
            auto b = h.neighbors(s);
            CHECK(std::set<Vertex>(a.begin(), a.end()) == std::set<Vertex>(b.begin(), b.end()));
        }
    }
}

TEST_CASE("edge dimension") {
    BalancedHypercube h2(2);
    CHECK(h2.edge_dimension(V("00"), V("10")) == 0);
    CHECK(h2.edge_dimension(V("00"), V("11")) == 1);
    BalancedHypercube h1(1);
    CHECK(h1.edge_dimension(V("0"), V("3")) == 0);
    CHECK_THROWS_AS(h2.edge_dimension(V("00"), V("22")), NotAnEdge);
}

TEST_CASE("parity and bipartiteness") {
    CHECK(parity(V("00")) == Parity::Even);
    CHECK(parity(V("31")) == Parity::Odd);
    for (int n = 1; n <= 4; ++n) {
        BalancedHypercube h(n);
        size_t even = 0;
        for (const Vertex& v : h.vertices()) {
            if (v.even()) ++even;
            for (const Vertex& w : h.neighbors(v)) CHECK(v.parity() != w.parity());
        }
        CHECK(even == h.vertex_count() / 2);
    }
}

TEST_CASE("digit shift automorphism") {
    BalancedHypercube h2(2);
    DigitShift id(h2, 1, 0);
    CHECK(id(V("01")) == V("01"));
    DigitShift s2(h2, 1, 2);
    CHECK(s2(V("00")) == V("02"));
    CHECK(s2(V("11")) == V("13"));
    CHECK_THROWS_AS(DigitShift(h2, 0, 1), DimensionOutOfRange);

    // adjacency and parity preserved, all edges, all shifts, n <= 3
    for (int n = 2; n <= 3; ++n) {
        BalancedHypercube h(n);
        for (int d = 1; d < n; ++d)
            for (int c = 0; c < 4; ++c) {
                DigitShift f(h, d, c);
                for (const Vertex& v : h.vertices()) {
                    CHECK(parity(f(v)) == parity(v));
                    for (const Vertex& w : h.neighbors(v)) CHECK(h.adjacent(f(v), f(w)));
                }
            }
    }
}

TEST_CASE("digit swap automorphism") {
    BalancedHypercube h3(3);
    DigitSwap same(h3, 1, 1);
    CHECK(same(V("012")) == V("012"));
    DigitSwap sw(h3, 1, 2);
    CHECK(sw(V("012")) == V("021"));
    CHECK_THROWS_AS(DigitSwap(h3, 0, 1), DimensionOutOfRange);

    // maps 1-dimensional edges to 2-dimensional edges
    Vertex a = V("000");
    Vertex b = h3.neighbor(a, 1, Sign::plus);
    CHECK(h3.edge_dimension(sw(a), sw(b)) == 2);

    // adjacency preserved on every edge of BH_3
    for (const Vertex& v : h3.vertices())
        for (const Vertex& w : h3.neighbors(v)) CHECK(h3.adjacent(sw(v), sw(w)));
}

TEST_CASE("partition structure") {
    // block sizes and the drop-digit isomorphism, exhaustively for n <= 4
    for (int n = 2; n <= 4; ++n) {
        BalancedHypercube h(n);
        for (int j = 1; j < n; ++j) {
            PartitionView view(h, j);
            std::array<size_t, 4> sizes{};
            for (const Vertex& v : h.vertices()) sizes[static_cast<size_t>(view.block_of(v))]++;
            for (size_t s : sizes) CHECK(s == h.vertex_count() / 4);

            const BalancedHypercube& sub = view.sub();
            for (int b = 0; b < 4; ++b) {
                std::set<Vertex> seen;
                for (const Vertex& v : view.block_vertices(b)) {
                    CHECK(view.block_of(v) == b);
                    seen.insert(view.to_sub(v));
                    CHECK(view.from_sub(b, view.to_sub(v)) == v);
                }
                CHECK(seen.size() == sub.vertex_count());
            }
            // adjacency both ways across the iso, plus edge partitioning
            for (const Vertex& v : h.vertices()) {
                for (const Vertex& w : h.neighbors(v)) {
                    Edge e(h, v, w);
                    if (view.is_crossing(e)) {
                        int bv = view.block_of(v), bw = view.block_of(w);
                        bool adjacent_blocks = (bv + 1) % 4 == bw || (bw + 1) % 4 == bv;
                        CHECK(adjacent_blocks);
                    } else {
                        CHECK(view.block_of(v) == view.block_of(w));
                        CHECK(sub.adjacent(view.to_sub(v), view.to_sub(w)));
                    }
                }
            }
            // sub-adjacency lifts back
            for (int b = 0; b < 4; ++b)
                for (const Vertex& sv : sub.vertices())
                    for (const Vertex& sw : sub.neighbors(sv))
                        CHECK(h.adjacent(view.from_sub(b, sv), view.from_sub(b, sw)));
        }
    }
}

TEST_CASE("crossing edges") {
    // every vertex has exactly two crossing edges, both into the adjacent
    // block on its parity side; the two crossing neighbors are shadows
    for (int n = 2; n <= 4; ++n) {
        BalancedHypercube h(n);
        for (int j = 1; j < n; ++j) {
            PartitionView view(h, j);
            for (const Vertex& v : h.vertices()) {
                auto [c1, c2] = view.crossing_neighbors(v);
                CHECK(c1 != c2);
                CHECK(h.shadow(c1) == c2);
                int expect = (view.block_of(v) + (v.even() ? 1 : 3)) % 4;
                CHECK(view.block_of(c1) == expect);
                CHECK(view.block_of(c2) == expect);
                CHECK(view.crossing_block(v) == expect);
                int count = 0;
                for (const Vertex& w : h.neighbors(v))
                    if (Edge(h, v, w).dim() == j) ++count;
                CHECK(count == 2);
            }
            // injectivity: distinct a,b in a block have distinct images
            for (int b = 0; b < 4; ++b) {
                std::set<Vertex> plus, minus;
                for (const Vertex& v : view.block_vertices(b)) {
                    plus.insert(h.neighbor(v, j, Sign::plus));
                    minus.insert(h.neighbor(v, j, Sign::minus));
                }
                CHECK(plus.size() == h.vertex_count() / 4);
                CHECK(minus.size() == h.vertex_count() / 4);
            }
        }
    }

    // 16 crossing edges per adjacent block pair at BH_3, j = 2
    BalancedHypercube h3(3);
    PartitionView view(h3, 2);
    std::map<std::pair<int, int>, int> cnt;
    for (const Vertex& v : h3.vertices())
        for (const Vertex& w : h3.neighbors(v)) {
            if (!(v < w)) continue;
            Edge e(h3, v, w);
            if (!view.is_crossing(e)) continue;
            int a = view.block_of(e.a()), b = view.block_of(e.b());
            cnt[{std::min(a, b), std::max(a, b)}]++;
        }
    for (const auto& [pair, c] : cnt) CHECK(c == 16);
    CHECK(cnt.size() == 4);
}

TEST_CASE("vertex text form") {
    CHECK(V("0123").str() == "0123");
    CHECK_THROWS_AS(Vertex::from_string("04"), ParseError);
    CHECK_THROWS_AS(Vertex::from_string(""), ParseError);
    CHECK(Vertex::from_rank(2, V("13").rank()) == V("13"));
}
