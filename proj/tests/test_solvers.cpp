#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bh/gen.hpp"
#include "bh/solvers.hpp"
#include "bh/validate.hpp"

using namespace bh;

namespace {
Vertex V(const char* s) { return Vertex::from_string(s); }
Edge E(const BalancedHypercube& h, const char* a, const char* b) { return Edge(h, V(a), V(b)); }

ValidationReport check_against(int n, const EdgeSet& F, const LinearForest& L, const Vertex& u,
                               const Vertex& v, const Path& p) {
    Instance inst = validate_instance(n, F, L, u, v);
    return validate_path(inst, p);
}
} // namespace

TEST_CASE("ham_path on the 4-cycle") {
    BalancedHypercube h(1);
    auto res = ham_path(h, {}, LinearForest{}, V("0"), V("1"));
    REQUIRE(res.found());
    CHECK(*res.value == Path{V("0"), V("3"), V("2"), V("1")});

    auto blocked = ham_path(h, {E(h, "2", "3")}, LinearForest{}, V("0"), V("3"));
    CHECK(blocked.infeasible());
}

TEST_CASE("ham_path soundness at n = 2") {
    // a fault and a prescribed edge in every combination stays solvable
    BalancedHypercube h(2);
    std::vector<Edge> edges;
    for (const Vertex& v : h.vertices())
        for (const Vertex& w : h.neighbors(v))
            if (v < w) edges.emplace_back(h, v, w);
    std::mt19937_64 rng(3);
    int solved = 0;
    for (int it = 0; it < 150; ++it) {
        const Edge& f = edges[rng() % edges.size()];
        const Edge& e = edges[rng() % edges.size()];
        if (f == e) continue;
        LinearForest L = LinearForest::validate({e});
        Vertex u = Vertex::from_rank(2, rng() % 16), v = Vertex::from_rank(2, rng() % 16);
        if (u.parity() == v.parity() || !compatible(L, u, v)) continue;
        auto res = ham_path(h, {f}, L, u, v);
        REQUIRE(res.found());
        CHECK(check_against(2, {f}, L, u, v, *res.value).ok);
        ++solved;
    }
    CHECK(solved > 50);
}

TEST_CASE("determinism") {
    BalancedHypercube h(2);
    LinearForest L = LinearForest::validate({E(h, "00", "10")});
    auto a = ham_path(h, {E(h, "01", "11")}, L, V("00"), V("11"));
    auto b = ham_path(h, {E(h, "01", "11")}, L, V("00"), V("11"));
    REQUIRE(a.found());
    REQUIRE(b.found());
    CHECK(*a.value == *b.value);
}

TEST_CASE("ham_cycle_through") {
    BalancedHypercube h1(1);
    auto cyc = ham_cycle_through(h1, {}, LinearForest{});
    REQUIRE(cyc.found());
    CHECK(cyc.value->size() == 4);

    auto broken = ham_cycle_through(h1, {E(h1, "1", "2")}, LinearForest{});
    CHECK(broken.infeasible());

    BalancedHypercube h2(2);
    auto res = ham_cycle_through(h2, {E(h2, "00", "10")},
                                 LinearForest::validate({E(h2, "01", "11")}));
    REQUIRE(res.found());
    const Path& c = *res.value;
    CHECK(c.size() == 16);
    // cycle property: consecutive adjacency including the closing edge
    for (size_t i = 0; i < c.size(); ++i) CHECK(h2.adjacent(c[i], c[(i + 1) % c.size()]));
    // contains the prescribed edge, avoids the fault
    int hits = 0;
    for (size_t i = 0; i < c.size(); ++i) {
        Edge step(h2, c[i], c[(i + 1) % c.size()]);
        CHECK(step != E(h2, "00", "10"));
        if (step == E(h2, "01", "11")) ++hits;
    }
    CHECK(hits == 1);
}

TEST_CASE("two_path_cover") {
    BalancedHypercube h1(1);
    auto res = two_path_cover(h1, V("0"), V("1"), V("2"), V("3"));
    REQUIRE(res.found());
    CHECK(res.value->first.size() + res.value->second.size() == 4);

    CHECK_THROWS_AS(two_path_cover(h1, V("0"), V("1"), V("0"), V("3")), Error);
    CHECK_THROWS_AS(two_path_cover(h1, V("0"), V("2"), V("1"), V("3")), Error);

    BalancedHypercube h2(2);
    auto r2 = two_path_cover(h2, V("00"), V("10"), V("20"), V("30"));
    REQUIRE(r2.found());
    const auto& [p1, p2] = *r2.value;
    CHECK(p1.front() == V("00"));
    CHECK(p1.back() == V("10"));
    CHECK(p2.front() == V("20"));
    CHECK(p2.back() == V("30"));
    CHECK(p1.size() + p2.size() == 16);
    for (size_t i = 0; i + 1 < p1.size(); ++i) CHECK(h2.adjacent(p1[i], p1[i + 1]));
    for (size_t i = 0; i + 1 < p2.size(); ++i) CHECK(h2.adjacent(p2[i], p2[i + 1]));
}

TEST_CASE("ham_path_minus_vertex") {
    BalancedHypercube h1(1);
    auto res = ham_path_minus_vertex(h1, V("0"), V("1"), V("3"));
    REQUIRE(res.found());
    CHECK(*res.value == Path{V("1"), V("2"), V("3")});
    CHECK_THROWS_AS(ham_path_minus_vertex(h1, V("0"), V("1"), V("1")), Error);

    BalancedHypercube h2(2);
    // every legal (w, x, y) has a solution at n = 2
    int checked = 0;
    for (const Vertex& w : h2.vertices()) {
        if (!w.even()) continue;
        for (const Vertex& x : h2.vertices()) {
            if (x.even()) continue;
            for (const Vertex& y : h2.vertices()) {
                if (y.even() || y == x || !(x < y)) continue;
                auto r = ham_path_minus_vertex(h2, w, x, y);
                REQUIRE(r.found());
                CHECK(r.value->size() == 15);
                ++checked;
            }
        }
    }
    CHECK(checked == 8 * 28);
}

TEST_CASE("pruning safety") {
    // pruned and unpruned searches agree on feasibility over sampled
    // instances with |F| + |E(L)| <= 2
    std::mt19937_64 rng(23);
    BalancedHypercube h(2);
    int agreements = 0;
    for (int it = 0; it < 120; ++it) {
        int nf = static_cast<int>(rng() % 3);
        int nl = static_cast<int>(rng() % static_cast<std::uint64_t>(3 - nf));
        Instance inst = gen_instance(2, nf, nl, rng());
        auto a = ham_path(h, inst.faults, inst.prescribed, inst.u, inst.v);
        auto b = ham_path_unpruned(h, inst.faults, inst.prescribed, inst.u, inst.v);
        REQUIRE(a.status == b.status);
        ++agreements;
    }
    CHECK(agreements == 120);
}

TEST_CASE("certify base cases") {
    auto r10 = certify(1, 0);
    CHECK(r10.failures.empty());
    CHECK(r10.instances_checked == 4); // 2x2 even/odd pairs

    auto r11 = certify(1, 1);
    CHECK(!r11.failures.empty());
    // the known witness: F = {(2,3)}, u = 0, v = 3
    bool witness = false;
    BalancedHypercube h1(1);
    Edge w23 = E(h1, "2", "3");
    for (const auto& f : r11.failures)
        if (f.F.size() == 1 && f.F[0] == w23 && f.u == V("0") && f.v == V("3")) witness = true;
    CHECK(witness);
}

TEST_CASE("search budget is reported distinctly") {
    BalancedHypercube h(3);
    SearchLimits tiny;
    tiny.node_budget = 5;
    auto res = ham_path(h, {}, LinearForest{}, V("000"), V("100"), tiny);
    CHECK(res.out_of_budget());
    CHECK(!res.found());
}
