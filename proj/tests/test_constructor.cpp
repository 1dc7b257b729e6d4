#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bh/constructor.hpp"
#include "bh/gen.hpp"
#include "bh/solvers.hpp"
#include "bh/validate.hpp"

using namespace bh;

namespace {
Vertex V(const char* s) { return Vertex::from_string(s); }
Edge E(const BalancedHypercube& h, const char* a, const char* b) { return Edge(h, V(a), V(b)); }
} // namespace

TEST_CASE("select_dimension rules") {
    BalancedHypercube h(3);
    // two faults at a common vertex in dimensions 1 and 2, one prescribed in 0
    {
        Vertex w = V("000");
        EdgeSet F{Edge(h, w, h.neighbor(w, 1, Sign::plus)), Edge(h, w, h.neighbor(w, 2, Sign::plus))};
        LinearForest L = LinearForest::validate({E(h, "011", "111")}); // dimension 0
        Instance inst = validate_instance(3, F, L, V("001"), V("100"));
        auto dc = select_dimension(inst);
        CHECK(dc.rule == DimensionRule::SparseDimension);
        CHECK(dc.j == 2);
    }
    // |F| = 3 at a common vertex, dimensions {0,1,1}; L in dimension 2
    {
        Vertex w = V("000");
        EdgeSet F{Edge(h, w, h.neighbor(w, 0, Sign::plus)), Edge(h, w, h.neighbor(w, 1, Sign::plus)),
                  Edge(h, w, h.neighbor(w, 1, Sign::minus))};
        LinearForest L = LinearForest::validate({Edge(h, V("022"), h.neighbor(V("022"), 2, Sign::plus))});
        Instance inst = validate_instance(3, F, L, V("001"), V("102"));
        auto dc = select_dimension(inst);
        CHECK(dc.rule == DimensionRule::ConcentratedFaults);
        CHECK(dc.j == 1);
        CHECK(dc.crossing_fault_count == 2);
        CHECK(dc.crossing_prescribed_count == 0);
    }
    // empty instance: largest dimension wins
    {
        Instance inst = validate_instance(3, {}, LinearForest{}, V("000"), V("100"));
        auto dc = select_dimension(inst);
        CHECK(dc.j == 2);
        CHECK(dc.rule == DimensionRule::SparseDimension);
    }
}

TEST_CASE("normalize_rotation") {
    CHECK(normalize_rotation({0, 0, 0, 0}) == 0);
    CHECK(normalize_rotation({0, 3, 0, 0}) == 3);
    CHECK(normalize_rotation({2, 0, 2, 0}) == 0); // two argmax blocks: smallest c
    CHECK(normalize_rotation({0, 2, 0, 2}) == 1);
    CHECK(normalize_rotation({0, 0, 5, 0}) == 2);
}

TEST_CASE("case classification") {
    BlockData bd;
    CHECK(classify(bd) == CaseFamily::NoCrossing);
    BalancedHypercube h(2);
    bd.Lc.push_back(E(h, "00", "11"));
    CHECK(classify(bd) == CaseFamily::PrescribedCrossing);
    bd.Lc.clear();
    bd.Fc.push_back(E(h, "00", "11"));
    CHECK(classify(bd) == CaseFamily::FaultCrossing);
    bd.Fc.push_back(E(h, "20", "31"));
    CHECK(classify(bd) == CaseFamily::FaultCrossing2);
}

TEST_CASE("pick_vertex_clear basics") {
    BalancedHypercube h(3);
    PartitionView view(h, 2);
    // empty constraints: lexicographically least even vertex in block 1
    // other than the excluded one
    Vertex got = pick_vertex_clear(view, 1, Parity::Even, {}, {}, V("001"));
    CHECK(got == V("011"));
    Vertex first = pick_vertex_clear(view, 1, Parity::Even, {}, {}, std::nullopt);
    CHECK(first == V("001"));
}

TEST_CASE("pick_edge_on_path basics") {
    BalancedHypercube h(2);
    auto res = ham_path(h, {}, LinearForest{}, V("00"), V("10"));
    REQUIRE(res.found());
    PartitionView view(h, 1);
    auto eop = pick_edge_on_path(view, *res.value, false, {}, {}, {}, false, std::nullopt);
    CHECK(eop.s.even());
    CHECK(!eop.t.even());
    CHECK(h.adjacent(eop.s, eop.t));
    // interior: neither endpoint of the path
    CHECK(eop.s != res.value->front());
    CHECK(eop.t != res.value->front());
    CHECK(eop.s != res.value->back());
    CHECK(eop.t != res.value->back());

    // excluded vertex is skipped
    auto eop2 =
        pick_edge_on_path(view, *res.value, false, {}, {}, {}, false, std::optional<Vertex>(eop.s));
    CHECK(eop2.s != eop.s);
}

TEST_CASE("hcycle_block and hpath_from_faulty_block") {
    BalancedHypercube h(3);
    PartitionView view(h, 2);
    // block 0 of BH_3 is a BH_2; 2n-3 = 3 edges with at least one prescribed
    EdgeSet L{Edge(h, V("000"), V("100"))};
    EdgeSet F{Edge(h, V("010"), V("110")), Edge(h, V("020"), V("120"))};
    Path cyc = hcycle_block(view, 0, L, F);
    CHECK(cyc.size() == 16);
    for (size_t i = 0; i < cyc.size(); ++i) {
        Edge step(h, cyc[i], cyc[(i + 1) % cyc.size()]);
        CHECK(!contains(F, step));
    }
    // prescribed edge on the cycle
    bool has = false;
    for (size_t i = 0; i < cyc.size(); ++i)
        if (Edge(h, cyc[i], cyc[(i + 1) % cyc.size()]) == L[0]) has = true;
    CHECK(has);

    CHECK_THROWS_AS(hcycle_block(view, 0, {}, F), Error);
    CHECK_THROWS_AS(hcycle_block(view, 0, L, {}), Error);

    EdgeSet F2 = F;
    F2.push_back(Edge(h, V("030"), V("130")));
    sort_unique(F2);
    auto pr = hpath_from_faulty_block(view, 0, L, F2);
    CHECK(pr.path.size() == 16);
    CHECK(pr.a.even());
    CHECK(!pr.b.even());
    CHECK(pr.path.front() == pr.a);
    CHECK(pr.path.back() == pr.b);
    CHECK_THROWS_AS(hpath_from_faulty_block(view, 0, L, F), Error);
}

TEST_CASE("construct delegates to the oracle at n <= 2") {
    for (std::uint64_t seed : {1, 2, 3}) {
        Instance inst = gen_instance(2, 1, 1, seed);
        Path p = construct(inst);
        auto res = ham_path(BalancedHypercube(2), inst.faults, inst.prescribed, inst.u, inst.v);
        REQUIRE(res.found());
        CHECK(p == *res.value);
    }
}

TEST_CASE("construct n = 3 random instances") {
    std::mt19937_64 rng(77);
    int done = 0, unsupported = 0;
    for (int it = 0; it < 60; ++it) {
        int nf = static_cast<int>(rng() % 5);
        int nl = static_cast<int>(rng() % static_cast<std::uint64_t>(5 - nf));
        Instance inst = gen_instance(3, nf, nl, rng());
        try {
            Path p = construct(inst);
            CHECK(validate_path(inst, p).ok);
            ++done;
        } catch (const UnsupportedCase&) {
            ++unsupported;
            auto res = ham_path(BalancedHypercube(3), inst.faults, inst.prescribed, inst.u, inst.v);
            CHECK(res.found());
        }
    }
    CHECK(done + unsupported == 60);
    CHECK(done > 40);
}

TEST_CASE("construct n = 4 spot checks") {
    std::mt19937_64 rng(99);
    int done = 0;
    for (int it = 0; it < 4; ++it) {
        int nf = static_cast<int>(rng() % 3);
        int nl = static_cast<int>(rng() % 3);
        Instance inst = gen_instance(4, nf, nl, rng());
        try {
            Path p = construct(inst);
            CHECK(validate_path(inst, p).ok);
            ++done;
        } catch (const UnsupportedCase&) {
        }
    }
    CHECK(done >= 1);
}
