#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bh/gen.hpp"
#include "bh/instance.hpp"

using namespace bh;

namespace {
Vertex V(const char* s) { return Vertex::from_string(s); }
Edge E(const BalancedHypercube& h, const char* a, const char* b) { return Edge(h, V(a), V(b)); }
} // namespace

TEST_CASE("linear forest validation") {
    BalancedHypercube h1(1);
    CHECK(LinearForest::validate({}).empty());
    LinearForest path = LinearForest::validate({E(h1, "0", "1"), E(h1, "1", "2")});
    CHECK(path.size() == 2);
    CHECK(path.internal(V("1")));
    CHECK(!path.internal(V("0")));
    CHECK_THROWS_AS(LinearForest::validate(
                        {E(h1, "0", "1"), E(h1, "1", "2"), E(h1, "2", "3"), E(h1, "3", "0")}),
                    NotAForest);

    BalancedHypercube h2(2);
    // degree 3 at "00"
    CHECK_THROWS_AS(
        LinearForest::validate({E(h2, "00", "10"), E(h2, "00", "30"), E(h2, "00", "11")}),
        NotAForest);
}

TEST_CASE("maximal paths are deterministic") {
    BalancedHypercube h1(1);
    LinearForest f = LinearForest::validate({E(h1, "1", "2"), E(h1, "0", "1")});
    auto paths = f.maximal_paths();
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].front() == V("0"));
    CHECK(paths[0].back() == V("2"));
    CHECK(f.path_other_end(V("0")) == V("2"));
}

TEST_CASE("compatibility") {
    BalancedHypercube h2(2);
    LinearForest empty;
    CHECK(compatible(empty, V("00"), V("10")));

    LinearForest one = LinearForest::validate({E(h2, "00", "10")});
    CHECK(!compatible(one, V("00"), V("10"))); // both ends of one prescribed path
    CHECK(compatible(one, V("00"), V("30")));

    BalancedHypercube h1(1);
    LinearForest p = LinearForest::validate({E(h1, "0", "1"), E(h1, "1", "2")});
    CHECK(!compatible(p, V("1"), V("0"))); // internal vertex

    // symmetry in u,v on random forests
    std::mt19937_64 rng(5);
    for (int it = 0; it < 200; ++it) {
        Instance inst = gen_instance(3, 0, static_cast<int>(rng() % 4), rng());
        const auto& L = inst.prescribed;
        BalancedHypercube h3(3);
        Vertex a = Vertex::from_rank(3, rng() % 64), b = Vertex::from_rank(3, rng() % 64);
        CHECK(compatible(L, a, b) == compatible(L, b, a));
    }
}

TEST_CASE("instance validation") {
    BalancedHypercube h2(2);
    Instance ok = validate_instance(2, {}, LinearForest{}, V("00"), V("10"));
    CHECK(ok.u == V("00"));

    CHECK_THROWS_AS(validate_instance(2, {E(h2, "00", "10"), E(h2, "00", "30")},
                                      LinearForest::validate({E(h2, "01", "11")}), V("00"), V("10")),
                    BudgetExceeded);
    CHECK_THROWS_AS(validate_instance(3, {Edge(BalancedHypercube(3), V("000"), V("100"))},
                                      LinearForest::validate({Edge(BalancedHypercube(3), V("000"),
                                                                   V("100"))}),
                                      V("000"), V("100")),
                    FaultForestOverlap);
    CHECK_THROWS_AS(validate_instance(2, {}, LinearForest{}, V("00"), V("20")),
                    SameParityEndpoints);
    CHECK_THROWS_AS(validate_instance(2, {}, LinearForest::validate({E(h2, "00", "10")}), V("00"),
                                      V("10")),
                    Incompatible);

    // odd-first input is normalized
    Instance norm = validate_instance(2, {}, LinearForest{}, V("10"), V("00"));
    CHECK(norm.u == V("00"));
    CHECK(norm.v == V("10"));
}

TEST_CASE("restriction to blocks") {
    BalancedHypercube h2(2);
    PartitionView view(h2, 1);

    Instance empty = validate_instance(2, {}, LinearForest{}, V("00"), V("10"));
    BlockData bd0 = restrict_to_blocks(empty, view);
    for (int i = 0; i < 4; ++i) CHECK(bd0.load(i) == 0);
    CHECK(bd0.Lc.empty());
    CHECK(bd0.Fc.empty());

    // dimension-1 prescribed edge crosses
    Instance crossing =
        validate_instance(2, {}, LinearForest::validate({E(h2, "00", "11")}), V("00"), V("10"));
    BlockData bd1 = restrict_to_blocks(crossing, view);
    CHECK(bd1.Lc.size() == 1);
    for (int i = 0; i < 4; ++i) CHECK(bd1.L[static_cast<size_t>(i)].empty());

    // dimension-0 fault stays in its block (both endpoints have digit1 = 0)
    Instance intra = validate_instance(2, {E(h2, "00", "10")}, LinearForest{}, V("01"), V("10"));
    BlockData bd2 = restrict_to_blocks(intra, view);
    CHECK(bd2.F[0].size() == 1);
    CHECK(bd2.Fc.empty());
}

TEST_CASE("restriction conserves cardinalities") {
    std::mt19937_64 rng(11);
    for (int n = 2; n <= 4; ++n) {
        for (int it = 0; it < 50; ++it) {
            int budget = 2 * n - 2;
            int nf = static_cast<int>(rng() % static_cast<std::uint64_t>(budget + 1));
            int nl = static_cast<int>(rng() % static_cast<std::uint64_t>(budget - nf + 1));
            Instance inst = gen_instance(n, nf, nl, rng());
            BalancedHypercube h(n);
            for (int j = 1; j < n; ++j) {
                PartitionView view(h, j);
                BlockData bd = restrict_to_blocks(inst, view);
                size_t lsum = bd.Lc.size(), fsum = bd.Fc.size();
                for (int i = 0; i < 4; ++i) {
                    lsum += bd.L[static_cast<size_t>(i)].size();
                    fsum += bd.F[static_cast<size_t>(i)].size();
                }
                CHECK(lsum == inst.prescribed.size());
                CHECK(fsum == inst.faults.size());
                for (const auto& e : bd.Lc) CHECK(e.dim() == j);
            }
        }
    }
}

TEST_CASE("forest edit properties") {
    // forest minus any edge is a forest; plus an edge joining two components
    // at end vertices is a forest
    std::mt19937_64 rng(17);
    BalancedHypercube h(3);
    for (int it = 0; it < 100; ++it) {
        Instance inst = gen_instance(3, 0, 3, rng());
        LinearForest L = inst.prescribed;
        for (const auto& e : L.edges()) CHECK_NOTHROW(L.minus(e));
        // try to extend at an end vertex
        for (const Vertex& end : L.end_vertices()) {
            for (const Vertex& w : h.neighbors(end)) {
                if (L.degree(w) > 0) continue;
                Edge e(h, end, w);
                if (L.can_add(e)) {
                    CHECK_NOTHROW(L.plus(e));
                    break;
                }
            }
            break;
        }
    }
}
