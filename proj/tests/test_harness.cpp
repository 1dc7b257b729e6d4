#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bh/compare.hpp"
#include "bh/gen.hpp"
#include "bh/jsonio.hpp"
#include "bh/solvers.hpp"
#include "bh/validate.hpp"

using namespace bh;

namespace {
Vertex V(const char* s) { return Vertex::from_string(s); }
} // namespace

TEST_CASE("instance json round trip") {
    Instance inst = gen_instance(3, 2, 2, 99);
    json j = to_json(inst);
    Instance back = instance_from_json(j);
    CHECK(back.n == inst.n);
    CHECK(back.faults == inst.faults);
    CHECK(back.prescribed.edges() == inst.prescribed.edges());
    CHECK(back.u == inst.u);
    CHECK(back.v == inst.v);
}

TEST_CASE("path json round trip") {
    BalancedHypercube h(1);
    auto res = ham_path(h, {}, LinearForest{}, V("0"), V("1"));
    REQUIRE(res.found());
    json j = to_json(*res.value, 1);
    CHECK(path_from_json(j) == *res.value);
}

TEST_CASE("malformed input is reported with the field") {
    json bad;
    bad["n"] = 2;
    bad["faults"] = json::array({json::array({"00", "22"})}); // not an edge
    bad["prescribed"] = json::array();
    bad["u"] = "00";
    bad["v"] = "10";
    CHECK_THROWS_WITH_AS(instance_from_json(bad), doctest::Contains("faults[0]"), ParseError);

    json bad2;
    bad2["n"] = 2;
    CHECK_THROWS_AS(instance_from_json(bad2), ParseError);
}

TEST_CASE("validator catches every violation kind") {
    Instance inst = gen_instance(2, 1, 1, 5);
    BalancedHypercube h(2);
    auto res = ham_path(h, inst.faults, inst.prescribed, inst.u, inst.v);
    REQUIRE(res.found());
    Path good = *res.value;
    CHECK(validate_path(inst, good).ok);

    // swapped interior vertices always fail
    Path mutated = good;
    std::swap(mutated[3], mutated[7]);
    CHECK(!validate_path(inst, mutated).ok);

    // truncated path is not hamiltonian
    Path shortp(good.begin(), good.end() - 1);
    auto rep = validate_path(inst, shortp);
    CHECK(!rep.ok);
    CHECK(rep.violations.front().kind == ViolationKind::NotHamiltonian);

    // missing prescribed edge: solve without the forest, then check with it
    auto free_res = ham_path(h, inst.faults, LinearForest{}, inst.u, inst.v);
    REQUIRE(free_res.found());
    auto rep2 = validate_path(inst, *free_res.value);
    bool misses = false;
    for (const auto& viol : rep2.violations)
        if (viol.kind == ViolationKind::MissesPrescribed) misses = true;
    CHECK((rep2.ok || misses)); // the unconstrained path may hit L by luck

    // wrong endpoints
    Path rev = good;
    std::swap(rev.front(), rev.back());
    CHECK(!validate_path(inst, rev).ok);

    // a fault edge inserted: construct an instance whose fault lies on `good`
    EdgeSet on_path{Edge(h, good[4], good[5])};
    if (!contains(inst.faults, on_path[0]) && !inst.prescribed.contains(on_path[0])) {
        Instance faulty = validate_instance(2, on_path, LinearForest{}, inst.u, inst.v);
        auto rep3 = validate_path(faulty, good);
        bool uses = false;
        for (const auto& viol : rep3.violations)
            if (viol.kind == ViolationKind::UsesFault) uses = true;
        CHECK(uses);
    }
}

TEST_CASE("seed determinism") {
    Instance a = gen_instance(3, 2, 1, 12345);
    Instance b = gen_instance(3, 2, 1, 12345);
    CHECK(a.faults == b.faults);
    CHECK(a.prescribed.edges() == b.prescribed.edges());
    CHECK(a.u == b.u);
    CHECK(a.v == b.v);
    Instance c = gen_instance(3, 2, 1, 12346);
    bool same = a.faults == c.faults && a.u == c.u && a.v == c.v;
    CHECK(!same);
}

TEST_CASE("gen rejects over-budget splits") {
    CHECK_THROWS_AS(gen_instance(2, 2, 1, 1), BudgetExceeded);
}

TEST_CASE("run_compare at n = 2") {
    CompareOptions opt;
    opt.oracle_subsample = 2;
    opt.workers = 2;
    RunStats st = run_compare(2, 40, 2, 42, opt);
    CHECK(st.successes == 40);
    CHECK(st.failures == 0);
    CHECK(st.unsupported == 0);
}
