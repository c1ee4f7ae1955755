#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "vlll/cycle_boundary.hpp"
#include "vlll/cylinder.hpp"
#include "vlll/discrete_program.hpp"
#include "vlll/errors.hpp"
#include "vlll/exec.hpp"

using namespace vlll;
using testutil::close;

namespace {
// both events on the single shared variable
Bigraph complete21() { return Bigraph::make(2, 1, {{0, 0}, {1, 0}}); }
// two events on disjoint variables
Bigraph disjoint2() { return Bigraph::make(2, 2, {{0, 0}, {1, 1}}); }
} // namespace

TEST_CASE("membership on the two-event shared variable") {
    auto cert = exterior_membership(complete21(), {0.6, 0.5});
    REQUIRE(cert.has_value());
    CHECK(cert->coverage_ok);
    for (double s : cert->slack) CHECK(s >= -1e-6);
    auto eval = evaluate_cylinder_set(cert->cylinder_set, complete21());
    CHECK(close(eval.union_measure, 1.0, 1e-9));
    CHECK(eval.measures[0] <= 0.6 + 1e-6);
    CHECK(eval.measures[1] <= 0.5 + 1e-6);

    // coverage forces the measures to sum to at least 1
    CHECK(!exterior_membership(complete21(), {0.3, 0.4}).has_value());
}

TEST_CASE("membership beyond and inside the triangle boundary") {
    auto h3 = make_cycle_bigraph(3);
    CHECK(exterior_membership(h3, ProbVec(3, 0.40)).has_value());
    CHECK(!exterior_membership(h3, ProbVec(3, 0.36)).has_value());
}

TEST_CASE("membership just past the four-cycle boundary") {
    // 0.34 > 1/3, the exact cycle scalar
    CHECK(exterior_membership(make_cycle_bigraph(4), ProbVec(4, 0.34)).has_value());
}

TEST_CASE("membership at a clamped entry") {
    auto cert = exterior_membership(complete21(), {1.0, 0.2});
    REQUIRE(cert.has_value());
    auto eval = evaluate_cylinder_set(cert->cylinder_set, complete21());
    CHECK(close(eval.union_measure, 1.0, 1e-12));
}

TEST_CASE("certificates stay valid as the bound grows") {
    auto h3 = make_cycle_bigraph(3);
    ProbVec q(3, 0.40);
    auto cert = exterior_membership(h3, q);
    REQUIRE(cert.has_value());
    auto eval = evaluate_cylinder_set(cert->cylinder_set, h3);
    ProbVec larger{0.5, 0.45, 0.41};
    for (int i = 0; i < 3; ++i)
        CHECK(larger[static_cast<std::size_t>(i)] - eval.measures[static_cast<std::size_t>(i)] >=
              -1e-6);
}

TEST_CASE("bisection boundary on tiny instances") {
    auto r = vlll_boundary_lambda_bruteforce(complete21(), {1, 1});
    CHECK(close(r.lambda, 0.5, 2e-3));
    CHECK(r.method == "discrete");
    CHECK(r.residual <= 1e-3);

    // homogeneity within bisection tolerance
    auto r2 = vlll_boundary_lambda_bruteforce(complete21(), {2, 2});
    CHECK(close(r2.lambda, r.lambda / 2, 2e-3));
}

TEST_CASE("bisection matches the exact triangle solver") {
    ProbVec dir(3, 1.0 / 3);
    auto exact = cycle_boundary_lambda(dir);
    auto brute = vlll_boundary_lambda_bruteforce(make_cycle_bigraph(3), dir);
    CHECK(close(brute.lambda, exact.lambda, 1e-3));

    // asymmetric direction exercises the rotation minimum
    ProbVec skew{0.5, 0.3, 0.2};
    auto exact_skew = cycle_boundary_lambda(skew);
    auto brute_skew = vlll_boundary_lambda_bruteforce(make_cycle_bigraph(3), skew);
    CHECK(close(brute_skew.lambda, exact_skew.lambda, 1e-3));
}

TEST_CASE("maximum union probability on tiny instances") {
    auto shared = mup_bruteforce_detailed(complete21(), {0.3, 0.4});
    CHECK(close(shared.value, 0.7, 1e-3));
    CHECK(shared.best_exclusive);
    CHECK(shared.exhausted);

    // independent events force union 1 - (1-p1)(1-p2)
    auto indep = mup_bruteforce_detailed(disjoint2(), {0.3, 0.4});
    CHECK(close(indep.value, 0.58, 1e-3));
    CHECK(indep.exhausted);
}

TEST_CASE("deleting an event from an exclusive optimum strictly shrinks the union") {
    auto res = mup_bruteforce_detailed(complete21(), {0.3, 0.4});
    REQUIRE(res.best_exclusive);
    auto h = complete21();
    auto eval = evaluate_cylinder_set(res.best, h);
    // wipe one event at a time and re-evaluate
    for (int drop = 0; drop < 2; ++drop) {
        auto s = res.best;
        std::fill(s.indicators[static_cast<std::size_t>(drop)].begin(),
                  s.indicators[static_cast<std::size_t>(drop)].end(), 0);
        auto smaller = evaluate_cylinder_set(s, h);
        CHECK(smaller.union_measure < eval.union_measure - 1e-3);
    }
}

TEST_CASE("search outcome does not depend on the thread count") {
    auto h3 = make_cycle_bigraph(3);
    set_worker_threads(1);
    auto one = mup_bruteforce_detailed(complete21(), {0.3, 0.4});
    auto mem_one = exterior_membership(h3, ProbVec(3, 0.40));
    set_worker_threads(2);
    auto two = mup_bruteforce_detailed(complete21(), {0.3, 0.4});
    auto mem_two = exterior_membership(h3, ProbVec(3, 0.40));
    set_worker_threads(0);
    CHECK(one.value == two.value);
    CHECK(one.candidates == two.candidates);
    REQUIRE(mem_one.has_value());
    REQUIRE(mem_two.has_value());
    CHECK(mem_one->cylinder_set.indicators == mem_two->cylinder_set.indicators);
}

TEST_CASE("assignment space cap") {
    // 12 events on 4 shared variables of degree 6: far beyond the cap
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 12; ++i) {
        edges.push_back({i, i % 4});
        edges.push_back({i, (i + 1) % 4});
    }
    auto big = Bigraph::make(12, 4, edges);
    SearchConfig cfg;
    cfg.assignment_cap = 1e6;
    CHECK_THROWS_AS(exterior_membership(big, ProbVec(12, 0.5), cfg), cap_exceeded);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(exterior_membership(complete21(), {0.5}), std::invalid_argument);
    CHECK_THROWS_AS(mup_bruteforce(complete21(), {0.5, 1.5}), std::invalid_argument);
    // the boundary bisection refuses disconnected base graphs
    CHECK_THROWS_AS(vlll_boundary_lambda_bruteforce(disjoint2(), {1, 1}), std::invalid_argument);
}
