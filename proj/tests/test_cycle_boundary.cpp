#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "vlll/cycle_boundary.hpp"
#include "vlll/cylinder.hpp"
#include "vlll/shearer.hpp"

using namespace vlll;
using testutil::close;

namespace {
// closed form for one rotation on three normalized entries
double triangle_rotation(double pi, double pprev) {
    double prod = pi * pprev;
    return (1.0 - std::sqrt(1.0 - 4.0 * prod)) / (2.0 * prod);
}
} // namespace

TEST_CASE("chain solve on the symmetric triangle") {
    ProbVec p(3, 1.0 / 3);
    const double expected = triangle_rotation(1.0 / 3, 1.0 / 3);
    CHECK(close(expected, 1.1458980, 1e-7));
    for (int rot = 0; rot < 3; ++rot) {
        auto lam = cycle_chain_solve(p, rot);
        REQUIRE(lam.has_value());
        CHECK(close(*lam, expected, 1e-9));
    }
}

TEST_CASE("chain solve on four and five events") {
    // all-ones direction: substitution gives q/(1-2q) = 1, so lambda = 1/3
    auto lam4 = cycle_chain_solve(ProbVec(4, 1.0), 0);
    REQUIRE(lam4.has_value());
    CHECK(close(*lam4, 1.0 / 3, 1e-10));

    // all-ones on five events: smallest positive root of x^3 - 6x^2 + 5x - 1
    const double expected = testutil::bisect_oracle(
        [](double x) { return ((x - 6.0) * x + 5.0) * x - 1.0; }, 0.0, 0.5);
    CHECK(close(expected, 0.30798, 1e-4));
    auto lam5 = cycle_chain_solve(ProbVec(5, 1.0), 2);
    REQUIRE(lam5.has_value());
    CHECK(close(*lam5, expected, 1e-9));
}

TEST_CASE("boundary takes the minimum over rotations") {
    auto sym = cycle_boundary_lambda(ProbVec(3, 1.0));
    CHECK(close(sym.lambda, (3.0 - std::sqrt(5.0)) / 2.0, 1e-10));
    CHECK(sym.method == "cycle");

    // the winning rotation minimizes p_i * p_{i-1}
    ProbVec p{0.5, 0.3, 0.2};
    auto r = cycle_boundary_lambda(p);
    double best = 1e9;
    int best_rot = -1;
    for (int i = 0; i < 3; ++i) {
        double lam = triangle_rotation(p[static_cast<std::size_t>(i)],
                                       p[static_cast<std::size_t>((i + 2) % 3)]);
        if (lam < best) {
            best = lam;
            best_rot = i;
        }
    }
    CHECK(r.rotation == best_rot);
    CHECK(close(r.lambda, best, 1e-9));
}

TEST_CASE("four-cycle boundary exceeds the abstract scalar") {
    auto cyc = cycle_boundary_lambda(ProbVec(4, 1.0));
    CHECK(close(cyc.lambda, 1.0 / 3, 1e-10));
    auto c4 = DependencyGraph::make(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    auto abs = abstract_boundary_lambda(c4, ProbVec(4, 1.0));
    CHECK(cyc.lambda - abs.lambda > 0.04);
}

TEST_CASE("closed form equals the chain solver") {
    ProbVec sym(3, 1.0 / 3);
    CHECK(close(triangle_closed_form(sym), cycle_boundary_lambda(sym).lambda, 1e-10));
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 1000; ++trial) {
        auto p = testutil::random_direction(3, rng, 0.05, 1.0);
        CHECK(close(triangle_closed_form(p), cycle_boundary_lambda(p).lambda, 1e-10));
    }
    CHECK_THROWS_AS(triangle_closed_form({1, 1}), std::invalid_argument);
}

TEST_CASE("closed form degenerate limit") {
    // as the winning product vanishes, lambda approaches 1/(sum of entries)
    ProbVec p{1.0, 1e-5, 1e-5};
    double lam = cycle_boundary_lambda(p).lambda;
    CHECK(close(lam * (p[0] + p[1] + p[2]), 1.0, 1e-3));
}

TEST_CASE("chain values grow with lambda") {
    ProbVec p{0.8, 0.5, 0.7, 0.6, 0.9};
    auto r = cycle_boundary_lambda(p);
    auto at_root = cycle_chain_values(p, r.rotation, r.lambda);
    REQUIRE(at_root.has_value());
    for (double frac : {0.3, 0.6, 0.9, 0.99}) {
        auto below = cycle_chain_values(p, r.rotation, frac * r.lambda);
        REQUIRE(below.has_value());
        for (std::size_t k = 0; k < below->size(); ++k) CHECK((*below)[k] < (*at_root)[k]);
    }
}

TEST_CASE("boundary witness breaks one variable") {
    for (int n : {3, 4, 5}) {
        ProbVec dir(static_cast<std::size_t>(n), 1.0);
        auto r = cycle_boundary_lambda(dir);
        auto s = cycle_boundary_witness(dir, r);
        auto h = make_cycle_bigraph(n);
        int dropped = 0;
        for (const auto& part : s.partitions)
            if (part.size() == 1) ++dropped;
        CHECK(dropped == 1);
        auto eval = evaluate_cylinder_set(s, h);
        CHECK(close(eval.union_measure, 1.0, 1e-9));
        for (double m : eval.measures) CHECK(close(m, r.lambda, 1e-9));
        // the two events at the break overlap: consistent with the gap
        CHECK(!eval.exclusive);
        CHECK(eval.max_adjacent_overlap > 1e-4);
    }
}

TEST_CASE("quarter construction is exclusive") {
    for (int n = 3; n <= 10; ++n) {
        auto s = cycle_gapful_witness(n);
        auto h = make_cycle_bigraph(n);
        auto eval = evaluate_cylinder_set(s, h);
        CHECK(eval.exclusive);
        CHECK(eval.max_adjacent_overlap == 0.0);
        for (double m : eval.measures) CHECK(close(m, 0.25, 1e-15));
        CHECK(close(eval.union_measure, 1.0 - std::pow(2.0, 1 - n), 1e-12));
    }
}

TEST_CASE("gap margins on symmetric cycles") {
    for (int n = 3; n <= 6; ++n) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
        auto g = DependencyGraph::make(n, edges);
        double abs = abstract_boundary_lambda(g, ProbVec(static_cast<std::size_t>(n), 1.0)).lambda;
        double cyc = cycle_boundary_lambda(ProbVec(static_cast<std::size_t>(n), 1.0)).lambda;
        CHECK(cyc - abs >= 1e-6);
    }
}

TEST_CASE("homogeneity of the cycle scalar") {
    ProbVec p{0.5, 0.3, 0.2, 0.4};
    ProbVec half{0.25, 0.15, 0.1, 0.2};
    CHECK(close(cycle_boundary_lambda(half).lambda, 2 * cycle_boundary_lambda(p).lambda, 1e-9));
}
