#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "vlll/errors.hpp"
#include "vlll/shearer.hpp"

using namespace vlll;
using testutil::close;

namespace {
const DependencyGraph K3 = DependencyGraph::make(3, {{0, 1}, {1, 2}, {0, 2}});
const DependencyGraph C4 = DependencyGraph::make(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
const DependencyGraph C5 = DependencyGraph::make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
} // namespace

TEST_CASE("alternating sums on small graphs") {
    auto r3 = shearer_values(K3, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(close(r3.q[0], 0.0, 1e-12)); // 1 - 3p
    CHECK(close(r3.sum, 1.0, 1e-12));

    auto r4 = shearer_values(C4, {0.25, 0.25, 0.25, 0.25});
    CHECK(close(r4.q[0], 0.125, 1e-12)); // 1 - 4p + 2p^2
    CHECK(r4.q[0] <= 1.0);
    CHECK(close(r4.sum, 1.0, 1e-12));
}

TEST_CASE("both evaluation routes agree with the definition") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 11);
        auto g = testutil::random_graph(n, 0.35, rng);
        auto p = testutil::random_direction(n, rng, 0.02, 0.6);
        auto fast = shearer_values(g, p);
        auto ref = shearer_values_reference(g, p);
        REQUIRE(fast.q.size() == ref.q.size());
        for (std::size_t k = 0; k < fast.q.size(); ++k) {
            CHECK(close(fast.q[k], ref.q[k], 1e-12));
            CHECK(close(fast.q[k], testutil::qset_oracle(g, p, fast.sets[k]), 1e-11));
        }
        CHECK(close(fast.sum, 1.0, 1e-12));
    }
}

TEST_CASE("interior membership") {
    CHECK(in_abstract_interior(DependencyGraph::make(1, {}), {0.5}));
    CHECK(in_abstract_interior(C4, ProbVec(4, 0.29)));
    CHECK(!in_abstract_interior(C4, ProbVec(4, 0.30)));
    // complete graphs: inside exactly when the entries sum below 1
    std::vector<std::pair<int, int>> k5_edges;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) k5_edges.push_back({i, j});
    auto k5 = DependencyGraph::make(5, k5_edges);
    CHECK(in_abstract_interior(k5, ProbVec(5, 0.99 / 5)));
    CHECK(!in_abstract_interior(k5, ProbVec(5, 1.01 / 5)));
    CHECK_THROWS_AS(in_abstract_interior(C4, {0.2, 0.2}), std::invalid_argument);
}

TEST_CASE("abstract boundary scalars") {
    // smaller root of 2x^2 - 4x + 1
    const double c4_root = (4.0 - std::sqrt(8.0)) / 4.0;
    auto r = abstract_boundary_lambda(C4, {1, 1, 1, 1});
    CHECK(close(r.lambda, c4_root, 1e-9));
    CHECK(r.method == "shearer");
    CHECK(close(r.boundary_vector[0], r.lambda, 1e-15));

    // smaller root of 5x^2 - 5x + 1
    const double c5_root = (5.0 - std::sqrt(5.0)) / 10.0;
    CHECK(close(abstract_boundary_lambda(C5, {1, 1, 1, 1, 1}).lambda, c5_root, 1e-9));

    CHECK(close(abstract_boundary_lambda(K3, {1, 1, 1}).lambda, 1.0 / 3, 1e-9));
}

TEST_CASE("homogeneity of the boundary scalar") {
    auto a = abstract_boundary_lambda(C4, {1, 1, 1, 1});
    auto b = abstract_boundary_lambda(C4, {2, 2, 2, 2});
    CHECK(close(b.lambda, a.lambda / 2, 2e-10));
    auto c = abstract_boundary_lambda(C5, {0.4, 0.8, 0.3, 0.9, 0.5});
    auto d = abstract_boundary_lambda(C5, {0.2, 0.4, 0.15, 0.45, 0.25});
    CHECK(close(d.lambda, 2 * c.lambda, 2e-9));
}

TEST_CASE("interior is downward closed") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + static_cast<int>(rng() % 9);
        auto g = testutil::random_graph(n, 0.4, rng);
        auto q = testutil::random_direction(n, rng, 0.01, 0.35);
        if (!in_abstract_interior(g, q)) continue;
        auto p = q;
        std::uniform_real_distribution<double> u(0.3, 1.0);
        for (double& x : p) x *= u(rng);
        CHECK(in_abstract_interior(g, p));
    }
}

TEST_CASE("boundary input validation") {
    CHECK_THROWS_AS(abstract_boundary_lambda(C4, {1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(abstract_boundary_lambda(DependencyGraph::make(2, {}), {1, 1}),
                    std::invalid_argument); // disconnected
}
