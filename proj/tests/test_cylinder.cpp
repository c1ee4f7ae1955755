#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "vlll/cylinder.hpp"
#include "vlll/errors.hpp"

using namespace vlll;
using testutil::close;

namespace {

// event 0 on variable 0 only; event 1 on variables {0,1}
Bigraph two_event_bigraph() { return Bigraph::make(2, 2, {{0, 0}, {1, 0}, {1, 1}}); }

DiscreteCylinderSet hand_example() {
    DiscreteCylinderSet s;
    s.partitions = {{0.3, 0.7}, {0.5, 0.5}};
    s.indicators = {{1, 0}, {0, 0, 1, 1}};
    return s;
}

} // namespace

TEST_CASE("hand-computed measures, union, exclusivity") {
    auto h = two_event_bigraph();
    auto eval = evaluate_cylinder_set(hand_example(), h);
    CHECK(close(eval.measures[0], 0.3, 1e-15));
    CHECK(close(eval.measures[1], 0.7, 1e-15));
    CHECK(close(eval.union_measure, 1.0, 1e-15));
    CHECK(eval.exclusive);
}

TEST_CASE("full coverage by a single event") {
    auto h = Bigraph::make(1, 2, {{0, 0}, {0, 1}});
    DiscreteCylinderSet s;
    s.partitions = {{0.4, 0.6}, {1.0}};
    s.indicators = {{1, 1}};
    auto eval = evaluate_cylinder_set(s, h);
    CHECK(close(eval.measures[0], 1.0, 1e-15));
    CHECK(close(eval.union_measure, 1.0, 1e-15));
}

TEST_CASE("overlapping events are flagged") {
    auto h = two_event_bigraph();
    DiscreteCylinderSet s;
    s.partitions = {{0.3, 0.7}, {0.5, 0.5}};
    s.indicators = {{1, 0}, {1, 0, 1, 1}}; // event 1 reaches into event 0's cell
    auto eval = evaluate_cylinder_set(s, h);
    CHECK(!eval.exclusive);
    CHECK(close(eval.max_adjacent_overlap, 0.15, 1e-15));
    CHECK(close(eval.union_measure, 1.0, 1e-15));
}

TEST_CASE("parallel and serial evaluators agree") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        int m = 3 + static_cast<int>(rng() % 4);
        int n = 2 + static_cast<int>(rng() % 5);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i) {
            edges.push_back({i, static_cast<int>(rng() % static_cast<std::uint64_t>(m))});
            edges.push_back({i, static_cast<int>(rng() % static_cast<std::uint64_t>(m))});
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        auto h = Bigraph::make(n, m, edges);
        DiscreteCylinderSet s;
        for (int j = 0; j < m; ++j) {
            int cells = 2 + static_cast<int>(rng() % 3);
            std::vector<double> part;
            double left = 1.0;
            for (int c = 0; c + 1 < cells; ++c) {
                double len = left * 0.5;
                part.push_back(len);
                left -= len;
            }
            part.push_back(left);
            s.partitions.push_back(part);
        }
        for (int i = 0; i < n; ++i) {
            std::size_t cells = 1;
            for (int j : h.event_nbrs[i]) cells *= s.partitions[j].size();
            std::vector<std::uint8_t> ind(cells, 0);
            for (auto& c : ind) c = rng() % 2;
            s.indicators.push_back(std::move(ind));
        }
        auto a = evaluate_cylinder_set(s, h);
        auto b = evaluate_cylinder_set_serial(s, h);
        CHECK(close(a.union_measure, b.union_measure, 1e-14));
        CHECK(a.exclusive == b.exclusive);
        for (std::size_t k = 0; k < a.measures.size(); ++k)
            CHECK(close(a.measures[k], b.measures[k], 1e-14));
    }
}

TEST_CASE("conformance and cap errors") {
    auto h = two_event_bigraph();
    auto s = hand_example();
    s.indicators[1] = {0, 0, 1}; // wrong tensor size
    CHECK_THROWS_AS(evaluate_cylinder_set(s, h), std::invalid_argument);

    s = hand_example();
    s.partitions[0] = {0.3, 0.6}; // sums to 0.9
    CHECK_THROWS_AS(evaluate_cylinder_set(s, h), std::invalid_argument);

    s = hand_example();
    CHECK_THROWS_AS(evaluate_cylinder_set(s, h, 3), cap_exceeded);
}
