#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "vlll/cycle_boundary.hpp"
#include "vlll/cylinder.hpp"
#include "vlll/errors.hpp"
#include "vlll/gap_engine.hpp"
#include "vlll/tree_boundary.hpp"

using namespace vlll;
using testutil::close;

namespace {

Bigraph h43() { return make_combinatorial_bigraph(4, 3); }

// random applicable op among the three bidirectional kinds and their inverses
ReductionOp random_bidirectional_op(const Bigraph& h, std::mt19937_64& rng) {
    for (;;) {
        switch (rng() % 5) {
        case 0: { // delete a low-degree variable if any
            for (int j = 0; j < h.n_variables; ++j)
                if (h.var_nbrs[j].size() <= 1)
                    return {ReductionKind::DeleteVariable, false, -1, j, -1, {}};
            break;
        }
        case 1: { // attach a fresh degree-1 variable
            int anchor = static_cast<int>(rng() % static_cast<std::uint64_t>(h.n_events));
            return {ReductionKind::DeleteVariable, true, -1, -1, -1, {anchor}};
        }
        case 2: { // duplicate an event
            int i = static_cast<int>(rng() % static_cast<std::uint64_t>(h.n_events));
            return {ReductionKind::DuplicateEvent, false, i, -1, -1, {}};
        }
        case 3: { // duplicate a variable with a random sub-neighborhood
            if (h.n_variables == 0) break;
            int j = static_cast<int>(rng() % static_cast<std::uint64_t>(h.n_variables));
            std::vector<int> sub;
            for (int i : h.var_nbrs[j])
                if (rng() % 2) sub.push_back(i);
            return {ReductionKind::DuplicateVariable, false, -1, j, -1, sub};
        }
        case 4: { // merge a dominated variable if any
            for (int j2 = 0; j2 < h.n_variables; ++j2)
                for (int j = 0; j < h.n_variables; ++j) {
                    if (j == j2) continue;
                    const auto& a = h.var_nbrs[j2];
                    const auto& b = h.var_nbrs[j];
                    if (std::includes(b.begin(), b.end(), a.begin(), a.end()))
                        return {ReductionKind::DuplicateVariable, true, -1, j2, -1, {}};
                }
            break;
        }
        }
    }
}

} // namespace

TEST_CASE("reduction ops round trip") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        Bigraph h = trial % 2 ? make_cycle_bigraph(3 + static_cast<int>(rng() % 4))
                              : testutil::random_tree_bigraph(2 + static_cast<int>(rng() % 5), rng);
        auto op = random_bidirectional_op(h, rng);
        auto h2 = apply_reduction(h, op);
        auto back = apply_reduction(h2, inverse_of(h, op));
        CHECK(back == h);
    }

    // delete-event and delete-edge round trips
    auto h = make_cycle_bigraph(4);
    ReductionOp del_event{ReductionKind::DeleteEvent, false, 2, -1, -1, {}};
    auto h2 = apply_reduction(h, del_event);
    CHECK(apply_reduction(h2, inverse_of(h, del_event)) == h);

    // an edge can come out only when a duplicate variable keeps the base graph
    ReductionOp dup{ReductionKind::DuplicateVariable, false, -1, 1, -1, {0, 1}};
    auto hdup = apply_reduction(h, dup);
    ReductionOp del_edge{ReductionKind::DeleteEdge, false, 0, 1, -1, {}};
    auto hcut = apply_reduction(hdup, del_edge);
    CHECK(apply_reduction(hcut, inverse_of(hdup, del_edge)) == hdup);
    // without the duplicate the same deletion changes the base graph
    CHECK_THROWS_AS(apply_reduction(h, del_edge), std::invalid_argument);
}

TEST_CASE("inapplicable ops are rejected") {
    auto h = make_cycle_bigraph(3);
    CHECK_THROWS_AS(apply_reduction(h, {ReductionKind::DeleteVariable, false, -1, 0, -1, {}}),
                    std::invalid_argument); // degree 2
    CHECK_THROWS_AS(apply_reduction(h, {ReductionKind::DuplicateEvent, true, 0, -1, -1, {}}),
                    std::invalid_argument); // no identical twin
    CHECK_THROWS_AS(apply_reduction(h, {ReductionKind::DuplicateVariable, true, -1, 0, -1, {}}),
                    std::invalid_argument); // not dominated
}

TEST_CASE("normalization reaches the expected fixpoints") {
    // duplicated cycle variables melt away
    auto h4 = make_cycle_bigraph(4);
    auto edges = h4.edges;
    for (int j = 0; j < 4; ++j) {
        edges.push_back({j == 0 ? 3 : j - 1, 4 + j}); // copy of variable j
        edges.push_back({j, 4 + j});
    }
    auto padded = Bigraph::make(4, 8, edges);
    auto nr = normalize(padded);
    CHECK(nr.normal == h4);
    CHECK(!nr.trace.empty());

    // an isolated variable disappears, then the duplicate events merge
    auto iso = Bigraph::make(2, 2, {{0, 0}, {1, 0}});
    CHECK(normalize(iso).normal.n_events == 1);
    CHECK(normalize(iso).normal.n_variables == 0);

    // already normal: no subsumed neighborhoods among the 3-subsets
    auto nr43 = normalize(h43());
    CHECK(nr43.normal == h43());
    CHECK(nr43.trace.empty());
    auto base43 = h43();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            const auto& na = base43.var_nbrs[a];
            const auto& nb = base43.var_nbrs[b];
            CHECK(!std::includes(nb.begin(), nb.end(), na.begin(), na.end()));
        }
}

TEST_CASE("classification of the catalog") {
    auto v4 = classify_gap(make_cycle_bigraph(4));
    CHECK(v4.status == GapStatus::Gapful);
    bool cites_cycle = false;
    for (const auto& step : v4.trace) cites_cycle = cites_cycle || step.rule == "cyclic-containment";
    CHECK(cites_cycle);

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 5; ++trial) {
        auto tree = testutil::random_tree_bigraph(2 + static_cast<int>(rng() % 8), rng);
        CHECK(classify_gap(tree).status == GapStatus::Gapless);
    }

    auto vstar = classify_gap(make_hstar());
    CHECK(vstar.status == GapStatus::Gapful);
    CHECK(vstar.trace.back().tag == "hstar-gapful");

    CHECK(classify_gap(h43()).status == GapStatus::Gapless);
    CHECK(classify_gap(make_combinatorial_bigraph(5, 4)).status == GapStatus::Gapless);
    CHECK(classify_gap(make_combinatorial_bigraph(6, 5)).status == GapStatus::Gapless);
    CHECK(classify_gap(make_combinatorial_bigraph(7, 5)).status == GapStatus::Gapful);
    CHECK(classify_gap(make_combinatorial_bigraph(4, 2)).status == GapStatus::Gapful);

    // clique-variable bigraph of a chordal fan
    auto fan = DependencyGraph::make(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}});
    REQUIRE(is_chordal(fan));
    auto vfan = classify_gap(make_canonical_bigraph(fan));
    CHECK(vfan.status == GapStatus::Gapless);
    CHECK(vfan.trace.back().tag == "chordal-strongly-a-gapless");

    // merged duplicate events collapse the all-shared-variable instance
    auto all_on_one = Bigraph::make(3, 1, {{0, 0}, {1, 0}, {2, 0}});
    auto vone = classify_gap(all_on_one);
    CHECK(vone.status == GapStatus::Gapless);
    CHECK(vone.trace.back().tag == "treelike-gapless");

    // sparsified combinatorial instance: drop one variable, base stays complete
    {
        auto h75 = make_combinatorial_bigraph(7, 5);
        std::vector<std::pair<int, int>> edges;
        for (auto [i, j] : h75.edges)
            if (j != 6) edges.push_back({i, j});
        auto sparse = Bigraph::make(h75.n_events, 6, edges);
        auto vs = classify_gap(sparse);
        CHECK(vs.status == GapStatus::Gapful);
        CHECK(vs.trace.back().tag == "sparsification-gapful");
    }

    // beyond every rule: dense combinatorial family without embedded cycles
    CHECK(classify_gap(make_combinatorial_bigraph(8, 6)).status == GapStatus::Unknown);

    CHECK_THROWS_AS(classify_gap(Bigraph::make(2, 2, {{0, 0}, {1, 1}})), std::invalid_argument);
}

TEST_CASE("verdicts survive the bidirectional operations") {
    std::mt19937_64 rng(77);
    std::vector<Bigraph> seeds{make_cycle_bigraph(4), h43(), make_hstar(),
                               testutil::random_tree_bigraph(6, rng)};
    for (const auto& seed : seeds) {
        auto expect = classify_gap(seed).status;
        Bigraph h = seed;
        for (int step = 0; step < 6; ++step) {
            h = apply_reduction(h, random_bidirectional_op(h, rng));
            CHECK(classify_gap(h).status == expect);
        }
    }
}

TEST_CASE("one-directional rules only ever strengthen the right side") {
    // gapful may come from edge deletions (sparsification) or added events
    // (containment); gapless from the shifted combinatorial family; never
    // the other way around
    std::vector<Bigraph> instances{make_cycle_bigraph(4), h43(), make_hstar(),
                                   make_combinatorial_bigraph(7, 5),
                                   make_combinatorial_bigraph(5, 4)};
    for (const auto& h : instances) {
        auto v = classify_gap(h);
        for (const auto& step : v.trace) {
            if (step.tag == "sparsification-gapful" || step.tag == "contains-gapful")
                CHECK(v.status == GapStatus::Gapful);
            if (step.tag == "shifted-combinatorial-gapless" || step.tag == "h43-gapless")
                CHECK(v.status == GapStatus::Gapless);
        }
    }
}

TEST_CASE("graph-level gap traits") {
    auto p3 = DependencyGraph::make(3, {{0, 1}, {1, 2}});
    auto c4 = DependencyGraph::make(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    std::vector<std::pair<int, int>> k5e;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) k5e.push_back({i, j});
    auto k5 = DependencyGraph::make(5, k5e);

    auto tp3 = classify_graph(p3);
    CHECK(!tp3.a_gapful);
    CHECK(!tp3.strongly_a_gapful);
    auto tc4 = classify_graph(c4);
    CHECK(tc4.a_gapful);
    CHECK(tc4.strongly_a_gapful);
    auto tk5 = classify_graph(k5);
    CHECK(tk5.a_gapful);
    CHECK(!tk5.strongly_a_gapful);
}

TEST_CASE("numeric gap checks across solvers") {
    auto h4 = make_cycle_bigraph(4);
    auto c = numeric_gap_check(h4, ProbVec(4, 1.0));
    CHECK(close(c.lambda_abstract, 0.2928932, 1e-6));
    CHECK(close(c.lambda_variable, 1.0 / 3, 1e-9));
    CHECK(c.gapful_in_direction);
    CHECK(c.variable_method == "cycle");

    auto p3 = Bigraph::make(3, 2, {{0, 0}, {1, 0}, {1, 1}, {2, 1}});
    auto t = numeric_gap_check(p3, ProbVec(3, 1.0));
    CHECK(close(t.lambda_variable, t.lambda_abstract, 1e-9));
    CHECK(!t.gapful_in_direction);
    CHECK(t.variable_method == "tree");

    auto h3 = make_cycle_bigraph(3);
    auto g = numeric_gap_check(h3, ProbVec(3, 1.0));
    CHECK(close(g.lambda_abstract, 1.0 / 3, 1e-9));
    CHECK(close(g.lambda_variable, (3.0 - std::sqrt(5.0)) / 2.0, 1e-9));
    CHECK(g.gapful_in_direction);
}

TEST_CASE("numeric checks agree with symbolic verdicts") {
    std::mt19937_64 rng(101);
    // gapless instance: every margin vanishes
    auto tree = testutil::random_tree_bigraph(6, rng);
    REQUIRE(classify_gap(tree).status == GapStatus::Gapless);
    for (int k = 0; k < 5; ++k) {
        auto dir = testutil::random_direction(6, rng);
        auto c = numeric_gap_check(tree, dir);
        CHECK(std::abs(c.lambda_variable - c.lambda_abstract) <= 1e-9);
    }
    // gapful instance: some direction shows a margin
    auto h5 = make_cycle_bigraph(5);
    REQUIRE(classify_gap(h5).status == GapStatus::Gapful);
    bool some_margin = false;
    for (int k = 0; k < 5; ++k) {
        auto dir = testutil::random_direction(5, rng);
        some_margin = some_margin || numeric_gap_check(h5, dir).gapful_in_direction;
    }
    CHECK(some_margin);
}

TEST_CASE("small exclusive witness") {
    auto h3 = make_cycle_bigraph(3);
    auto eval3 = evaluate_cylinder_set(small_exclusive_witness(h3), h3);
    CHECK(eval3.exclusive);
    for (double m : eval3.measures) CHECK(close(m, 1.0 / 9, 1e-12));

    auto h21 = Bigraph::make(2, 1, {{0, 0}, {1, 0}});
    auto eval21 = evaluate_cylinder_set(small_exclusive_witness(h21), h21);
    CHECK(eval21.exclusive);
    for (double m : eval21.measures) CHECK(close(m, 0.5, 1e-12));

    auto hs = make_hstar();
    auto evalh = evaluate_cylinder_set(small_exclusive_witness(hs), hs);
    CHECK(evalh.exclusive);
    for (int i = 0; i < 5; ++i)
        CHECK(close(evalh.measures[static_cast<std::size_t>(i)],
                    std::pow(5.0, -static_cast<double>(hs.event_nbrs[i].size())), 1e-12));
}

TEST_CASE("four-event exclusive boundary witness") {
    auto h = h43();
    auto sym = h43_witness(ProbVec(4, 0.25));
    auto esym = evaluate_cylinder_set(sym, h);
    CHECK(esym.exclusive);
    CHECK(close(esym.union_measure, 1.0, 1e-12));
    for (double m : esym.measures) CHECK(close(m, 0.25, 1e-12));

    auto skew = h43_witness({0.4, 0.3, 0.2, 0.1});
    auto eskew = evaluate_cylinder_set(skew, h);
    CHECK(eskew.exclusive);
    CHECK(close(eskew.union_measure, 1.0, 1e-12));
    // sorted entries assigned per the documented event order
    CHECK(close(eskew.measures[0], 0.3, 1e-12));
    CHECK(close(eskew.measures[1], 0.4, 1e-12));
    CHECK(close(eskew.measures[2], 0.2, 1e-12));
    CHECK(close(eskew.measures[3], 0.1, 1e-12));

    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        auto p = testutil::random_direction(4, rng, 0.05, 1.0);
        double sum = p[0] + p[1] + p[2] + p[3];
        for (double& x : p) x /= sum;
        auto eval = evaluate_cylinder_set(h43_witness(p), h);
        CHECK(eval.exclusive);
        CHECK(close(eval.union_measure, 1.0, 1e-9));
    }

    CHECK_THROWS_AS(h43_witness({0.3, 0.3, 0.3, 0.3}), std::invalid_argument);
}

TEST_CASE("cycle order recovery") {
    CHECK(cyclic_event_order(make_cycle_bigraph(6)).has_value());
    CHECK(!cyclic_event_order(h43()).has_value());
    CHECK(!cyclic_event_order(Bigraph::make(3, 1, {{0, 0}, {1, 0}, {2, 0}})).has_value());

    // a duplicated cycle variable reduces away and the cycle solver applies
    auto h4 = make_cycle_bigraph(4);
    auto edges = h4.edges;
    edges.push_back({0, 4});
    edges.push_back({1, 4}); // copy of variable 1
    auto decorated = Bigraph::make(4, 5, edges);
    REQUIRE(cyclic_event_order(decorated).has_value());
    auto chk = numeric_gap_check(decorated, ProbVec(4, 1.0));
    CHECK(chk.variable_method == "cycle");
    CHECK(close(chk.lambda_variable, 1.0 / 3, 1e-9));
}
