#pragma once
// Shared generators and brute-force oracles for the test suites. The oracles
// are deliberately written from the definitions, independent of the library
// code paths they check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "vlll/bigraph.hpp"
#include "vlll/shearer.hpp"

namespace testutil {

using vlll::Bigraph;
using vlll::DependencyGraph;
using vlll::ProbVec;

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline DependencyGraph random_graph(int n, double density, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (u(rng) < density) edges.push_back({i, j});
    return DependencyGraph::make(n, std::move(edges));
}

inline DependencyGraph random_connected_graph(int n, double density, std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v)
        edges.push_back({static_cast<int>(rng() % static_cast<std::uint64_t>(v)), v});
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (u(rng) < density) edges.push_back({i, j});
    return DependencyGraph::make(n, std::move(edges));
}

// Tree bigraph: random attachment tree on events, one variable per edge.
inline Bigraph random_tree_bigraph(int n, std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int k = 1; k < n; ++k) {
        int parent = static_cast<int>(rng() % static_cast<std::uint64_t>(k));
        edges.push_back({parent, k - 1});
        edges.push_back({k, k - 1});
    }
    return Bigraph::make(n, n > 1 ? n - 1 : 0, std::move(edges));
}

inline ProbVec random_direction(int n, std::mt19937_64& rng, double lo = 0.1, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    ProbVec p(static_cast<std::size_t>(n));
    for (double& x : p) x = u(rng);
    return p;
}

// 2^n scan over all subsets
inline long long count_independent_sets_bruteforce(const DependencyGraph& g) {
    long long count = 0;
    for (std::uint64_t mask = 0; mask < (1ull << g.n); ++mask) {
        bool ok = true;
        for (auto [u, v] : g.edges)
            if ((mask >> u & 1) && (mask >> v & 1)) {
                ok = false;
                break;
            }
        if (ok) ++count;
    }
    return count;
}

// chordality from the definition: no induced cycle of length >= 4
inline bool chordal_bruteforce(const DependencyGraph& g) {
    const int n = g.n;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::vector<int> verts;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1) verts.push_back(v);
        if (verts.size() < 4) continue;
        // induced subgraph is a cycle iff connected and every degree is 2
        bool all_deg2 = true;
        int edge_count = 0;
        for (std::size_t a = 0; a < verts.size() && all_deg2; ++a) {
            int deg = 0;
            for (std::size_t b = 0; b < verts.size(); ++b)
                if (a != b && g.adjacent(verts[a], verts[b])) ++deg;
            edge_count += deg;
            all_deg2 = deg == 2;
        }
        if (!all_deg2 || edge_count != 2 * static_cast<int>(verts.size())) continue;
        // connected?
        std::vector<int> stack{verts[0]};
        std::vector<bool> seen(verts.size(), false);
        seen[0] = true;
        int reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < verts.size(); ++b)
                if (!seen[b] && g.adjacent(v, verts[b])) {
                    seen[b] = true;
                    ++reached;
                    stack.push_back(verts[b]);
                }
        }
        if (reached == static_cast<int>(verts.size())) return false;
    }
    return true;
}

// alternating sums straight from the definition, scanning all 2^n subsets
inline double qset_oracle(const DependencyGraph& g, const ProbVec& p, std::uint64_t s) {
    auto independent = [&](std::uint64_t mask) {
        for (auto [u, v] : g.edges)
            if ((mask >> u & 1) && (mask >> v & 1)) return false;
        return true;
    };
    double sum = 0.0;
    for (std::uint64_t t = 0; t < (1ull << g.n); ++t) {
        if ((t & s) != s || !independent(t)) continue;
        double term = 1.0;
        int extra = 0;
        for (int v = 0; v < g.n; ++v)
            if (t >> v & 1) {
                term *= p[static_cast<std::size_t>(v)];
                if (!(s >> v & 1)) ++extra;
            }
        sum += (extra % 2 ? -1.0 : 1.0) * term;
    }
    return sum;
}

// root of a monotone increasing function on [lo, hi]
inline double bisect_oracle(const std::function<double(double)>& f, double lo, double hi) {
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace testutil
