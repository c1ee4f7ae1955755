#include "vlll/shearer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "vlll/errors.hpp"
#include "vlll/exec.hpp"

namespace vlll {

ProbVec clamp_unit(const ProbVec& p) {
    ProbVec q(p);
    for (double& x : q) x = std::min(1.0, x);
    return q;
}

namespace {

void check_input(const DependencyGraph& g, const ProbVec& p) {
    if (static_cast<int>(p.size()) != g.n)
        throw std::invalid_argument("probability vector length does not match vertex count");
    for (double x : p)
        if (!(x > 0.0)) throw std::invalid_argument("probability entries must be positive");
}

std::vector<std::uint64_t> closed_neighborhood_masks(const DependencyGraph& g) {
    std::vector<std::uint64_t> nb(g.n, 0);
    for (int v = 0; v < g.n; ++v) nb[v] = 1ull << v;
    for (auto [u, v] : g.edges) {
        nb[u] |= 1ull << v;
        nb[v] |= 1ull << u;
    }
    return nb;
}

// Alternating independence polynomial of the induced subgraph on `mask`:
//   W(mask) = sum over independent T inside mask of (-1)^{|T|} prod p_i.
// Vertex-removal recurrence on the lowest vertex, memoized per call site.
struct AltIndPoly {
    const ProbVec& p;
    const std::vector<std::uint64_t>& nclosed;
    std::unordered_map<std::uint64_t, double> memo;

    double eval(std::uint64_t mask) {
        if (mask == 0) return 1.0;
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        int v = std::countr_zero(mask);
        double w = eval(mask & ~(1ull << v)) - p[v] * eval(mask & ~nclosed[v]);
        memo.emplace(mask, w);
        return w;
    }
};

ShearerReport finish(ShearerReport r) {
    r.min_value = r.q.empty() ? 0.0 : r.q[0];
    r.min_set = 0;
    kahan_sum total;
    for (std::size_t k = 0; k < r.q.size(); ++k) {
        total.add(r.q[k]);
        if (r.q[k] < r.min_value) {
            r.min_value = r.q[k];
            r.min_set = r.sets[k];
        }
    }
    r.sum = total.value();
    return r;
}

} // namespace

ShearerReport shearer_values(const DependencyGraph& g, const ProbVec& p, int vertex_cap) {
    check_input(g, p);
    ShearerReport r;
    r.sets = independent_set_masks(g, vertex_cap);
    r.q.assign(r.sets.size(), 0.0);
    auto nclosed = closed_neighborhood_masks(g);
    const std::uint64_t all = g.n == 64 ? ~0ull : (1ull << g.n) - 1;

    const std::int64_t nsets = static_cast<std::int64_t>(r.sets.size());
#ifdef _OPENMP
#pragma omp parallel num_threads(worker_threads())
#endif
    {
        AltIndPoly w{p, nclosed, {}};
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 64)
#endif
        for (std::int64_t k = 0; k < nsets; ++k) {
            std::uint64_t s = r.sets[k];
            double prefix = 1.0;
            std::uint64_t closed = 0;
            for (std::uint64_t rest = s; rest;) {
                int v = std::countr_zero(rest);
                rest &= rest - 1;
                prefix *= p[v];
                closed |= nclosed[v];
            }
            r.q[k] = prefix * w.eval(all & ~closed);
        }
    }
    return finish(std::move(r));
}

ShearerReport shearer_values_reference(const DependencyGraph& g, const ProbVec& p, int vertex_cap) {
    check_input(g, p);
    ShearerReport r;
    r.sets = independent_set_masks(g, vertex_cap);
    r.q.assign(r.sets.size(), 0.0);
    for (std::size_t k = 0; k < r.sets.size(); ++k) {
        std::uint64_t s = r.sets[k];
        kahan_sum acc;
        for (std::uint64_t t : r.sets) {
            if ((t & s) != s) continue;
            double term = 1.0;
            for (std::uint64_t rest = t; rest;) {
                int v = std::countr_zero(rest);
                rest &= rest - 1;
                term *= p[v];
            }
            if (std::popcount(t ^ s) & 1) term = -term;
            acc.add(term);
        }
        r.q[k] = acc.value();
    }
    return finish(std::move(r));
}

bool in_abstract_interior(const DependencyGraph& g, const ProbVec& p, int vertex_cap) {
    for (double x : p)
        if (x >= 1.0) return false;
    auto r = shearer_values(g, p, vertex_cap);
    return r.min_value > 0.0;
}

BoundaryResult abstract_boundary_lambda(const DependencyGraph& g, const ProbVec& direction,
                                        double tol, int vertex_cap) {
    check_input(g, direction);
    if (!is_connected(g)) throw std::invalid_argument("abstract boundary needs a connected graph");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

    double sum = 0.0, maxdir = 0.0;
    for (double x : direction) {
        sum += x;
        maxdir = std::max(maxdir, x);
    }
    auto scaled = [&](double lam) {
        ProbVec q(direction);
        for (double& x : q) x *= lam;
        return q;
    };
    double lo = 0.5 / sum;        // l1-norm 0.5, strictly inside
    double hi = 1.0 / maxdir;     // an entry reaches 1, strictly outside
    const int iter_cap = 200;
    int it = 0;
    while (hi - lo > tol && hi - lo > 1e-16 * hi) {
        if (++it > iter_cap) throw no_convergence("abstract boundary bisection exceeded iteration cap");
        double mid = 0.5 * (lo + hi);
        if (in_abstract_interior(g, scaled(mid), vertex_cap))
            lo = mid;
        else
            hi = mid;
    }

    BoundaryResult res;
    res.direction = direction;
    res.lambda = 0.5 * (lo + hi);
    res.boundary_vector = scaled(res.lambda);
    res.method = "shearer";
    res.residual = std::abs(shearer_values(g, clamp_unit(res.boundary_vector), vertex_cap).min_value);
    return res;
}

} // namespace vlll
