#include "vlll/cycle_boundary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vlll/errors.hpp"

namespace vlll {

namespace {

void check_cycle_direction(const ProbVec& p) {
    if (p.size() < 3) throw std::invalid_argument("cycle direction needs at least 3 entries");
    for (double x : p)
        if (!(x > 0.0)) throw std::invalid_argument("direction entries must be positive");
}

struct ChainScan {
    bool valid = false;
    std::vector<double> b;
    double residual = 0.0; // b_{n-1} - (1 - lambda p_{i-1})
};

ChainScan chain(const ProbVec& p, int rot, double lambda) {
    const int n = static_cast<int>(p.size());
    ChainScan s;
    s.b.assign(n - 1, 0.0);
    double prev = 0.0;
    for (int k = 1; k <= n - 1; ++k) {
        double b = lambda * p[(rot + k - 1) % n] / (1.0 - prev);
        if (!(b > 0.0) || b >= 1.0) return s;
        s.b[k - 1] = b;
        prev = b;
    }
    s.valid = true;
    s.residual = s.b[n - 2] - (1.0 - lambda * p[(rot + n - 1) % n]);
    return s;
}

} // namespace

std::optional<std::vector<double>> cycle_chain_values(const ProbVec& p, int rotation, double lambda) {
    check_cycle_direction(p);
    auto s = chain(p, rotation, lambda);
    if (!s.valid) return std::nullopt;
    return s.b;
}

std::optional<double> cycle_chain_solve(const ProbVec& p, int rotation, double tol) {
    check_cycle_direction(p);
    const int n = static_cast<int>(p.size());
    if (rotation < 0 || rotation >= n) throw std::invalid_argument("rotation out of range");

    auto below = [&](double lam) {
        auto s = chain(p, rotation, lam);
        return s.valid && s.residual < 0.0;
    };
    double lo = 0.0;
    double hi = 1.0 / p[rotation]; // b_1 reaches 1, chain leaves range
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (below(mid))
            lo = mid;
        else
            hi = mid;
    }
    auto s = chain(p, rotation, lo);
    if (!s.valid || std::abs(s.residual) > std::max(tol, 1e-9))
        return std::nullopt;
    // left probe: strictly below the root the residual must still be negative
    if (lo > 0.0 && !below(lo * (1.0 - 1e-6)))
        throw no_convergence("cycle chain minimality probe failed");
    return lo;
}

BoundaryResult cycle_boundary_lambda(const ProbVec& p, double tol) {
    check_cycle_direction(p);
    const int n = static_cast<int>(p.size());
    double best = 0.0;
    int best_rot = -1;
    for (int rot = 0; rot < n; ++rot) {
        auto lam = cycle_chain_solve(p, rot, tol);
        if (lam && (best_rot < 0 || *lam < best)) {
            best = *lam;
            best_rot = rot;
        }
    }
    if (best_rot < 0) throw no_convergence("no rotation admits a chain solution");

    BoundaryResult res;
    res.direction = p;
    res.lambda = best;
    res.boundary_vector = p;
    for (double& x : res.boundary_vector) x *= best;
    res.method = "cycle";
    res.residual = std::abs(chain(p, best_rot, best).residual);
    res.rotation = best_rot;
    return res;
}

double triangle_closed_form(const ProbVec& p) {
    if (p.size() != 3) throw std::invalid_argument("closed form needs exactly 3 entries");
    check_cycle_direction(p);
    double sum = p[0] + p[1] + p[2];
    double best = 0.0;
    bool have = false;
    for (int i = 0; i < 3; ++i) {
        double prod = (p[i] / sum) * (p[(i + 2) % 3] / sum);
        double disc = 1.0 - 4.0 * prod;
        if (disc < 0.0) throw std::invalid_argument("negative discriminant in triangle closed form");
        // rationalized minimum root of prod*x^2 - x + 1: no cancellation as
        // the product vanishes
        double lam = 2.0 / (1.0 + std::sqrt(disc));
        if (!have || lam < best) {
            best = lam;
            have = true;
        }
    }
    return best / sum;
}

DiscreteCylinderSet cycle_boundary_witness(const ProbVec& p, const BoundaryResult& result) {
    check_cycle_direction(p);
    const int n = static_cast<int>(p.size());
    if (result.rotation < 0 || result.rotation >= n || result.method != "cycle")
        throw std::invalid_argument("witness needs a cycle boundary result with a rotation");
    const int rot = result.rotation;
    const double lambda = result.lambda;
    auto s = chain(p, rot, lambda);
    if (!s.valid || std::abs(s.residual) > 1e-6)
        throw std::invalid_argument("boundary result inconsistent with the chain recurrence");

    // beta[e]: chain value owned by event e; the event before the broken
    // variable keeps the terminal strip instead
    std::vector<double> beta(n, 0.0);
    for (int k = 1; k <= n - 1; ++k) beta[(rot + k - 1) % n] = s.b[k - 1];

    DiscreteCylinderSet out;
    out.partitions.assign(n, {});
    for (int j = 0; j < n; ++j) {
        if (j == rot)
            out.partitions[j] = {1.0};
        else {
            double cut = beta[(j + n - 1) % n]; // previous event's chain value
            out.partitions[j] = {cut, 1.0 - cut};
        }
    }
    out.indicators.assign(n, {});
    auto h = make_cycle_bigraph(n);
    for (int e = 0; e < n; ++e) {
        const auto& vars = h.event_nbrs[e]; // ascending
        std::size_t cells = 1;
        for (int j : vars) cells *= out.partitions[j].size();
        out.indicators[e].assign(cells, 0);
        std::size_t idx = 0;
        for (int j : vars) {
            // own axis: upper part past the previous cut; next axis: [0, beta_e];
            // the broken axis has a single cell
            int c = (j == rot) ? 0 : (j == e ? 1 : 0);
            idx = idx * out.partitions[j].size() + static_cast<std::size_t>(c);
        }
        out.indicators[e][idx] = 1;
    }
    return out;
}

DiscreteCylinderSet cycle_gapful_witness(int n) {
    if (n < 3) throw std::invalid_argument("cycle witness needs n >= 3");
    DiscreteCylinderSet out;
    out.partitions.assign(n, {0.5, 0.5});
    auto h = make_cycle_bigraph(n);
    out.indicators.assign(n, {});
    for (int e = 0; e < n; ++e) {
        const auto& vars = h.event_nbrs[e];
        out.indicators[e].assign(4, 0);
        std::size_t idx = 0;
        for (int j : vars) {
            int c = j == e ? 1 : 0; // x_e in [1/2,1], x_{e+1} in [0,1/2)
            idx = idx * 2 + static_cast<std::size_t>(c);
        }
        out.indicators[e][idx] = 1;
    }
    return out;
}

} // namespace vlll
