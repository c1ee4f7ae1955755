#include "vlll/tree_boundary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "vlll/errors.hpp"

namespace vlll {

RootedTree root_tree(const Bigraph& h) {
    auto base = base_graph(h);
    if (!is_tree(base)) throw std::invalid_argument("base graph is not a tree");
    auto vr = reduce_variables(h);

    // after reduction every variable sits on exactly one tree edge
    std::map<std::pair<int, int>, int> edge_to_var;
    for (int j = 0; j < vr.reduced.n_variables; ++j) {
        const auto& evs = vr.reduced.var_nbrs[j];
        if (evs.size() != 2)
            throw std::invalid_argument("treelike bigraph has a variable not on a single edge");
        edge_to_var[{evs[0], evs[1]}] = vr.kept[j];
    }

    RootedTree t;
    t.root = 0;
    for (int v = 1; v < base.n; ++v)
        if (base.degree(v) > base.degree(t.root)) t.root = v;

    const int n = base.n;
    t.parent.assign(n, -1);
    t.children.assign(n, {});
    t.edge_var.assign(n, -1);
    std::vector<int> stack{t.root}, seen(n, 0);
    seen[t.root] = 1;
    std::vector<int> preorder;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        preorder.push_back(v);
        for (int w : base.adj[v]) {
            if (seen[w]) continue;
            seen[w] = 1;
            t.parent[w] = v;
            t.children[v].push_back(w);
            auto key = std::minmax(v, w);
            t.edge_var[w] = edge_to_var.at({key.first, key.second});
            stack.push_back(w);
        }
    }
    for (auto& c : t.children) std::sort(c.begin(), c.end());
    t.postorder.assign(preorder.rbegin(), preorder.rend());
    return t;
}

namespace {

struct TreeScan {
    bool valid = false;
    std::vector<double> q;
    double residual = 0.0; // lambda*p_root - prod_child(1 - q)
};

TreeScan scan(const RootedTree& t, const ProbVec& p, double lambda) {
    TreeScan s;
    const int n = static_cast<int>(p.size());
    s.q.assign(n, 0.0);
    for (int v : t.postorder) {
        double denom = 1.0;
        for (int c : t.children[v]) denom *= 1.0 - s.q[c];
        if (v == t.root) {
            s.residual = lambda * p[v] - denom;
            s.valid = true;
            return s;
        }
        if (denom <= 0.0) return s;
        double q = lambda * p[v] / denom;
        if (q <= 0.0 || q >= 1.0) return s;
        s.q[v] = q;
    }
    return s;
}

void check_direction(const Bigraph& h, const ProbVec& p) {
    if (static_cast<int>(p.size()) != h.n_events)
        throw std::invalid_argument("direction length does not match event count");
    for (double x : p)
        if (!(x > 0.0)) throw std::invalid_argument("direction entries must be positive");
}

} // namespace

BoundaryResult tree_boundary_lambda(const Bigraph& h, const ProbVec& direction, double tol) {
    check_direction(h, direction);
    auto t = root_tree(h);

    double sum = 0.0, maxp = 0.0;
    for (double x : direction) {
        sum += x;
        maxp = std::max(maxp, x);
    }
    // below the boundary the scan is valid with negative root residual
    auto below = [&](double lam) {
        auto s = scan(t, direction, lam);
        return s.valid && s.residual < 0.0;
    };
    double lo = 0.5 / sum;
    double hi = 1.0 / maxp;
    if (!below(lo)) throw no_convergence("tree bisection bracket failed at lower end");
    const int iter_cap = 200;
    int it = 0;
    while (hi - lo > std::min(tol, 1e-15 * hi) && it++ < iter_cap) {
        double mid = 0.5 * (lo + hi);
        if (below(mid))
            lo = mid;
        else
            hi = mid;
    }

    BoundaryResult res;
    res.direction = direction;
    res.lambda = lo;
    res.boundary_vector = direction;
    for (double& x : res.boundary_vector) x *= res.lambda;
    res.method = "tree";
    res.residual = std::abs(scan(t, direction, lo).residual);
    return res;
}

BoxWitness tree_witness(const Bigraph& h, const ProbVec& boundary, double tol) {
    check_direction(h, boundary);
    auto t = root_tree(h);
    auto s = scan(t, boundary, 1.0);
    if (!s.valid || std::abs(s.residual) > tol)
        throw std::invalid_argument("boundary vector violates the tree root equation");

    BoxWitness w;
    w.n_events = h.n_events;
    w.n_variables = h.n_variables;
    w.event_boxes.assign(h.n_events, {});
    for (int v = 0; v < h.n_events; ++v) {
        Box box;
        if (v != t.root) {
            box.vars.push_back(t.edge_var[v]);
            box.intervals.push_back({0.0, s.q[v]});
        }
        for (int c : t.children[v]) {
            box.vars.push_back(t.edge_var[c]);
            box.intervals.push_back({s.q[c], 1.0});
        }
        if (v == t.root && !t.children[v].empty()) {
            // shrink the root box on its first child axis to hit the target
            double actual = 1.0;
            for (int c : t.children[v]) actual *= 1.0 - s.q[c];
            double scale = boundary[v] / actual;
            if (scale < 1.0) {
                auto& iv = box.intervals.front();
                iv.second = iv.first + (iv.second - iv.first) * scale;
            }
        }
        w.event_boxes[v].push_back(std::move(box));
    }
    return w;
}

DiscreteCylinderSet to_cylinder_set(const BoxWitness& w, const Bigraph& h) {
    if (w.n_events != h.n_events || w.n_variables != h.n_variables)
        throw std::invalid_argument("witness shape does not match bigraph");

    DiscreteCylinderSet s;
    std::vector<std::vector<double>> cuts(h.n_variables);
    for (int j = 0; j < h.n_variables; ++j) cuts[j] = {0.0, 1.0};
    for (const auto& boxes : w.event_boxes)
        for (const auto& box : boxes)
            for (std::size_t k = 0; k < box.vars.size(); ++k) {
                cuts[box.vars[k]].push_back(box.intervals[k].first);
                cuts[box.vars[k]].push_back(box.intervals[k].second);
            }
    s.partitions.assign(h.n_variables, {});
    std::vector<std::vector<double>> midpoints(h.n_variables);
    for (int j = 0; j < h.n_variables; ++j) {
        auto& c = cuts[j];
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        for (std::size_t k = 0; k + 1 < c.size(); ++k) {
            s.partitions[j].push_back(c[k + 1] - c[k]);
            midpoints[j].push_back(0.5 * (c[k] + c[k + 1]));
        }
    }

    s.indicators.assign(h.n_events, {});
    for (int i = 0; i < h.n_events; ++i) {
        const auto& vars = h.event_nbrs[i];
        std::size_t cells = 1;
        for (int j : vars) cells *= s.partitions[j].size();
        s.indicators[i].assign(cells, 0);
        std::vector<int> coord(vars.size(), 0);
        for (std::size_t idx = 0; idx < cells; ++idx) {
            bool inside = false;
            for (const auto& box : w.event_boxes[i]) {
                bool in_box = true;
                for (std::size_t k = 0; k < box.vars.size() && in_box; ++k) {
                    auto pos = std::find(vars.begin(), vars.end(), box.vars[k]);
                    std::size_t a = static_cast<std::size_t>(pos - vars.begin());
                    double mid = midpoints[box.vars[k]][static_cast<std::size_t>(coord[a])];
                    in_box = mid >= box.intervals[k].first && mid <= box.intervals[k].second;
                }
                if (in_box) { inside = true; break; }
            }
            s.indicators[i][idx] = inside ? 1 : 0;
            for (int k = static_cast<int>(vars.size()) - 1; k >= 0; --k) {
                if (++coord[k] < static_cast<int>(s.partitions[vars[k]].size())) break;
                coord[k] = 0;
            }
        }
    }
    return s;
}

} // namespace vlll
