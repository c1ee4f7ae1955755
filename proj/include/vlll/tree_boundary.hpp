#pragma once
#include <utility>
#include <vector>

#include "vlll/bigraph.hpp"
#include "vlll/cylinder.hpp"
#include "vlll/shearer.hpp"

namespace vlll {

// Dependency tree of a treelike bigraph, rooted at the maximum-degree vertex
// (ties -> lowest index). edge_var[v] is the original variable carried by
// the edge {v, parent[v]} (-1 for the root), after variable reduction.
struct RootedTree {
    int root = 0;
    std::vector<int> parent;
    std::vector<std::vector<int>> children;
    std::vector<int> postorder;
    std::vector<int> edge_var;
};

RootedTree root_tree(const Bigraph& h);

// Axis-aligned boxes per event. An event may be a union of boxes; each box
// constrains only variables in the event's neighborhood (vars/intervals are
// parallel arrays, intervals within [0,1]).
struct Box {
    std::vector<int> vars;
    std::vector<std::pair<double, double>> intervals;
    double measure() const {
        double m = 1.0;
        for (auto [lo, hi] : intervals) m *= hi - lo;
        return m;
    }
};

struct BoxWitness {
    int n_events = 0;
    int n_variables = 0;
    std::vector<std::vector<Box>> event_boxes;
};

// Boundary scalar for a treelike bigraph: the smallest lambda for which the
// leaf-to-root recursion q_i = lambda p_i / prod_child (1 - q_k) meets the
// root equation lambda p_root = prod_child (1 - q_k). Bisection on lambda;
// below the root every q stays in (0,1) and the root residual is negative.
BoundaryResult tree_boundary_lambda(const Bigraph& h, const ProbVec& direction,
                                    double tol = 1e-10);

// Exclusive box construction at a boundary vector: event i takes [0, q_i] on
// its parent-edge axis and (q_k, 1] on each child-edge axis; the root box is
// shrunk so its measure equals the target exactly. Throws when the vector is
// not consistent with the root equation (residual above tol).
BoxWitness tree_witness(const Bigraph& h, const ProbVec& boundary, double tol = 1e-9);

// Cuts every axis at the box endpoints and rasterizes the boxes onto the
// resulting grid.
DiscreteCylinderSet to_cylinder_set(const BoxWitness& w, const Bigraph& h);

} // namespace vlll
