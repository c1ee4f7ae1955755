#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "vlll/bigraph.hpp"

namespace vlll {

// Probability/direction vector. Entries must be strictly positive; clamping
// to (0,1] happens where the semantics require it.
using ProbVec = std::vector<double>;

// Entrywise min(1, p_i).
ProbVec clamp_unit(const ProbVec& p);

// Alternating sums q_S over all independent sets S of the graph:
//   q_S = sum over independent T >= S of (-1)^{|T|-|S|} prod_{i in T} p_i.
// The sets appear in the same order as independent_set_masks.
struct ShearerReport {
    std::vector<std::uint64_t> sets;
    std::vector<double> q;
    double min_value = 0.0;
    std::uint64_t min_set = 0;
    double sum = 0.0; // telescopes to 1
};

// Scalar boundary along a direction: boundary_vector = lambda * direction.
// residual is the magnitude of the defining equation at the returned root.
// rotation is only meaningful for the cycle method (argmin rotation, 0-based).
struct BoundaryResult {
    ProbVec direction;
    double lambda = 0.0;
    ProbVec boundary_vector;
    std::string method;
    double residual = 0.0;
    int rotation = -1;
};

// Fast route: q_S = (prod_{i in S} p_i) * W(V \ N[S]) with the alternating
// independence-polynomial W evaluated by the memoized vertex-removal
// recurrence. Per-set work is parallelized.
ShearerReport shearer_values(const DependencyGraph& g, const ProbVec& p, int vertex_cap = 25);

// Reference route: the direct superset sum with compensated summation.
// Serial; kept for cross-checking the recurrence.
ShearerReport shearer_values_reference(const DependencyGraph& g, const ProbVec& p,
                                       int vertex_cap = 25);

// True iff every alternating sum is strictly positive.
bool in_abstract_interior(const DependencyGraph& g, const ProbVec& p, int vertex_cap = 25);

// Bisects the unique lambda with lambda*direction on the abstract boundary.
// Bracket: lambda_lo = 0.5 / sum(direction) (l1-norm below 1 is inside),
// lambda_hi = min_i 1/direction_i (an entry reaches 1). Throws no_convergence
// past the iteration cap.
BoundaryResult abstract_boundary_lambda(const DependencyGraph& g, const ProbVec& direction,
                                        double tol = 1e-10, int vertex_cap = 25);

} // namespace vlll
