#pragma once
#include <optional>

#include "vlll/cylinder.hpp"
#include "vlll/shearer.hpp"

namespace vlll {

// Chain recurrence for the canonical n-cycle, rotation i (0-based):
//   b_1 = lambda p_i,  b_k = lambda p_{i+k-1} / (1 - b_{k-1}),
// terminal condition b_{n-1} = 1 - lambda p_{i-1}. Returns the minimum
// positive lambda solving the system with every b_k in (0,1), or nullopt if
// no such root exists. Bisection on the terminal residual, which increases
// with lambda while the chain stays in range; a probe just left of the root
// certifies minimality.
std::optional<double> cycle_chain_solve(const ProbVec& p, int rotation, double tol = 1e-12);

// Forward chain values b_1..b_{n-1} at a given lambda, or nullopt when the
// chain leaves (0,1).
std::optional<std::vector<double>> cycle_chain_values(const ProbVec& p, int rotation, double lambda);

// Boundary scalar of the n-cycle: the minimum of cycle_chain_solve over all
// rotations (ties -> lowest rotation, reported in BoundaryResult::rotation).
BoundaryResult cycle_boundary_lambda(const ProbVec& p, double tol = 1e-12);

// Closed form for n = 3. The direction is normalized internally, so any
// positive vector is accepted; throws when a discriminant is negative.
double triangle_closed_form(const ProbVec& p);

// Cylinder set at the boundary with the argmin rotation's shared variable
// dropped: the cycle is broken there, two events become one-axis strips and
// the rest single-corner rectangles tiled along the chain. Union 1, measures
// lambda*p, and the two events at the break overlap (not exclusive).
DiscreteCylinderSet cycle_boundary_witness(const ProbVec& p, const BoundaryResult& result);

// The exclusive quarter construction on the n-cycle: event i occupies
// x_i in [1/2,1], x_{i+1} in [0,1/2). Measures 1/4, union 1 - 2^{1-n}.
DiscreteCylinderSet cycle_gapful_witness(int n);

} // namespace vlll
