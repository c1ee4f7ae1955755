#pragma once
#include <cstdint>
#include <optional>

#include "vlll/cylinder.hpp"
#include "vlll/shearer.hpp"

namespace vlll {

struct SearchConfig {
    std::int64_t cells_cap = 4096;            // grid cap for membership / mup search
    double assignment_cap = 1e9;              // raw indicator-assignment space cap
    std::int64_t candidate_cap = 2'000'000;   // scored leaves budget
    int starts = 16;                          // multi-start count for the inner solve
    int nm_iters = 400;                       // Nelder-Mead iteration cap per start
    double tol = 1e-6;                        // measure slack tolerance
    double lambda_tol = 1e-3;                 // boundary bisection tolerance
    std::uint64_t seed = 12345;
};

// Witness that q lies in the exterior: a covering discrete cylinder set whose
// measures stay below q within tolerance. slack[i] = q_i - measure_i.
struct MembershipCertificate {
    DiscreteCylinderSet cylinder_set;
    ProbVec slack;
    bool coverage_ok = true;
};

// Decides exterior membership at the degree discretization (d_j = deg(j)):
// enumerates admissible indicator assignments (axis-relabeling symmetry
// pruned via sorted per-label count profiles) and, for covering assignments,
// minimizes the worst measure slack over the axis partitions by multi-start
// Nelder-Mead descent with projection onto the simplex product. Absence is
// resolution-limited: the continuous search may miss feasible partitions, so
// nullopt means "no certificate found within the search budget".
std::optional<MembershipCertificate> exterior_membership(const Bigraph& h, const ProbVec& q,
                                                         const SearchConfig& cfg = {});

// Bisection on lambda using exterior_membership(lambda * direction).
// residual reports the final bracket half-width.
BoundaryResult vlll_boundary_lambda_bruteforce(const Bigraph& h, const ProbVec& direction,
                                               const SearchConfig& cfg = {});

struct MupResult {
    double value = 0.0;                 // best union measure found
    DiscreteCylinderSet best;           // attaining cylinder set
    bool best_exclusive = false;        // adjacent overlaps vanish at the best
    double best_nonexclusive = -1.0;    // best union among non-exclusive candidates
    bool exhausted = true;              // enumeration ran to completion or to a
                                        // provable optimum (no budget stop)
    std::int64_t candidates = 0;        // feasible candidates scored
};

// Maximum union probability over (deg+1)-discrete cylinder sets with
// measures pinned to p within tolerance. Lower bound certified; optimal when
// exhausted (the union can never exceed min(1, sum p)).
MupResult mup_bruteforce_detailed(const Bigraph& h, const ProbVec& p, const SearchConfig& cfg = {});
double mup_bruteforce(const Bigraph& h, const ProbVec& p, const SearchConfig& cfg = {});

} // namespace vlll
