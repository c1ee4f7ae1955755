#pragma once
#include <cstdint>
#include <vector>

#include "vlll/bigraph.hpp"
#include "vlll/shearer.hpp"

namespace vlll {

// Axis-discretized cylinder set. partitions[j] holds the interval lengths of
// axis j (nonnegative, summing to 1). indicators[i] is event i's 0/1 cell
// tensor, stored row-major over the event's neighborhood variables in
// ascending order; cells off the neighborhood are implicitly replicated.
struct DiscreteCylinderSet {
    std::vector<std::vector<double>> partitions;
    std::vector<std::vector<std::uint8_t>> indicators;
};

struct CylinderEval {
    ProbVec measures;
    double union_measure = 0.0;
    bool exclusive = false;
    double max_adjacent_overlap = 0.0;
};

// Exact cell-decomposition evaluation over the product grid: per-event
// measures, measure of the union, and pairwise overlaps of base-graph
// adjacent events (exclusive means all such overlaps vanish).
// Throws cap_exceeded when the grid has more than cells_cap cells, and
// std::invalid_argument when the set does not conform with h.
CylinderEval evaluate_cylinder_set(const DiscreteCylinderSet& s, const Bigraph& h,
                                   std::int64_t cells_cap = 10'000'000);

// Straightforward serial reference evaluator.
CylinderEval evaluate_cylinder_set_serial(const DiscreteCylinderSet& s, const Bigraph& h,
                                          std::int64_t cells_cap = 10'000'000);

} // namespace vlll
