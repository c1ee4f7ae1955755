#pragma once
#include <optional>
#include <string>
#include <vector>

#include "vlll/bigraph.hpp"
#include "vlll/cylinder.hpp"
#include "vlll/discrete_program.hpp"
#include "vlll/shearer.hpp"

namespace vlll {

// The five structural operations. Delete-Variable / Duplicate-Event /
// Duplicate-Variable and their inverses preserve gap status both ways;
// Delete-Edge preserves gapful, Delete-Event preserves gapless (and their
// inverses the other way around).
enum class ReductionKind { DeleteVariable, DuplicateEvent, DuplicateVariable, DeleteEdge, DeleteEvent };

struct ReductionOp {
    ReductionKind kind = ReductionKind::DeleteVariable;
    bool inverse = false;
    int event = -1;
    int variable = -1;
    int position = -1;              // insertion index; -1 appends
    std::vector<int> neighborhood;  // payload for insertions and duplications
};

// Applies op; throws std::invalid_argument when inapplicable (e.g. deleting
// a variable of degree 2, or an edge deletion that changes the base graph).
Bigraph apply_reduction(const Bigraph& h, const ReductionOp& op);

// The op undoing `op` on apply_reduction(h, op); round-trips structurally.
ReductionOp inverse_of(const Bigraph& h, const ReductionOp& op);

std::string describe(const ReductionOp& op);

// Fixpoint of: delete degree<=1 variables, merge subsumed variables, merge
// duplicate events. Gap status is invariant under every step.
struct NormalizeResult {
    Bigraph normal;
    std::vector<ReductionOp> trace;
};
NormalizeResult normalize(const Bigraph& h);

enum class GapStatus { Gapful, Gapless, Unknown };

struct TraceStep {
    std::string rule;
    std::string tag;
    std::vector<std::string> params;
};

struct GapVerdict {
    GapStatus status = GapStatus::Unknown;
    std::vector<TraceStep> trace;
    std::optional<DiscreteCylinderSet> witness;
};

struct ClassifyConfig {
    int nm1_cap = 12;                    // catalog reach of the (n, n-1) family
    int sparsify_c_cap = 2;              // sparsification family depth
    long long sparsify_budget = 200'000; // backtracking node budget
    int iso_event_cap = 40;              // isomorphism search cap
};

// Decision pipeline on the normal form: treelike -> gapless; embedded cycle
// -> gapful; exact clique-variable form of a chordal base -> gapless;
// catalog membership; otherwise Unknown. Requires a connected base graph.
GapVerdict classify_gap(const Bigraph& h, const ClassifyConfig& cfg = {});

// a_gapful: some bigraph over g has a gap (exactly the non-trees).
// strongly_a_gapful: every bigraph over g has a gap (exactly the
// non-chordal graphs; chordal bases always admit the gapless
// clique-variable bigraph).
struct GraphGapTraits {
    bool a_gapful = false;
    bool strongly_a_gapful = false;
};
GraphGapTraits classify_graph(const DependencyGraph& g);

// Compares the abstract boundary scalar on the base graph with the
// variable-side scalar from the best applicable solver (tree, cycle, or the
// discrete brute force).
struct NumericGapCheck {
    double lambda_abstract = 0.0;
    double lambda_variable = 0.0;
    bool gapful_in_direction = false;
    std::string variable_method;
};
NumericGapCheck numeric_gap_check(const Bigraph& h, const ProbVec& direction,
                                  const SearchConfig& cfg = {}, double margin = 1e-6);

// Exclusive set with event i on [ (i-1)/n, i/n ) along each of its
// variables; measures n^{-|N(i)|}.
DiscreteCylinderSet small_exclusive_witness(const Bigraph& h);

// Exclusive boundary witness for the bigraph of 3-subsets of a 4-set.
// p must sum to 1; it is sorted descending internally and the sorted entries
// are assigned to the events on variable sets {1,2,4}, {1,2,3}, {1,3,4},
// {2,3,4} in that order. Union 1, measures = sorted p.
DiscreteCylinderSet h43_witness(const ProbVec& p, double tol = 1e-9);

bool bigraph_isomorphic(const Bigraph& a, const Bigraph& b, int event_cap = 40);

// Event order around the base cycle when the reduced bigraph is the
// canonical cycle pattern (every variable on exactly one cycle edge).
std::optional<std::vector<int>> cyclic_event_order(const Bigraph& h);

} // namespace vlll
