#pragma once
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace vlll {

// Undirected graph on events. Symmetric, no self-loops, edges stored sorted
// with u < v so equality is structural.
struct DependencyGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj;

    static DependencyGraph make(int n, std::vector<std::pair<int, int>> edge_list);
    bool adjacent(int u, int v) const;
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    bool operator==(const DependencyGraph& o) const { return n == o.n && edges == o.edges; }
};

// Event-variable incidence structure. Events and variables are 0-based
// internally; external formats are 1-based. The edge set is kept sorted and
// duplicate-free so equality is structural.
struct Bigraph {
    int n_events = 0;
    int n_variables = 0;
    std::vector<std::pair<int, int>> edges;   // (event, variable)
    std::vector<std::vector<int>> event_nbrs; // variables per event, sorted
    std::vector<std::vector<int>> var_nbrs;   // events per variable, sorted

    static Bigraph make(int n_events, int n_variables, std::vector<std::pair<int, int>> edge_list);
    bool has_edge(int event, int var) const;
    bool operator==(const Bigraph& o) const {
        return n_events == o.n_events && n_variables == o.n_variables && edges == o.edges;
    }
};

// Embedding of a canonical cyclic bigraph: cycle position -> event and
// cycle variable -> variable, both injective. Position i maps to the event
// on variables {i, i+1 mod k}.
struct CyclicEmbedding {
    std::vector<int> event_map;
    std::vector<int> variable_map;
    int cycle_length = 0;
};

// Two events are adjacent iff they share a variable.
DependencyGraph base_graph(const Bigraph& h);

// Canonical n-cycle bigraph: event i on variables {i, i+1 mod n}.
Bigraph make_cycle_bigraph(int n);

// One event per m-subset of [n] (lexicographic order), adjacent to its elements.
Bigraph make_combinatorial_bigraph(int n, int m);

// One event per subset of [n] of size >= m, ordered by (size, lex).
Bigraph make_upper_combinatorial(int n, int m);

// The fixed 5x5 bigraph with complete base graph that is gapful without
// containing any cyclic bigraph.
Bigraph make_hstar();

// One variable per maximal clique of g (cliques in lexicographic order);
// event i adjacent to clique-variable j iff i lies in that clique.
Bigraph make_canonical_bigraph(const DependencyGraph& g);

bool is_connected(const DependencyGraph& g);
bool is_tree(const DependencyGraph& g);

// Perfect-elimination-ordering test via maximum cardinality search.
bool is_chordal(const DependencyGraph& g);

// Maximal cliques (Bron-Kerbosch with pivoting), each sorted, emitted in
// lexicographic order.
std::vector<std::vector<int>> maximal_cliques(const DependencyGraph& g);

// All independent sets, as bitmasks, in DFS-lexicographic order starting
// with the empty set. Throws cap_exceeded when g.n > vertex_cap.
std::vector<std::uint64_t> independent_set_masks(const DependencyGraph& g, int vertex_cap = 25);
std::vector<std::vector<int>> independent_sets(const DependencyGraph& g, int vertex_cap = 25);

// Connected components of g as sorted vertex lists.
std::vector<std::vector<int>> components(const DependencyGraph& g);

// Splits a bigraph whose base graph is disconnected into component bigraphs
// (events and variables reindexed in ascending order; variables of degree 0
// are dropped).
std::vector<Bigraph> split_components(const Bigraph& h);

// Searches for an embedded canonical cyclic bigraph, trying cycle lengths
// 3, 4, ..., n_events in order and returning the first embedding found
// (deterministic by index order). Backtracking; exponential worst case.
std::optional<CyclicEmbedding> contains_cyclic(const Bigraph& h);

// Embedding of an arbitrary pattern bigraph into a host such that the
// incidence pattern is reproduced exactly on the image and no out-of-image
// variable is shared by two image events. event_map/variable_map are the
// injections; cycle_length is pattern.n_events.
std::optional<CyclicEmbedding> contains_bigraph(const Bigraph& host, const Bigraph& pattern);

// Deletes variables with at most one neighbor and variables whose
// neighborhood is contained in another variable's. Events are untouched.
// kept[j] is the original index of reduced variable j.
struct VariableReduction {
    Bigraph reduced;
    std::vector<int> kept;
};
VariableReduction reduce_variables(const Bigraph& h);

} // namespace vlll
