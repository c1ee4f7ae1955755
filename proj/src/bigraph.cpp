#include "vlll/bigraph.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "vlll/errors.hpp"

namespace vlll {

DependencyGraph DependencyGraph::make(int n, std::vector<std::pair<int, int>> edge_list) {
    if (n < 1) throw std::invalid_argument("dependency graph needs at least one vertex");
    for (auto& [u, v] : edge_list) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop not allowed");
        if (u > v) std::swap(u, v);
    }
    std::sort(edge_list.begin(), edge_list.end());
    edge_list.erase(std::unique(edge_list.begin(), edge_list.end()), edge_list.end());

    DependencyGraph g;
    g.n = n;
    g.edges = std::move(edge_list);
    g.adj.assign(n, {});
    for (auto [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

bool DependencyGraph::adjacent(int u, int v) const {
    const auto& a = adj[u];
    return std::binary_search(a.begin(), a.end(), v);
}

Bigraph Bigraph::make(int n_events, int n_variables, std::vector<std::pair<int, int>> edge_list) {
    if (n_events < 1) throw std::invalid_argument("bigraph needs at least one event");
    if (n_variables < 0) throw std::invalid_argument("negative variable count");
    for (auto [i, j] : edge_list) {
        if (i < 0 || i >= n_events || j < 0 || j >= n_variables)
            throw std::invalid_argument("bigraph edge out of range");
    }
    std::sort(edge_list.begin(), edge_list.end());
    if (std::adjacent_find(edge_list.begin(), edge_list.end()) != edge_list.end())
        throw std::invalid_argument("duplicate bigraph edge");

    Bigraph h;
    h.n_events = n_events;
    h.n_variables = n_variables;
    h.edges = std::move(edge_list);
    h.event_nbrs.assign(n_events, {});
    h.var_nbrs.assign(n_variables, {});
    for (auto [i, j] : h.edges) {
        h.event_nbrs[i].push_back(j);
        h.var_nbrs[j].push_back(i);
    }
    return h;
}

bool Bigraph::has_edge(int event, int var) const {
    const auto& a = event_nbrs[event];
    return std::binary_search(a.begin(), a.end(), var);
}

DependencyGraph base_graph(const Bigraph& h) {
    std::set<std::pair<int, int>> e;
    for (const auto& evs : h.var_nbrs) {
        for (std::size_t a = 0; a < evs.size(); ++a)
            for (std::size_t b = a + 1; b < evs.size(); ++b)
                e.insert({evs[a], evs[b]});
    }
    return DependencyGraph::make(h.n_events, {e.begin(), e.end()});
}

Bigraph make_cycle_bigraph(int n) {
    if (n < 3) throw std::invalid_argument("cycle bigraph needs n >= 3");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(2 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        edges.push_back({i, i});
        edges.push_back({i, (i + 1) % n});
    }
    return Bigraph::make(n, n, std::move(edges));
}

namespace {
// k-subsets of [0,n) in lexicographic order.
std::vector<std::vector<int>> subsets_of_size(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v <= n - (k - static_cast<int>(cur.size())); ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}
} // namespace

Bigraph make_combinatorial_bigraph(int n, int m) {
    if (m < 1 || m >= n) throw std::invalid_argument("combinatorial bigraph needs 1 <= m < n");
    auto subs = subsets_of_size(n, m);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < static_cast<int>(subs.size()); ++i)
        for (int j : subs[i]) edges.push_back({i, j});
    return Bigraph::make(static_cast<int>(subs.size()), n, std::move(edges));
}

Bigraph make_upper_combinatorial(int n, int m) {
    if (m < 1 || m > n) throw std::invalid_argument("upper combinatorial bigraph needs 1 <= m <= n");
    std::vector<std::pair<int, int>> edges;
    int event = 0;
    for (int size = m; size <= n; ++size) {
        for (const auto& s : subsets_of_size(n, size)) {
            for (int j : s) edges.push_back({event, j});
            ++event;
        }
    }
    return Bigraph::make(event, n, std::move(edges));
}

Bigraph make_hstar() {
    // Events 1..3 sit on their own variable plus the two shared hubs 4,5;
    // events 4,5 cover variables 1..3 plus one hub each.
    std::vector<std::pair<int, int>> edges = {
        {0, 0}, {0, 3}, {0, 4},
        {1, 1}, {1, 3}, {1, 4},
        {2, 2}, {2, 3}, {2, 4},
        {3, 0}, {3, 1}, {3, 2}, {3, 3},
        {4, 0}, {4, 1}, {4, 2}, {4, 4},
    };
    return Bigraph::make(5, 5, std::move(edges));
}

std::vector<std::vector<int>> maximal_cliques(const DependencyGraph& g) {
    std::vector<std::vector<int>> out;
    if (g.n > 64) throw cap_exceeded("maximal clique enumeration limited to 64 vertices");
    std::vector<std::uint64_t> nbr(g.n, 0);
    for (auto [u, v] : g.edges) {
        nbr[u] |= 1ull << v;
        nbr[v] |= 1ull << u;
    }
    std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)> bk =
        [&](std::uint64_t r, std::uint64_t p, std::uint64_t x) {
            if (p == 0 && x == 0) {
                std::vector<int> clique;
                for (int v = 0; v < g.n; ++v)
                    if (r >> v & 1) clique.push_back(v);
                out.push_back(std::move(clique));
                return;
            }
            // pivot: vertex of p|x with most neighbors inside p
            std::uint64_t px = p | x;
            int pivot = -1, best = -1;
            for (int v = 0; v < g.n; ++v) {
                if (!(px >> v & 1)) continue;
                int c = std::popcount(p & nbr[v]);
                if (c > best) { best = c; pivot = v; }
            }
            std::uint64_t cand = p & ~nbr[pivot];
            for (int v = 0; v < g.n; ++v) {
                if (!(cand >> v & 1)) continue;
                bk(r | (1ull << v), p & nbr[v], x & nbr[v]);
                p &= ~(1ull << v);
                x |= 1ull << v;
            }
        };
    std::uint64_t all = g.n == 64 ? ~0ull : (1ull << g.n) - 1;
    bk(0, all, 0);
    std::sort(out.begin(), out.end());
    return out;
}

Bigraph make_canonical_bigraph(const DependencyGraph& g) {
    auto cliques = maximal_cliques(g);
    std::vector<std::pair<int, int>> edges;
    for (int j = 0; j < static_cast<int>(cliques.size()); ++j)
        for (int i : cliques[j]) edges.push_back({i, j});
    return Bigraph::make(g.n, static_cast<int>(cliques.size()), std::move(edges));
}

std::vector<std::vector<int>> components(const DependencyGraph& g) {
    std::vector<int> comp(g.n, -1);
    int ncomp = 0;
    for (int s = 0; s < g.n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.adj[v])
                if (comp[w] < 0) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
        }
        ++ncomp;
    }
    std::vector<std::vector<int>> out(ncomp);
    for (int v = 0; v < g.n; ++v) out[comp[v]].push_back(v);
    return out;
}

bool is_connected(const DependencyGraph& g) { return components(g).size() == 1; }

bool is_tree(const DependencyGraph& g) {
    return is_connected(g) && static_cast<int>(g.edges.size()) == g.n - 1;
}

bool is_chordal(const DependencyGraph& g) {
    const int n = g.n;
    // maximum cardinality search: repeatedly pick the unvisited vertex with
    // the most visited neighbors (ties -> lowest index)
    std::vector<int> weight(n, 0), order;
    std::vector<bool> visited(n, false);
    order.reserve(n);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!visited[v] && (best < 0 || weight[v] > weight[best])) best = v;
        visited[best] = true;
        order.push_back(best);
        for (int w : g.adj[best])
            if (!visited[w]) ++weight[w];
    }
    // reverse MCS order is a perfect elimination ordering iff g is chordal
    std::vector<int> pos(n);
    std::reverse(order.begin(), order.end());
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        int first = -1;
        for (int w : g.adj[v])
            if (pos[w] > i && (first < 0 || pos[w] < pos[first])) first = w;
        if (first < 0) continue;
        for (int w : g.adj[v]) {
            if (pos[w] <= i || w == first) continue;
            if (!g.adjacent(first, w)) return false;
        }
    }
    return true;
}

std::vector<std::uint64_t> independent_set_masks(const DependencyGraph& g, int vertex_cap) {
    if (g.n > vertex_cap)
        throw cap_exceeded("independent set enumeration: " + std::to_string(g.n) +
                           " vertices exceeds cap " + std::to_string(vertex_cap));
    std::vector<std::uint64_t> nbr(g.n, 0);
    for (auto [u, v] : g.edges) {
        nbr[u] |= 1ull << v;
        nbr[v] |= 1ull << u;
    }
    std::vector<std::uint64_t> out;
    std::function<void(int, std::uint64_t)> rec = [&](int start, std::uint64_t cur) {
        out.push_back(cur);
        for (int v = start; v < g.n; ++v)
            if (!(cur & nbr[v])) rec(v + 1, cur | (1ull << v));
    };
    rec(0, 0);
    return out;
}

std::vector<std::vector<int>> independent_sets(const DependencyGraph& g, int vertex_cap) {
    auto masks = independent_set_masks(g, vertex_cap);
    std::vector<std::vector<int>> out;
    out.reserve(masks.size());
    for (auto m : masks) {
        std::vector<int> s;
        for (int v = 0; v < g.n; ++v)
            if (m >> v & 1) s.push_back(v);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Bigraph> split_components(const Bigraph& h) {
    auto comps = components(base_graph(h));
    std::vector<Bigraph> out;
    for (const auto& events : comps) {
        std::vector<int> emap(h.n_events, -1), vset;
        for (int k = 0; k < static_cast<int>(events.size()); ++k) emap[events[k]] = k;
        std::vector<int> vmap(h.n_variables, -1);
        for (auto [i, j] : h.edges)
            if (emap[i] >= 0 && vmap[j] < 0) {
                vmap[j] = static_cast<int>(vset.size());
                vset.push_back(j);
            }
        std::vector<std::pair<int, int>> edges;
        for (auto [i, j] : h.edges)
            if (emap[i] >= 0) edges.push_back({emap[i], vmap[j]});
        out.push_back(Bigraph::make(static_cast<int>(events.size()),
                                    static_cast<int>(vset.size()), std::move(edges)));
    }
    return out;
}

namespace {

bool share_variable(const Bigraph& h, int a, int b) {
    const auto& x = h.event_nbrs[a];
    const auto& y = h.event_nbrs[b];
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i] == y[j]) return true;
        if (x[i] < y[j]) ++i; else ++j;
    }
    return false;
}

// Exact-pattern embedding search. Events are assigned in pattern order with
// pairwise sharing consistency as the prune, then variables, then the
// out-of-image condition. First match in index order wins.
std::optional<CyclicEmbedding> find_embedding(const Bigraph& host, const Bigraph& pattern,
                                              bool forbid_common_variable) {
    const int k = pattern.n_events;
    const int pm = pattern.n_variables;
    if (k > host.n_events || pm > host.n_variables) return std::nullopt;

    std::vector<int> emap(k, -1);
    std::vector<bool> eused(host.n_events, false);

    std::vector<int> vmap(pm, -1);
    std::vector<bool> vused(host.n_variables, false);

    std::function<bool(int)> assign_vars = [&](int s) -> bool {
        if (s == pm) {
            // out-of-image variables may touch at most one image event
            for (int w = 0; w < host.n_variables; ++w) {
                if (vused[w]) continue;
                int touched = 0;
                for (int e : host.var_nbrs[w]) {
                    for (int t = 0; t < k; ++t)
                        if (emap[t] == e) { ++touched; break; }
                    if (touched > 1) break;
                }
                if (touched > 1) return false;
            }
            if (forbid_common_variable) {
                for (int w = 0; w < host.n_variables; ++w) {
                    bool common = true;
                    for (int t = 0; t < k && common; ++t)
                        common = host.has_edge(emap[t], w);
                    if (common) return false;
                }
            }
            return true;
        }
        for (int w = 0; w < host.n_variables; ++w) {
            if (vused[w]) continue;
            bool ok = true;
            for (int t = 0; t < k && ok; ++t)
                ok = host.has_edge(emap[t], w) == pattern.has_edge(t, s);
            if (!ok) continue;
            vused[w] = true;
            vmap[s] = w;
            if (assign_vars(s + 1)) return true;
            vused[w] = false;
            vmap[s] = -1;
        }
        return false;
    };

    std::function<bool(int)> assign_events = [&](int t) -> bool {
        if (t == k) return assign_vars(0);
        for (int e = 0; e < host.n_events; ++e) {
            if (eused[e]) continue;
            bool ok = true;
            for (int s = 0; s < t && ok; ++s) {
                bool want = share_variable(pattern, s, t);
                bool have = share_variable(host, emap[s], e);
                // image events must share a variable exactly when the pattern
                // events do; a stray shared variable would either break the
                // incidence pattern or violate the out-of-image condition
                ok = want == have;
            }
            if (!ok) continue;
            eused[e] = true;
            emap[t] = e;
            if (assign_events(t + 1)) return true;
            eused[e] = false;
            emap[t] = -1;
        }
        return false;
    };

    if (assign_events(0)) {
        CyclicEmbedding emb;
        emb.event_map = emap;
        emb.variable_map = vmap;
        emb.cycle_length = k;
        return emb;
    }
    return std::nullopt;
}

} // namespace

std::optional<CyclicEmbedding> contains_bigraph(const Bigraph& host, const Bigraph& pattern) {
    return find_embedding(host, pattern, false);
}

std::optional<CyclicEmbedding> contains_cyclic(const Bigraph& h) {
    for (int k = 3; k <= h.n_events; ++k) {
        auto emb = find_embedding(h, make_cycle_bigraph(k), k == 3);
        if (emb) return emb;
    }
    return std::nullopt;
}

VariableReduction reduce_variables(const Bigraph& h) {
    std::vector<bool> drop(h.n_variables, false);
    for (int j = 0; j < h.n_variables; ++j)
        if (h.var_nbrs[j].size() <= 1) drop[j] = true;
    for (int j = 0; j < h.n_variables; ++j) {
        if (drop[j]) continue;
        for (int j2 = 0; j2 < h.n_variables; ++j2) {
            if (j2 == j || drop[j2]) continue;
            const auto& a = h.var_nbrs[j];
            const auto& b = h.var_nbrs[j2];
            bool subset = std::includes(b.begin(), b.end(), a.begin(), a.end());
            if (!subset) continue;
            // drop j when contained in j2; on ties keep the lower index
            if (a.size() < b.size() || j > j2) { drop[j] = true; break; }
        }
    }
    VariableReduction r;
    std::vector<int> vmap(h.n_variables, -1);
    for (int j = 0; j < h.n_variables; ++j) {
        if (drop[j]) continue;
        vmap[j] = static_cast<int>(r.kept.size());
        r.kept.push_back(j);
    }
    std::vector<std::pair<int, int>> edges;
    for (auto [i, j] : h.edges)
        if (vmap[j] >= 0) edges.push_back({i, vmap[j]});
    r.reduced = Bigraph::make(h.n_events, static_cast<int>(r.kept.size()), std::move(edges));
    return r;
}

} // namespace vlll
