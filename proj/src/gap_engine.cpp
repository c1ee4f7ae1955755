#include "vlll/gap_engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "vlll/cycle_boundary.hpp"
#include "vlll/errors.hpp"
#include "vlll/tree_boundary.hpp"

namespace vlll {

namespace {

std::vector<std::pair<int, int>> edges_without_event(const Bigraph& h, int event) {
    std::vector<std::pair<int, int>> edges;
    for (auto [i, j] : h.edges) {
        if (i == event) continue;
        edges.push_back({i > event ? i - 1 : i, j});
    }
    return edges;
}

std::vector<std::pair<int, int>> edges_without_variable(const Bigraph& h, int var) {
    std::vector<std::pair<int, int>> edges;
    for (auto [i, j] : h.edges) {
        if (j == var) continue;
        edges.push_back({i, j > var ? j - 1 : j});
    }
    return edges;
}

} // namespace

Bigraph apply_reduction(const Bigraph& h, const ReductionOp& op) {
    switch (op.kind) {
    case ReductionKind::DeleteVariable: {
        if (!op.inverse) {
            if (op.variable < 0 || op.variable >= h.n_variables)
                throw std::invalid_argument("variable out of range");
            if (h.var_nbrs[op.variable].size() > 1)
                throw std::invalid_argument("delete-variable needs degree at most 1");
            return Bigraph::make(h.n_events, h.n_variables - 1, edges_without_variable(h, op.variable));
        }
        if (op.neighborhood.size() > 1)
            throw std::invalid_argument("inverse delete-variable inserts a degree<=1 variable");
        int pos = op.position < 0 ? h.n_variables : op.position;
        if (pos < 0 || pos > h.n_variables) throw std::invalid_argument("insertion position out of range");
        std::vector<std::pair<int, int>> edges;
        for (auto [i, j] : h.edges) edges.push_back({i, j >= pos ? j + 1 : j});
        for (int i : op.neighborhood) edges.push_back({i, pos});
        return Bigraph::make(h.n_events, h.n_variables + 1, std::move(edges));
    }
    case ReductionKind::DuplicateEvent: {
        if (!op.inverse) {
            if (op.event < 0 || op.event >= h.n_events) throw std::invalid_argument("event out of range");
            int pos = op.position < 0 ? h.n_events : op.position;
            if (pos < 0 || pos > h.n_events) throw std::invalid_argument("insertion position out of range");
            std::vector<std::pair<int, int>> edges;
            for (auto [i, j] : h.edges) edges.push_back({i >= pos ? i + 1 : i, j});
            for (int j : h.event_nbrs[op.event]) edges.push_back({pos, j});
            return Bigraph::make(h.n_events + 1, h.n_variables, std::move(edges));
        }
        if (op.event < 0 || op.event >= h.n_events) throw std::invalid_argument("event out of range");
        bool twin = false;
        for (int i = 0; i < h.n_events && !twin; ++i)
            twin = i != op.event && h.event_nbrs[i] == h.event_nbrs[op.event];
        if (!twin) throw std::invalid_argument("inverse duplicate-event needs an identical twin");
        if (h.n_events == 1) throw std::invalid_argument("cannot remove the last event");
        return Bigraph::make(h.n_events - 1, h.n_variables, edges_without_event(h, op.event));
    }
    case ReductionKind::DuplicateVariable: {
        if (!op.inverse) {
            if (op.variable < 0 || op.variable >= h.n_variables)
                throw std::invalid_argument("variable out of range");
            const auto& base_nbhd = h.var_nbrs[op.variable];
            for (int i : op.neighborhood)
                if (!std::binary_search(base_nbhd.begin(), base_nbhd.end(), i))
                    throw std::invalid_argument("duplicate-variable neighborhood must be a subset");
            int pos = op.position < 0 ? h.n_variables : op.position;
            if (pos < 0 || pos > h.n_variables) throw std::invalid_argument("insertion position out of range");
            std::vector<std::pair<int, int>> edges;
            for (auto [i, j] : h.edges) edges.push_back({i, j >= pos ? j + 1 : j});
            for (int i : op.neighborhood) edges.push_back({i, pos});
            return Bigraph::make(h.n_events, h.n_variables + 1, std::move(edges));
        }
        if (op.variable < 0 || op.variable >= h.n_variables)
            throw std::invalid_argument("variable out of range");
        bool dominated = false;
        const auto& small = h.var_nbrs[op.variable];
        for (int j = 0; j < h.n_variables && !dominated; ++j)
            dominated = j != op.variable &&
                        std::includes(h.var_nbrs[j].begin(), h.var_nbrs[j].end(),
                                      small.begin(), small.end());
        if (!dominated)
            throw std::invalid_argument("inverse duplicate-variable needs a dominating variable");
        return Bigraph::make(h.n_events, h.n_variables - 1, edges_without_variable(h, op.variable));
    }
    case ReductionKind::DeleteEdge: {
        Bigraph out = [&] {
            std::vector<std::pair<int, int>> edges = h.edges;
            std::pair<int, int> e{op.event, op.variable};
            if (!op.inverse) {
                auto it = std::find(edges.begin(), edges.end(), e);
                if (it == edges.end()) throw std::invalid_argument("edge not present");
                edges.erase(it);
            } else {
                if (op.event < 0 || op.event >= h.n_events || op.variable < 0 ||
                    op.variable >= h.n_variables)
                    throw std::invalid_argument("edge endpoint out of range");
                if (std::find(edges.begin(), edges.end(), e) != edges.end())
                    throw std::invalid_argument("edge already present");
                edges.push_back(e);
            }
            return Bigraph::make(h.n_events, h.n_variables, std::move(edges));
        }();
        if (!(base_graph(out) == base_graph(h)))
            throw std::invalid_argument("edge change would alter the base graph");
        return out;
    }
    case ReductionKind::DeleteEvent: {
        if (!op.inverse) {
            if (op.event < 0 || op.event >= h.n_events) throw std::invalid_argument("event out of range");
            if (h.n_events == 1) throw std::invalid_argument("cannot remove the last event");
            return Bigraph::make(h.n_events - 1, h.n_variables, edges_without_event(h, op.event));
        }
        int pos = op.position < 0 ? h.n_events : op.position;
        if (pos < 0 || pos > h.n_events) throw std::invalid_argument("insertion position out of range");
        std::vector<std::pair<int, int>> edges;
        for (auto [i, j] : h.edges) edges.push_back({i >= pos ? i + 1 : i, j});
        for (int j : op.neighborhood) {
            if (j < 0 || j >= h.n_variables) throw std::invalid_argument("neighborhood out of range");
            edges.push_back({pos, j});
        }
        return Bigraph::make(h.n_events + 1, h.n_variables, std::move(edges));
    }
    }
    throw std::invalid_argument("unknown reduction kind");
}

ReductionOp inverse_of(const Bigraph& h, const ReductionOp& op) {
    ReductionOp inv = op;
    inv.inverse = !op.inverse;
    switch (op.kind) {
    case ReductionKind::DeleteVariable:
        if (!op.inverse) {
            inv.position = op.variable;
            inv.neighborhood = h.var_nbrs[op.variable];
        } else {
            inv.variable = op.position < 0 ? h.n_variables : op.position;
            inv.neighborhood.clear();
        }
        break;
    case ReductionKind::DuplicateEvent:
        if (!op.inverse) {
            inv.event = op.position < 0 ? h.n_events : op.position;
        } else {
            // undo of removing a duplicate: re-duplicate the surviving twin
            for (int i = 0; i < h.n_events; ++i)
                if (i != op.event && h.event_nbrs[i] == h.event_nbrs[op.event]) {
                    inv.event = i > op.event ? i - 1 : i;
                    break;
                }
            inv.position = op.event;
        }
        break;
    case ReductionKind::DuplicateVariable:
        if (!op.inverse) {
            inv.variable = op.position < 0 ? h.n_variables : op.position;
            inv.neighborhood.clear();
        } else {
            for (int j = 0; j < h.n_variables; ++j)
                if (j != op.variable &&
                    std::includes(h.var_nbrs[j].begin(), h.var_nbrs[j].end(),
                                  h.var_nbrs[op.variable].begin(), h.var_nbrs[op.variable].end())) {
                    inv.variable = j > op.variable ? j - 1 : j;
                    break;
                }
            inv.position = op.variable;
            inv.neighborhood = h.var_nbrs[op.variable];
        }
        break;
    case ReductionKind::DeleteEdge:
        break; // same endpoints, flipped direction
    case ReductionKind::DeleteEvent:
        if (!op.inverse) {
            inv.position = op.event;
            inv.neighborhood = h.event_nbrs[op.event];
        } else {
            inv.event = op.position < 0 ? h.n_events : op.position;
            inv.neighborhood.clear();
        }
        break;
    }
    return inv;
}

std::string describe(const ReductionOp& op) {
    std::string s = op.inverse ? "inverse-" : "";
    switch (op.kind) {
    case ReductionKind::DeleteVariable: s += "delete-variable"; break;
    case ReductionKind::DuplicateEvent: s += "duplicate-event"; break;
    case ReductionKind::DuplicateVariable: s += "duplicate-variable"; break;
    case ReductionKind::DeleteEdge: s += "delete-edge"; break;
    case ReductionKind::DeleteEvent: s += "delete-event"; break;
    }
    if (op.event >= 0) s += " event=" + std::to_string(op.event + 1);
    if (op.variable >= 0) s += " variable=" + std::to_string(op.variable + 1);
    return s;
}

NormalizeResult normalize(const Bigraph& h) {
    NormalizeResult r;
    r.normal = h;
    for (;;) {
        const Bigraph& cur = r.normal;
        ReductionOp op;
        bool found = false;
        for (int j = 0; j < cur.n_variables && !found; ++j) {
            if (cur.var_nbrs[j].size() <= 1) {
                op = {ReductionKind::DeleteVariable, false, -1, j, -1, {}};
                found = true;
            }
        }
        if (!found) {
            for (int j2 = 0; j2 < cur.n_variables && !found; ++j2) {
                for (int j = 0; j < cur.n_variables && !found; ++j) {
                    if (j == j2) continue;
                    const auto& a = cur.var_nbrs[j2];
                    const auto& b = cur.var_nbrs[j];
                    if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) continue;
                    if (a.size() == b.size() && j2 < j) continue; // ties: keep the lower index
                    op = {ReductionKind::DuplicateVariable, true, -1, j2, -1, {}};
                    found = true;
                }
            }
        }
        if (!found) {
            for (int i2 = 1; i2 < cur.n_events && !found; ++i2)
                for (int i = 0; i < i2 && !found; ++i)
                    if (cur.event_nbrs[i] == cur.event_nbrs[i2]) {
                        op = {ReductionKind::DuplicateEvent, true, i2, -1, -1, {}};
                        found = true;
                    }
        }
        if (!found) break;
        r.normal = apply_reduction(cur, op);
        r.trace.push_back(op);
    }
    return r;
}

// ---------------------------------------------------------------------------

bool bigraph_isomorphic(const Bigraph& a, const Bigraph& b, int event_cap) {
    if (a.n_events != b.n_events || a.n_variables != b.n_variables ||
        a.edges.size() != b.edges.size())
        return false;
    if (a.n_events > event_cap) throw cap_exceeded("isomorphism search event cap exceeded");

    auto degseq = [](const Bigraph& h) {
        std::pair<std::vector<int>, std::vector<int>> d;
        for (const auto& v : h.event_nbrs) d.first.push_back(static_cast<int>(v.size()));
        for (const auto& v : h.var_nbrs) d.second.push_back(static_cast<int>(v.size()));
        std::sort(d.first.begin(), d.first.end());
        std::sort(d.second.begin(), d.second.end());
        return d;
    };
    if (degseq(a) != degseq(b)) return false;

    const int n = a.n_events;
    std::vector<int> emap(n, -1);
    std::vector<bool> used(n, false);

    // with the event mapping fixed, variables must match as a multiset of
    // mapped neighborhoods
    auto vars_match = [&]() {
        std::vector<std::vector<int>> na, nb;
        for (int j = 0; j < a.n_variables; ++j) {
            std::vector<int> s;
            for (int i : a.var_nbrs[j]) s.push_back(emap[i]);
            std::sort(s.begin(), s.end());
            na.push_back(std::move(s));
        }
        for (int j = 0; j < b.n_variables; ++j) nb.push_back(b.var_nbrs[j]);
        std::sort(na.begin(), na.end());
        std::sort(nb.begin(), nb.end());
        return na == nb;
    };

    // pairwise shared-variable counts are an isomorphism invariant and give
    // much stronger pruning than base adjacency alone
    auto share_matrix = [](const Bigraph& h) {
        std::vector<std::vector<int>> m(h.n_events, std::vector<int>(h.n_events, 0));
        for (const auto& evs : h.var_nbrs)
            for (std::size_t x = 0; x < evs.size(); ++x)
                for (std::size_t y = x + 1; y < evs.size(); ++y) {
                    ++m[evs[x]][evs[y]];
                    ++m[evs[y]][evs[x]];
                }
        return m;
    };
    auto sa = share_matrix(a);
    auto sb = share_matrix(b);
    auto profiles = [n](const std::vector<std::vector<int>>& m) {
        std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            std::vector<int> r(m[static_cast<std::size_t>(i)]);
            r.erase(r.begin() + i);
            std::sort(r.begin(), r.end());
            out[static_cast<std::size_t>(i)] = std::move(r);
        }
        return out;
    };
    auto pa = profiles(sa);
    auto pb = profiles(sb);

    std::function<bool(int)> rec = [&](int i) -> bool {
        if (i == n) return vars_match();
        for (int t = 0; t < n; ++t) {
            if (used[t]) continue;
            if (a.event_nbrs[i].size() != b.event_nbrs[t].size()) continue;
            if (pa[static_cast<std::size_t>(i)] != pb[static_cast<std::size_t>(t)]) continue;
            bool ok = true;
            for (int s = 0; s < i && ok; ++s)
                ok = sa[s][i] == sb[emap[s]][t];
            if (!ok) continue;
            emap[i] = t;
            used[t] = true;
            if (rec(i + 1)) return true;
            used[t] = false;
            emap[i] = -1;
        }
        return false;
    };
    return rec(0);
}

namespace {

// sparsification of the (n, m)-combinatorial bigraph: same events (one per
// m-subset), a subset of the variables/edges, same complete base graph
bool is_comb_sparsification(const Bigraph& h, int n, int m, long long budget) {
    // C(n, m)
    long long events = 1;
    for (int k = 1; k <= m; ++k) events = events * (n - k + 1) / k;
    if (h.n_events != events || h.n_variables > n) return false;

    auto base = base_graph(h);
    if (static_cast<long long>(base.edges.size()) !=
        static_cast<long long>(h.n_events) * (h.n_events - 1) / 2)
        return false;

    // enumerate m-subsets once
    std::vector<std::vector<int>> subsets;
    {
        std::vector<int> cur;
        std::function<void(int)> rec = [&](int start) {
            if (static_cast<int>(cur.size()) == m) {
                subsets.push_back(cur);
                return;
            }
            for (int v = start; v <= n - (m - static_cast<int>(cur.size())); ++v) {
                cur.push_back(v);
                rec(v + 1);
                cur.pop_back();
            }
        };
        rec(0);
    }

    // inject h-variables into [n], then events must match the subsets
    // perfectly with mapped neighborhoods contained in their subset
    std::vector<int> vmap(h.n_variables, -1);
    std::vector<bool> vused(n, false);
    long long nodes = 0;

    auto events_matchable = [&]() {
        // bipartite matching: event -> subset with mapped N(event) inside
        std::vector<int> owner(subsets.size(), -1);
        std::vector<int> seen(subsets.size(), -1);
        std::function<bool(int, int)> augment = [&](int e, int stamp) -> bool {
            for (int s = 0; s < static_cast<int>(subsets.size()); ++s) {
                if (seen[s] == stamp) continue;
                bool fits = true;
                for (int j : h.event_nbrs[e]) {
                    if (!std::binary_search(subsets[s].begin(), subsets[s].end(), vmap[j])) {
                        fits = false;
                        break;
                    }
                }
                if (!fits) continue;
                seen[s] = stamp;
                if (owner[s] < 0 || augment(owner[s], stamp)) {
                    owner[s] = e;
                    return true;
                }
            }
            return false;
        };
        for (int e = 0; e < h.n_events; ++e)
            if (!augment(e, e)) return false;
        return true;
    };

    std::function<bool(int)> inject = [&](int j) -> bool {
        if (++nodes > budget) return false;
        if (j == h.n_variables) return events_matchable();
        for (int w = 0; w < n; ++w) {
            if (vused[w]) continue;
            vmap[j] = w;
            vused[w] = true;
            if (inject(j + 1)) return true;
            vused[w] = false;
            vmap[j] = -1;
        }
        return false;
    };
    return inject(0);
}

} // namespace

GapVerdict classify_gap(const Bigraph& h, const ClassifyConfig& cfg) {
    if (!is_connected(base_graph(h)))
        throw std::invalid_argument("gap classification needs a connected base graph");

    GapVerdict v;
    auto nr = normalize(h);
    for (const auto& op : nr.trace)
        v.trace.push_back({"normalize", "reduction-invariance", {describe(op)}});
    const Bigraph& normal = nr.normal;
    auto base = base_graph(normal);

    if (is_tree(base)) {
        v.status = GapStatus::Gapless;
        v.trace.push_back({"treelike", "treelike-gapless", {}});
        return v;
    }
    if (auto emb = contains_cyclic(normal)) {
        v.status = GapStatus::Gapful;
        std::vector<std::string> params{"cycle_length=" + std::to_string(emb->cycle_length)};
        std::string evs = "events=";
        for (std::size_t k = 0; k < emb->event_map.size(); ++k)
            evs += (k ? "," : "") + std::to_string(emb->event_map[k] + 1);
        params.push_back(evs);
        v.trace.push_back({"cyclic-containment", "cycles-gapful", std::move(params)});
        return v;
    }
    if (is_chordal(base) && normal.n_events <= cfg.iso_event_cap) {
        auto hg = make_canonical_bigraph(base);
        if (bigraph_isomorphic(normal, hg, cfg.iso_event_cap)) {
            v.status = GapStatus::Gapless;
            v.trace.push_back({"chordal-canonical", "chordal-strongly-a-gapless", {}});
            return v;
        }
    }
    // catalog members and their reachable relatives
    auto iso_to = [&](const Bigraph& c) {
        return normal.n_events == c.n_events && normal.n_events <= cfg.iso_event_cap &&
               bigraph_isomorphic(normal, c, cfg.iso_event_cap);
    };
    if (iso_to(make_combinatorial_bigraph(4, 3))) {
        v.status = GapStatus::Gapless;
        v.trace.push_back({"catalog", "h43-gapless", {}});
        return v;
    }
    for (int n = 5; n <= cfg.nm1_cap; ++n) {
        if (iso_to(make_combinatorial_bigraph(n, n - 1))) {
            v.status = GapStatus::Gapless;
            v.trace.push_back({"catalog", "shifted-combinatorial-gapless",
                               {"n=" + std::to_string(n), "m=" + std::to_string(n - 1)}});
            return v;
        }
    }
    if (iso_to(make_hstar())) {
        v.status = GapStatus::Gapful;
        v.trace.push_back({"catalog", "hstar-gapful", {}});
        return v;
    }
    if (iso_to(make_combinatorial_bigraph(7, 5))) {
        v.status = GapStatus::Gapful;
        v.trace.push_back({"catalog", "reduces-to-hstar-gapful", {}});
        return v;
    }
    if (normal.n_events <= cfg.iso_event_cap && contains_bigraph(normal, make_hstar())) {
        v.status = GapStatus::Gapful;
        v.trace.push_back({"containment", "contains-gapful", {"pattern=hstar"}});
        return v;
    }
    for (int c = 1; c <= cfg.sparsify_c_cap; ++c) {
        if (is_comb_sparsification(normal, 7 * c, 5 * c, cfg.sparsify_budget)) {
            v.status = GapStatus::Gapful;
            v.trace.push_back({"catalog", "sparsification-gapful", {"c=" + std::to_string(c)}});
            return v;
        }
    }
    v.status = GapStatus::Unknown;
    v.trace.push_back({"exhausted", "no-applicable-rule", {}});
    return v;
}

GraphGapTraits classify_graph(const DependencyGraph& g) {
    GraphGapTraits t;
    t.a_gapful = !is_tree(g);
    t.strongly_a_gapful = !is_chordal(g);
    return t;
}

std::optional<std::vector<int>> cyclic_event_order(const Bigraph& h) {
    auto vr = reduce_variables(h);
    const Bigraph& r = vr.reduced;
    const int n = r.n_events;
    if (n < 3 || r.n_variables != n) return std::nullopt;
    for (int j = 0; j < n; ++j)
        if (r.var_nbrs[j].size() != 2) return std::nullopt;
    auto base = base_graph(r);
    if (!is_connected(base)) return std::nullopt;
    for (int i = 0; i < n; ++i)
        if (base.degree(i) != 2) return std::nullopt;
    std::vector<int> order{0, base.adj[0][0]};
    while (static_cast<int>(order.size()) < n) {
        int cur = order.back(), prev = order[order.size() - 2];
        int next = base.adj[cur][0] == prev ? base.adj[cur][1] : base.adj[cur][0];
        order.push_back(next);
    }
    return order;
}

NumericGapCheck numeric_gap_check(const Bigraph& h, const ProbVec& direction,
                                  const SearchConfig& cfg, double margin) {
    if (static_cast<int>(direction.size()) != h.n_events)
        throw std::invalid_argument("direction length does not match event count");
    auto base = base_graph(h);
    NumericGapCheck out;
    out.lambda_abstract = abstract_boundary_lambda(base, direction).lambda;
    if (is_tree(base)) {
        out.lambda_variable = tree_boundary_lambda(h, direction).lambda;
        out.variable_method = "tree";
    } else if (auto order = cyclic_event_order(h)) {
        ProbVec permuted;
        for (int e : *order) permuted.push_back(direction[static_cast<std::size_t>(e)]);
        out.lambda_variable = cycle_boundary_lambda(permuted).lambda;
        out.variable_method = "cycle";
    } else {
        out.lambda_variable = vlll_boundary_lambda_bruteforce(h, direction, cfg).lambda;
        out.variable_method = "discrete";
    }
    out.gapful_in_direction = out.lambda_variable - out.lambda_abstract > margin;
    return out;
}

DiscreteCylinderSet small_exclusive_witness(const Bigraph& h) {
    const int n = h.n_events;
    DiscreteCylinderSet s;
    s.partitions.assign(static_cast<std::size_t>(h.n_variables),
                        std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
    s.indicators.assign(static_cast<std::size_t>(h.n_events), {});
    for (int i = 0; i < n; ++i) {
        std::size_t cells = 1;
        for (std::size_t k = 0; k < h.event_nbrs[i].size(); ++k) cells *= static_cast<std::size_t>(n);
        s.indicators[static_cast<std::size_t>(i)].assign(cells, 0);
        std::size_t idx = 0;
        for (std::size_t k = 0; k < h.event_nbrs[i].size(); ++k)
            idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
        s.indicators[static_cast<std::size_t>(i)][idx] = 1;
    }
    return s;
}

DiscreteCylinderSet h43_witness(const ProbVec& p, double tol) {
    if (p.size() != 4) throw std::invalid_argument("witness needs 4 measures");
    double sum = 0.0;
    for (double v : p) {
        if (!(v > 0.0)) throw std::invalid_argument("measures must be positive");
        sum += v;
    }
    if (std::abs(sum - 1.0) > tol)
        throw std::invalid_argument("measures must sum to 1");
    ProbVec s(p);
    std::sort(s.begin(), s.end(), std::greater<>());
    const double s0 = s[0], s2 = s[2], s3 = s[3];
    // width of the pad that tops the largest event up to s0
    double w = (s0 + 4.0 * s2 * s3 - s2 - s3) / (1.0 - 2.0 * s3);
    w = std::max(0.0, w);

    DiscreteCylinderSet out;
    out.partitions = {
        {2.0 * s2, w, 1.0 - 2.0 * s2 - w},
        {2.0 * s3, 1.0 - 2.0 * s3},
        {1.0},
        {0.5, 0.5},
    };
    out.indicators.assign(4, {});
    // events on variable sets {0,1,2}, {0,1,3}, {0,2,3}, {1,2,3}
    out.indicators[0].assign(6, 0);  // dims (3,2,1)
    out.indicators[0][5] = 1;        // (2,1,0)
    out.indicators[1].assign(12, 0); // dims (3,2,2)
    for (std::size_t idx : {2u, 5u, 9u, 6u, 7u}) out.indicators[1][idx] = 1;
    out.indicators[2].assign(6, 0);  // dims (3,1,2)
    out.indicators[2][1] = 1;        // (0,0,1)
    out.indicators[3].assign(4, 0);  // dims (2,1,2)
    out.indicators[3][0] = 1;        // (0,0,0)
    return out;
}

} // namespace vlll
