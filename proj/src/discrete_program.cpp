#include "vlll/discrete_program.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

#include "vlll/errors.hpp"
#include "vlll/exec.hpp"

namespace vlll {

namespace {

// ---------------------------------------------------------------------------
// discretization bookkeeping

struct Disc {
    const Bigraph* h = nullptr;
    std::vector<int> dsize;                             // cells per axis
    std::vector<int> event_cells;                       // tensor size per event
    std::int64_t grid = 1;                              // full product grid size
    std::vector<std::vector<std::int32_t>> grid_local;  // [event][cell] local index
    std::vector<std::vector<int>> grid_coord;           // [cell][axis]
    // cellmask[e][slot][k]: bitmask of event-e cells whose coordinate on the
    // event's slot-th variable equals k
    std::vector<std::vector<std::vector<std::uint64_t>>> cellmask;
    // per event cell: (axis, coord) pairs for measure evaluation
    std::vector<std::vector<std::vector<std::pair<int, int>>>> cell_axes;
};

Disc make_disc(const Bigraph& h, const std::vector<int>& dsize, std::int64_t cells_cap) {
    Disc d;
    d.h = &h;
    d.dsize = dsize;
    for (int j = 0; j < h.n_variables; ++j) {
        d.grid *= dsize[j];
        if (d.grid > cells_cap)
            throw cap_exceeded("search grid exceeds cap of " + std::to_string(cells_cap) + " cells");
    }
    d.event_cells.assign(h.n_events, 1);
    for (int i = 0; i < h.n_events; ++i) {
        for (int j : h.event_nbrs[i]) {
            d.event_cells[i] *= dsize[j];
            if (d.event_cells[i] > 62)
                throw cap_exceeded("event indicator tensor exceeds 62 cells");
        }
    }
    d.grid_coord.assign(static_cast<std::size_t>(d.grid), std::vector<int>(h.n_variables, 0));
    for (std::int64_t cell = 0; cell < d.grid; ++cell) {
        std::int64_t r = cell;
        for (int j = h.n_variables - 1; j >= 0; --j) {
            d.grid_coord[cell][j] = static_cast<int>(r % dsize[j]);
            r /= dsize[j];
        }
    }
    d.grid_local.assign(h.n_events, {});
    for (int i = 0; i < h.n_events; ++i) {
        d.grid_local[i].assign(static_cast<std::size_t>(d.grid), 0);
        for (std::int64_t cell = 0; cell < d.grid; ++cell) {
            std::int64_t idx = 0;
            for (int j : h.event_nbrs[i]) idx = idx * dsize[j] + d.grid_coord[cell][j];
            d.grid_local[i][cell] = static_cast<std::int32_t>(idx);
        }
    }
    d.cellmask.assign(h.n_events, {});
    d.cell_axes.assign(h.n_events, {});
    for (int i = 0; i < h.n_events; ++i) {
        const auto& vars = h.event_nbrs[i];
        d.cellmask[i].assign(vars.size(), {});
        for (std::size_t s = 0; s < vars.size(); ++s)
            d.cellmask[i][s].assign(static_cast<std::size_t>(dsize[vars[s]]), 0);
        d.cell_axes[i].assign(static_cast<std::size_t>(d.event_cells[i]), {});
        std::vector<int> c(vars.size(), 0);
        for (int idx = 0; idx < d.event_cells[i]; ++idx) {
            for (std::size_t s = 0; s < vars.size(); ++s) {
                d.cellmask[i][s][static_cast<std::size_t>(c[s])] |= 1ull << idx;
                d.cell_axes[i][idx].push_back({vars[s], c[s]});
            }
            for (int s = static_cast<int>(vars.size()) - 1; s >= 0; --s) {
                if (++c[s] < dsize[vars[s]]) break;
                c[s] = 0;
            }
        }
    }
    return d;
}

using Masks = std::vector<std::uint64_t>;
using Lengths = std::vector<std::vector<double>>;

double event_measure(const Disc& d, int event, std::uint64_t mask, const Lengths& x) {
    double total = 0.0;
    while (mask) {
        int idx = std::countr_zero(mask);
        mask &= mask - 1;
        double len = 1.0;
        for (auto [axis, k] : d.cell_axes[event][idx]) len *= x[axis][static_cast<std::size_t>(k)];
        total += len;
    }
    return total;
}

double union_measure(const Disc& d, const Masks& masks, const Lengths& x) {
    const int n = d.h->n_events;
    const int m = d.h->n_variables;
    double total = 0.0;
    for (std::int64_t cell = 0; cell < d.grid; ++cell) {
        bool covered = false;
        for (int i = 0; i < n && !covered; ++i)
            covered = (masks[i] >> d.grid_local[i][cell]) & 1;
        if (!covered) continue;
        double len = 1.0;
        for (int j = 0; j < m; ++j)
            len *= x[j][static_cast<std::size_t>(d.grid_coord[cell][j])];
        total += len;
    }
    return total;
}

bool covers_grid(const Disc& d, const Masks& masks) {
    const int n = d.h->n_events;
    for (std::int64_t cell = 0; cell < d.grid; ++cell) {
        bool covered = false;
        for (int i = 0; i < n && !covered; ++i)
            covered = (masks[i] >> d.grid_local[i][cell]) & 1;
        if (!covered) return false;
    }
    return true;
}

double max_adjacent_overlap(const Disc& d, const Masks& masks, const Lengths& x,
                            const std::vector<std::pair<int, int>>& adjacent_pairs) {
    double worst = 0.0;
    for (auto [a, b] : adjacent_pairs) {
        double overlap = 0.0;
        for (std::int64_t cell = 0; cell < d.grid; ++cell) {
            if (!((masks[a] >> d.grid_local[a][cell]) & 1)) continue;
            if (!((masks[b] >> d.grid_local[b][cell]) & 1)) continue;
            double len = 1.0;
            for (int j = 0; j < d.h->n_variables; ++j)
                len *= x[j][static_cast<std::size_t>(d.grid_coord[cell][j])];
            overlap += len;
        }
        worst = std::max(worst, overlap);
    }
    return worst;
}

// ---------------------------------------------------------------------------
// inner continuous solve: Nelder-Mead over concatenated interval lengths,
// projected onto the product of per-axis probability simplices

struct FlatCoords {
    std::vector<int> offset;
    int dim = 0;
};

FlatCoords flat_coords(const std::vector<int>& dsize) {
    FlatCoords f;
    f.offset.resize(dsize.size());
    for (std::size_t j = 0; j < dsize.size(); ++j) {
        f.offset[j] = f.dim;
        f.dim += dsize[j];
    }
    return f;
}

void project(const FlatCoords& f, const std::vector<int>& dsize, const std::vector<double>& raw,
             Lengths& x) {
    if (x.size() != dsize.size()) {
        x.resize(dsize.size());
        for (std::size_t j = 0; j < dsize.size(); ++j)
            x[j].resize(static_cast<std::size_t>(dsize[j]));
    }
    for (std::size_t j = 0; j < dsize.size(); ++j) {
        double sum = 0.0;
        for (int k = 0; k < dsize[j]; ++k) {
            double v = raw[static_cast<std::size_t>(f.offset[j] + k)];
            if (v < 0.0) v = 0.0;
            x[j][static_cast<std::size_t>(k)] = v;
            sum += v;
        }
        if (sum <= 1e-12) {
            for (int k = 0; k < dsize[j]; ++k)
                x[j][static_cast<std::size_t>(k)] = 1.0 / dsize[j];
        } else {
            for (int k = 0; k < dsize[j]; ++k) x[j][static_cast<std::size_t>(k)] /= sum;
        }
    }
}

std::vector<double> flatten(const FlatCoords& f, const Lengths& x) {
    std::vector<double> raw(static_cast<std::size_t>(f.dim), 0.0);
    for (std::size_t j = 0; j < x.size(); ++j)
        for (std::size_t k = 0; k < x[j].size(); ++k)
            raw[static_cast<std::size_t>(f.offset[j]) + k] = x[j][k];
    return raw;
}

using Objective = std::function<double(const Lengths&)>;

double nelder_mead(const FlatCoords& f, const std::vector<int>& dsize, const Objective& objective,
                   std::vector<double> start, int iters, Lengths& best_x) {
    const int D = f.dim;
    Lengths x;
    auto eval = [&](const std::vector<double>& raw) {
        project(f, dsize, raw, x);
        return objective(x);
    };

    std::vector<std::vector<double>> pts(static_cast<std::size_t>(D) + 1, start);
    std::vector<double> val(static_cast<std::size_t>(D) + 1, 0.0);
    for (int i = 1; i <= D; ++i) pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] += 0.25;
    for (int i = 0; i <= D; ++i) val[static_cast<std::size_t>(i)] = eval(pts[static_cast<std::size_t>(i)]);

    std::vector<int> ord(static_cast<std::size_t>(D) + 1);
    std::vector<double> centroid(static_cast<std::size_t>(D)), reflect(static_cast<std::size_t>(D)),
        second(static_cast<std::size_t>(D));
    auto blend = [&](double t, const int worst, std::vector<double>& out) {
        for (int k = 0; k < D; ++k)
            out[static_cast<std::size_t>(k)] =
                centroid[static_cast<std::size_t>(k)] +
                t * (centroid[static_cast<std::size_t>(k)] -
                     pts[static_cast<std::size_t>(worst)][static_cast<std::size_t>(k)]);
    };
    for (int it = 0; it < iters; ++it) {
        for (int i = 0; i <= D; ++i) ord[static_cast<std::size_t>(i)] = i;
        std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) {
            return val[static_cast<std::size_t>(a)] < val[static_cast<std::size_t>(b)];
        });
        const int best = ord.front(), worst = ord.back();
        if (val[static_cast<std::size_t>(worst)] - val[static_cast<std::size_t>(best)] < 1e-13) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (int i = 0; i < D; ++i) {
            const auto& p = pts[static_cast<std::size_t>(ord[static_cast<std::size_t>(i)])];
            for (int k = 0; k < D; ++k)
                centroid[static_cast<std::size_t>(k)] += p[static_cast<std::size_t>(k)] / D;
        }
        blend(1.0, worst, reflect);
        double fr = eval(reflect);
        double fbest = val[static_cast<std::size_t>(best)];
        double fsecond = val[static_cast<std::size_t>(ord[static_cast<std::size_t>(D - 1)])];
        double fworst = val[static_cast<std::size_t>(worst)];
        if (fr < fbest) {
            blend(2.0, worst, second);
            double fe = eval(second);
            if (fe < fr) { pts[static_cast<std::size_t>(worst)].swap(second); val[static_cast<std::size_t>(worst)] = fe; }
            else { pts[static_cast<std::size_t>(worst)].swap(reflect); val[static_cast<std::size_t>(worst)] = fr; }
        } else if (fr < fsecond) {
            pts[static_cast<std::size_t>(worst)].swap(reflect);
            val[static_cast<std::size_t>(worst)] = fr;
        } else {
            blend(fr < fworst ? 0.5 : -0.5, worst, second);
            double fc = eval(second);
            if (fc < std::min(fr, fworst)) { pts[static_cast<std::size_t>(worst)].swap(second); val[static_cast<std::size_t>(worst)] = fc; }
            else {
                const auto anchor = pts[static_cast<std::size_t>(best)];
                for (int i = 1; i <= D; ++i) {
                    auto& p = pts[static_cast<std::size_t>(ord[static_cast<std::size_t>(i)])];
                    for (int k = 0; k < D; ++k)
                        p[static_cast<std::size_t>(k)] =
                            anchor[static_cast<std::size_t>(k)] +
                            0.5 * (p[static_cast<std::size_t>(k)] - anchor[static_cast<std::size_t>(k)]);
                    val[static_cast<std::size_t>(ord[static_cast<std::size_t>(i)])] = eval(p);
                }
            }
        }
    }
    int argmin = 0;
    for (int i = 1; i <= D; ++i)
        if (val[static_cast<std::size_t>(i)] < val[static_cast<std::size_t>(argmin)]) argmin = i;
    project(f, dsize, pts[static_cast<std::size_t>(argmin)], best_x);
    return val[static_cast<std::size_t>(argmin)];
}

std::uint64_t mix_seed(std::uint64_t seed, const Masks& masks, int start) {
    std::uint64_t v = seed;
    for (auto m : masks) v ^= m + 0x9e3779b97f4a7c15ull + (v << 6) + (v >> 2);
    v ^= static_cast<std::uint64_t>(start) * 0x2545f4914f6cdd1dull;
    return v ? v : 1;
}

// Seeds are derived from the assignment itself, so the outcome does not
// depend on scheduling.
double multistart_minimize(const Disc& d, const Masks& masks, const SearchConfig& cfg,
                           const Objective& objective, Lengths& best_x, double good_enough) {
    auto f = flat_coords(d.dsize);
    double best = 0.0;
    bool have = false;
    for (int s = 0; s < cfg.starts; ++s) {
        std::vector<double> start(static_cast<std::size_t>(f.dim), 0.0);
        if (s == 0) {
            for (std::size_t j = 0; j < d.dsize.size(); ++j)
                for (int k = 0; k < d.dsize[j]; ++k)
                    start[static_cast<std::size_t>(f.offset[j] + k)] = 1.0 / d.dsize[j];
        } else {
            std::mt19937_64 rng(mix_seed(cfg.seed, masks, s));
            for (int k = 0; k < f.dim; ++k)
                start[static_cast<std::size_t>(k)] = -std::log(uniform_real(rng, 1e-3, 1.0));
        }
        Lengths xs;
        double v = nelder_mead(f, d.dsize, objective, std::move(start), cfg.nm_iters, xs);
        if (!have || v < best) {
            best = v;
            best_x = std::move(xs);
            have = true;
        }
        if (best <= good_enough) break;
    }
    return best;
}

// ---------------------------------------------------------------------------
// assignment enumeration with axis-relabeling symmetry pruning
//
// For every axis, the per-label count profile (set-cell counts of adjacent
// events, ascending) must be lexicographically non-decreasing in the label.
// The profile of one axis is invariant under relabelings of the others, so
// each relabeling orbit keeps a representative and the prune is sound.

struct Problem {
    const Disc& d;
    std::vector<Masks> allowed; // per event, ascending mask order

    explicit Problem(const Disc& disc) : d(disc) {}
};

struct WalkState {
    const Problem& pr;
    // counts[j][k * n_adj + t]: set-cell count of the t-th adjacent event
    std::vector<std::vector<int>> counts;

    explicit WalkState(const Problem& p) : pr(p) {
        const auto& h = *p.d.h;
        counts.assign(static_cast<std::size_t>(h.n_variables), {});
        for (int j = 0; j < h.n_variables; ++j)
            counts[j].assign(h.var_nbrs[j].size() * static_cast<std::size_t>(p.d.dsize[j]), 0);
    }

    void record(int event, std::uint64_t mask) {
        const auto& h = *pr.d.h;
        const auto& vars = h.event_nbrs[event];
        for (std::size_t s = 0; s < vars.size(); ++s) {
            int j = vars[s];
            const auto& adj = h.var_nbrs[j];
            std::size_t t = static_cast<std::size_t>(
                std::lower_bound(adj.begin(), adj.end(), event) - adj.begin());
            for (int k = 0; k < pr.d.dsize[j]; ++k)
                counts[j][static_cast<std::size_t>(k) * adj.size() + t] =
                    std::popcount(mask & pr.d.cellmask[event][s][static_cast<std::size_t>(k)]);
        }
    }

    // Sortedness of the label profiles of axes touching `event`, using only
    // events assigned so far (events are assigned in ascending order).
    // Undecided comparisons pass.
    bool keys_ok(int event) const {
        const auto& h = *pr.d.h;
        for (int j : h.event_nbrs[event]) {
            const auto& adj = h.var_nbrs[j];
            for (int k = 0; k + 1 < pr.d.dsize[j]; ++k) {
                for (std::size_t t = 0; t < adj.size(); ++t) {
                    if (adj[t] > event) break;
                    int a = counts[j][static_cast<std::size_t>(k) * adj.size() + t];
                    int b = counts[j][static_cast<std::size_t>(k + 1) * adj.size() + t];
                    if (a < b) break;
                    if (a > b) return false;
                }
            }
        }
        return true;
    }

    // Depth-first over events [from, n); leaf returns true to stop the walk.
    bool walk(Masks& masks, int event, const std::function<bool(const Masks&)>& leaf) {
        const int n = pr.d.h->n_events;
        if (event == n) return leaf(masks);
        for (std::uint64_t m : pr.allowed[static_cast<std::size_t>(event)]) {
            masks[static_cast<std::size_t>(event)] = m;
            record(event, m);
            if (keys_ok(event) && walk(masks, event + 1, leaf)) return true;
        }
        return false;
    }
};

double raw_space(const Disc& d) {
    double space = 1.0;
    for (int c : d.event_cells) space *= std::pow(2.0, c);
    return space;
}

// Tasks fix the masks of the first one or two events so the batches stay
// fine-grained; the prefix order equals the nested enumeration order.
struct TaskPrefix {
    std::vector<std::uint64_t> masks; // one or two entries
};

std::vector<TaskPrefix> make_prefixes(const Problem& pr) {
    std::vector<TaskPrefix> out;
    const int n = pr.d.h->n_events;
    const std::size_t pair_limit = 1u << 22;
    if (n == 1 || pr.allowed[0].size() * pr.allowed[1].size() > pair_limit) {
        for (auto m : pr.allowed[0]) out.push_back({{m}});
        return out;
    }
    for (auto m0 : pr.allowed[0])
        for (auto m1 : pr.allowed[1]) out.push_back({{m0, m1}});
    return out;
}

// Applies a prefix; returns false when the symmetry keys already reject it.
bool apply_prefix(WalkState& ws, Masks& masks, const TaskPrefix& prefix) {
    for (std::size_t e = 0; e < prefix.masks.size(); ++e) {
        masks[e] = prefix.masks[e];
        ws.record(static_cast<int>(e), prefix.masks[e]);
        if (!ws.keys_ok(static_cast<int>(e))) return false;
    }
    return true;
}

// Ordered batched driver. All tasks of a batch run to completion (possibly in
// parallel) before the stop flags are consulted, so the set of scored
// assignments and the merged outcome do not depend on the thread count.
void run_batched(int ntasks, const std::function<bool(int)>& task) {
    constexpr int batch = 16;
    bool stop = false;
    for (int b0 = 0; b0 < ntasks && !stop; b0 += batch) {
        const int b1 = std::min(ntasks, b0 + batch);
        std::vector<char> stops(static_cast<std::size_t>(b1 - b0), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(worker_threads())
#endif
        for (int t = b0; t < b1; ++t) stops[static_cast<std::size_t>(t - b0)] = task(t) ? 1 : 0;
        for (char s : stops) stop = stop || s;
    }
}

std::vector<int> degree_sizes(const Bigraph& h, int bump) {
    std::vector<int> d(static_cast<std::size_t>(h.n_variables), 1);
    for (int j = 0; j < h.n_variables; ++j)
        d[static_cast<std::size_t>(j)] =
            std::max(1, static_cast<int>(h.var_nbrs[j].size()) + bump);
    return d;
}

DiscreteCylinderSet assemble(const Disc& d, const Masks& masks, const Lengths& x) {
    DiscreteCylinderSet s;
    s.partitions = x;
    s.indicators.assign(d.h->n_events, {});
    for (int i = 0; i < d.h->n_events; ++i) {
        s.indicators[i].assign(static_cast<std::size_t>(d.event_cells[i]), 0);
        for (int c = 0; c < d.event_cells[i]; ++c)
            s.indicators[i][static_cast<std::size_t>(c)] = (masks[i] >> c) & 1;
    }
    return s;
}

void check_vector(const Bigraph& h, const ProbVec& v, const char* what) {
    if (static_cast<int>(v.size()) != h.n_events)
        throw std::invalid_argument(std::string(what) + " length does not match event count");
    for (double x : v)
        if (!(x > 0.0)) throw std::invalid_argument(std::string(what) + " entries must be positive");
}

} // namespace

// ---------------------------------------------------------------------------

std::optional<MembershipCertificate> exterior_membership(const Bigraph& h, const ProbVec& q_in,
                                                         const SearchConfig& cfg) {
    check_vector(h, q_in, "measure bound");
    ProbVec q = clamp_unit(q_in);

    // a covering set forces the measures to sum to at least 1
    double qsum = 0.0;
    for (double v : q) qsum += v;
    if (qsum + h.n_events * cfg.tol < 1.0) return std::nullopt;

    auto dsize = degree_sizes(h, 0);

    // an event allowed measure 1 covers the cube on its own
    for (int i = 0; i < h.n_events; ++i) {
        if (q[static_cast<std::size_t>(i)] >= 1.0 - 1e-15) {
            DiscreteCylinderSet s;
            s.partitions.assign(static_cast<std::size_t>(h.n_variables), {});
            for (int j = 0; j < h.n_variables; ++j)
                s.partitions[static_cast<std::size_t>(j)].assign(
                    static_cast<std::size_t>(dsize[static_cast<std::size_t>(j)]),
                    1.0 / dsize[static_cast<std::size_t>(j)]);
            s.indicators.assign(static_cast<std::size_t>(h.n_events), {});
            for (int e = 0; e < h.n_events; ++e) {
                std::size_t cells = 1;
                for (int j : h.event_nbrs[e])
                    cells *= static_cast<std::size_t>(dsize[static_cast<std::size_t>(j)]);
                s.indicators[static_cast<std::size_t>(e)].assign(cells, e == i ? 1 : 0);
            }
            MembershipCertificate cert;
            cert.cylinder_set = std::move(s);
            cert.slack.assign(static_cast<std::size_t>(h.n_events), 0.0);
            for (int e = 0; e < h.n_events; ++e)
                cert.slack[static_cast<std::size_t>(e)] =
                    q[static_cast<std::size_t>(e)] - (e == i ? 1.0 : 0.0);
            return cert;
        }
    }

    Disc d = make_disc(h, dsize, cfg.cells_cap);
    if (raw_space(d) > cfg.assignment_cap)
        throw cap_exceeded("indicator assignment space exceeds cap");

    Problem pr(d);
    pr.allowed.assign(static_cast<std::size_t>(h.n_events), {});
    for (int i = 0; i < h.n_events; ++i) {
        const std::uint64_t full = (1ull << d.event_cells[i]) - 1;
        for (std::uint64_t m = 0; m <= full; ++m) {
            if (m == full && 1.0 > q[static_cast<std::size_t>(i)] + cfg.tol) continue;
            pr.allowed[static_cast<std::size_t>(i)].push_back(m);
        }
    }

    auto prefixes = make_prefixes(pr);
    const int ntasks = static_cast<int>(prefixes.size());
    std::vector<std::optional<MembershipCertificate>> found(static_cast<std::size_t>(ntasks));
    std::atomic<std::int64_t> scored{0};
    std::atomic<bool> budget_hit{false};

    auto task = [&](int t) -> bool {
        WalkState ws(pr);
        Masks masks(static_cast<std::size_t>(h.n_events), 0);
        if (!apply_prefix(ws, masks, prefixes[static_cast<std::size_t>(t)])) return false;
        auto leaf = [&](const Masks& ms) -> bool {
            if (!covers_grid(d, ms)) return false;
            if (scored.fetch_add(1) >= cfg.candidate_cap) {
                budget_hit.store(true);
                return true;
            }
            auto objective = [&](const Lengths& x) {
                double worst = -1e100;
                for (int i = 0; i < h.n_events; ++i)
                    worst = std::max(worst,
                                     event_measure(d, i, ms[static_cast<std::size_t>(i)], x) -
                                         q[static_cast<std::size_t>(i)]);
                return worst;
            };
            Lengths best_x;
            double worst = multistart_minimize(d, ms, cfg, objective, best_x, 0.1 * cfg.tol);
            if (worst <= cfg.tol) {
                MembershipCertificate cert;
                cert.cylinder_set = assemble(d, ms, best_x);
                cert.slack.assign(static_cast<std::size_t>(h.n_events), 0.0);
                for (int i = 0; i < h.n_events; ++i)
                    cert.slack[static_cast<std::size_t>(i)] =
                        q[static_cast<std::size_t>(i)] -
                        event_measure(d, i, ms[static_cast<std::size_t>(i)], best_x);
                found[static_cast<std::size_t>(t)] = std::move(cert);
                return true;
            }
            return false;
        };
        const int start = static_cast<int>(prefixes[static_cast<std::size_t>(t)].masks.size());
        if (h.n_events <= start) return leaf(masks);
        return ws.walk(masks, start, leaf);
    };

    run_batched(ntasks, task);
    if (budget_hit.load()) throw cap_exceeded("membership search exceeded candidate budget");
    for (auto& cert : found)
        if (cert) return std::move(cert);
    return std::nullopt;
}

BoundaryResult vlll_boundary_lambda_bruteforce(const Bigraph& h, const ProbVec& direction,
                                               const SearchConfig& cfg) {
    check_vector(h, direction, "direction");
    if (!is_connected(base_graph(h)))
        throw std::invalid_argument("boundary solvers need a connected base graph");
    double sum = 0.0, maxdir = 0.0;
    for (double v : direction) {
        sum += v;
        maxdir = std::max(maxdir, v);
    }
    auto member = [&](double lam) {
        ProbVec q(direction);
        for (double& v : q) v *= lam;
        return exterior_membership(h, q, cfg).has_value();
    };
    double lo = 0.5 / sum;    // l1-norm 0.5: no covering set fits below q
    double hi = 1.0 / maxdir; // an entry reaches 1: trivial certificate
    if (member(lo)) throw no_convergence("lower bisection bracket already in the exterior");
    while (hi - lo > cfg.lambda_tol) {
        double mid = 0.5 * (lo + hi);
        if (member(mid))
            hi = mid;
        else
            lo = mid;
    }
    BoundaryResult res;
    res.direction = direction;
    res.lambda = 0.5 * (lo + hi);
    res.boundary_vector = direction;
    for (double& v : res.boundary_vector) v *= res.lambda;
    res.method = "discrete";
    res.residual = 0.5 * (hi - lo);
    return res;
}

MupResult mup_bruteforce_detailed(const Bigraph& h, const ProbVec& p, const SearchConfig& cfg) {
    check_vector(h, p, "measure vector");
    for (double v : p)
        if (v > 1.0) throw std::invalid_argument("measure entries must lie in (0,1]");

    Disc d = make_disc(h, degree_sizes(h, 1), cfg.cells_cap);
    if (raw_space(d) > cfg.assignment_cap)
        throw cap_exceeded("indicator assignment space exceeds cap");

    Problem pr(d);
    pr.allowed.assign(static_cast<std::size_t>(h.n_events), {});
    for (int i = 0; i < h.n_events; ++i) {
        const std::uint64_t full = (1ull << d.event_cells[i]) - 1;
        for (std::uint64_t m = 0; m <= full; ++m) {
            if (m == 0 && p[static_cast<std::size_t>(i)] > cfg.tol) continue;
            if (m == full && p[static_cast<std::size_t>(i)] < 1.0 - cfg.tol) continue;
            pr.allowed[static_cast<std::size_t>(i)].push_back(m);
        }
    }

    double psum = 0.0;
    for (double v : p) psum += v;
    const double optimum_bound = std::min(1.0, psum);
    const double stop_threshold = optimum_bound - 10.0 * cfg.tol;

    auto adjacent_pairs = base_graph(h).edges;
    const double penalty = 1000.0;

    struct TaskBest {
        double value = -1.0;
        Masks masks;
        Lengths x;
        bool exclusive = false;
        double nonexclusive = -1.0;
        std::int64_t leaves = 0;
    };
    auto prefixes = make_prefixes(pr);
    const int ntasks = static_cast<int>(prefixes.size());
    std::vector<TaskBest> bests(static_cast<std::size_t>(std::max(1, ntasks)));
    std::atomic<std::int64_t> scored{0};
    std::atomic<bool> budget_hit{false};

    auto task = [&](int t) -> bool {
        WalkState ws(pr);
        Masks masks(static_cast<std::size_t>(h.n_events), 0);
        if (!apply_prefix(ws, masks, prefixes[static_cast<std::size_t>(t)])) return false;
        TaskBest& best = bests[static_cast<std::size_t>(t)];
        auto leaf = [&](const Masks& ms) -> bool {
            if (scored.fetch_add(1) >= cfg.candidate_cap) {
                budget_hit.store(true);
                return true;
            }
            ++best.leaves;
            auto viol_of = [&](const Lengths& x) {
                double viol = 0.0;
                for (int i = 0; i < h.n_events; ++i)
                    viol = std::max(viol, std::abs(event_measure(d, i, ms[static_cast<std::size_t>(i)], x) -
                                                   p[static_cast<std::size_t>(i)]));
                return viol;
            };
            auto objective = [&](const Lengths& x) {
                return penalty * viol_of(x) - union_measure(d, ms, x);
            };
            Lengths best_x;
            multistart_minimize(d, ms, cfg, objective, best_x, -2.0);
            if (viol_of(best_x) > cfg.tol) return false;
            // feasibility polish: pin the measures down so near-ties between
            // exclusive and overlapping candidates resolve on merit
            auto f = flat_coords(d.dsize);
            Lengths refined;
            Objective pure_viol = [&](const Lengths& x) { return viol_of(x); };
            nelder_mead(f, d.dsize, pure_viol, flatten(f, best_x), cfg.nm_iters, refined);
            if (viol_of(refined) <= viol_of(best_x)) best_x = std::move(refined);
            if (viol_of(best_x) > cfg.tol) return false;

            double value = union_measure(d, ms, best_x);
            bool exclusive = max_adjacent_overlap(d, ms, best_x, adjacent_pairs) <= 1e-9;
            if (!exclusive) best.nonexclusive = std::max(best.nonexclusive, value);
            if (value > best.value) {
                best.value = value;
                best.masks = ms;
                best.x = best_x;
                best.exclusive = exclusive;
            }
            // an exclusive candidate at min(1, sum p) is optimal
            return best.exclusive && best.value >= stop_threshold;
        };
        const int start = static_cast<int>(prefixes[static_cast<std::size_t>(t)].masks.size());
        if (h.n_events <= start) return leaf(masks);
        return ws.walk(masks, start, leaf);
    };

    run_batched(ntasks, task);

    MupResult out;
    out.exhausted = !budget_hit.load();
    out.value = -1.0;
    for (const auto& b : bests) {
        out.candidates += b.leaves;
        out.best_nonexclusive = std::max(out.best_nonexclusive, b.nonexclusive);
        if (b.value > out.value) {
            out.value = b.value;
            out.best = assemble(d, b.masks, b.x);
            out.best_exclusive = b.exclusive;
        }
    }
    if (out.value < 0.0) throw no_convergence("no feasible cylinder set found for the measure vector");
    return out;
}

double mup_bruteforce(const Bigraph& h, const ProbVec& p, const SearchConfig& cfg) {
    return mup_bruteforce_detailed(h, p, cfg).value;
}

} // namespace vlll
