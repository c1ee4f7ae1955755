#include "vlll/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vlll/errors.hpp"
#include "vlll/exec.hpp"

namespace vlll {

namespace {

constexpr double kSumTol = 1e-12;
constexpr double kOverlapTol = 1e-12;

void check_conformance(const DiscreteCylinderSet& s, const Bigraph& h) {
    if (static_cast<int>(s.partitions.size()) != h.n_variables)
        throw std::invalid_argument("cylinder set has wrong number of axes");
    if (static_cast<int>(s.indicators.size()) != h.n_events)
        throw std::invalid_argument("cylinder set has wrong number of indicators");
    for (const auto& part : s.partitions) {
        if (part.empty()) throw std::invalid_argument("empty axis partition");
        double sum = 0.0;
        for (double len : part) {
            if (len < -kSumTol) throw std::invalid_argument("negative interval length");
            sum += len;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("axis partition lengths must sum to 1");
    }
    for (int i = 0; i < h.n_events; ++i) {
        std::size_t cells = 1;
        for (int j : h.event_nbrs[i]) cells *= s.partitions[j].size();
        if (s.indicators[i].size() != cells)
            throw std::invalid_argument("indicator tensor shape mismatch on event " + std::to_string(i));
    }
}

// Local cell index of event i for global grid coordinates, row-major over
// the event's neighborhood in ascending variable order.
struct EventProjector {
    std::vector<int> vars;
    std::vector<std::size_t> strides;

    static EventProjector make(const Bigraph& h, const DiscreteCylinderSet& s, int event) {
        EventProjector pr;
        pr.vars = h.event_nbrs[event];
        pr.strides.assign(pr.vars.size(), 1);
        for (int k = static_cast<int>(pr.vars.size()) - 2; k >= 0; --k)
            pr.strides[k] = pr.strides[k + 1] * s.partitions[pr.vars[k + 1]].size();
        return pr;
    }
    std::size_t local_index(const std::vector<int>& coords) const {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < vars.size(); ++k)
            idx += strides[k] * static_cast<std::size_t>(coords[vars[k]]);
        return idx;
    }
};

void decode(std::int64_t rank, const std::vector<std::size_t>& dims, std::vector<int>& coords) {
    for (int j = static_cast<int>(dims.size()) - 1; j >= 0; --j) {
        coords[j] = static_cast<int>(rank % static_cast<std::int64_t>(dims[j]));
        rank /= static_cast<std::int64_t>(dims[j]);
    }
}

ProbVec event_measures(const DiscreteCylinderSet& s, const Bigraph& h) {
    ProbVec measures(h.n_events, 0.0);
    for (int i = 0; i < h.n_events; ++i) {
        const auto& vars = h.event_nbrs[i];
        const auto& ind = s.indicators[i];
        kahan_sum acc;
        std::vector<int> c(vars.size(), 0);
        for (std::size_t idx = 0; idx < ind.size(); ++idx) {
            if (ind[idx]) {
                double len = 1.0;
                for (std::size_t k = 0; k < vars.size(); ++k)
                    len *= s.partitions[vars[k]][c[k]];
                acc.add(len);
            }
            for (int k = static_cast<int>(vars.size()) - 1; k >= 0; --k) {
                if (++c[k] < static_cast<int>(s.partitions[vars[k]].size())) break;
                c[k] = 0;
            }
        }
        measures[i] = acc.value();
    }
    return measures;
}

// Overlap of two events over the axes either depends on; remaining axes
// integrate to one.
double pair_overlap(const DiscreteCylinderSet& s, const Bigraph& h, int a, int b) {
    std::vector<int> axes = h.event_nbrs[a];
    axes.insert(axes.end(), h.event_nbrs[b].begin(), h.event_nbrs[b].end());
    std::sort(axes.begin(), axes.end());
    axes.erase(std::unique(axes.begin(), axes.end()), axes.end());

    std::vector<std::size_t> dims;
    for (int j : axes) dims.push_back(s.partitions[j].size());

    auto local = [&](int event, const std::vector<int>& coords) {
        const auto& vars = h.event_nbrs[event];
        std::size_t idx = 0;
        for (int v : vars) {
            std::size_t k = static_cast<std::size_t>(
                std::lower_bound(axes.begin(), axes.end(), v) - axes.begin());
            idx = idx * s.partitions[v].size() + static_cast<std::size_t>(coords[k]);
        }
        return idx;
    };

    std::int64_t total = 1;
    for (auto d : dims) total *= static_cast<std::int64_t>(d);
    kahan_sum acc;
    std::vector<int> c(axes.size(), 0);
    for (std::int64_t rank = 0; rank < total; ++rank) {
        decode(rank, dims, c);
        if (s.indicators[a][local(a, c)] && s.indicators[b][local(b, c)]) {
            double len = 1.0;
            for (std::size_t k = 0; k < axes.size(); ++k)
                len *= s.partitions[axes[k]][c[k]];
            acc.add(len);
        }
    }
    return acc.value();
}

CylinderEval evaluate_impl(const DiscreteCylinderSet& s, const Bigraph& h,
                           std::int64_t cells_cap, bool parallel) {
    check_conformance(s, h);

    std::vector<std::size_t> dims;
    std::int64_t total = 1;
    for (const auto& part : s.partitions) {
        dims.push_back(part.size());
        total *= static_cast<std::int64_t>(part.size());
        if (total > cells_cap)
            throw cap_exceeded("cell grid exceeds cap of " + std::to_string(cells_cap) + " cells");
    }

    CylinderEval out;
    out.measures = event_measures(s, h);

    std::vector<EventProjector> proj;
    proj.reserve(static_cast<std::size_t>(h.n_events));
    for (int i = 0; i < h.n_events; ++i) proj.push_back(EventProjector::make(h, s, i));

    auto cell_value = [&](std::int64_t rank) {
        thread_local std::vector<int> coords;
        coords.assign(dims.size(), 0);
        decode(rank, dims, coords);
        bool covered = false;
        for (int i = 0; i < h.n_events && !covered; ++i)
            covered = s.indicators[i][proj[i].local_index(coords)] != 0;
        if (!covered) return 0.0;
        double len = 1.0;
        for (std::size_t j = 0; j < dims.size(); ++j)
            len *= s.partitions[j][coords[j]];
        return len;
    };
    out.union_measure = parallel ? deterministic_sum(total, cell_value)
                                 : deterministic_sum_serial(total, cell_value);

    out.max_adjacent_overlap = 0.0;
    for (auto [a, b] : base_graph(h).edges)
        out.max_adjacent_overlap = std::max(out.max_adjacent_overlap, pair_overlap(s, h, a, b));
    out.exclusive = out.max_adjacent_overlap <= kOverlapTol;
    return out;
}

} // namespace

CylinderEval evaluate_cylinder_set(const DiscreteCylinderSet& s, const Bigraph& h,
                                   std::int64_t cells_cap) {
    return evaluate_impl(s, h, cells_cap, true);
}

CylinderEval evaluate_cylinder_set_serial(const DiscreteCylinderSet& s, const Bigraph& h,
                                          std::int64_t cells_cap) {
    return evaluate_impl(s, h, cells_cap, false);
}

} // namespace vlll
