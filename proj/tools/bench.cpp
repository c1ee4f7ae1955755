// Times the parallel kernels against their serial reference implementations
// and checks that both sides agree.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "vlll/cycle_boundary.hpp"
#include "vlll/cylinder.hpp"
#include "vlll/discrete_program.hpp"
#include "vlll/exec.hpp"
#include "vlll/shearer.hpp"

using namespace vlll;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms, bool match) {
    std::printf("%-28s %10.2f ms %10.2f ms %7.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, match ? "agree" : "MISMATCH");
}

} // namespace

int main() {
    std::printf("%-28s %13s %13s %8s\n", "kernel", "serial", "parallel", "speedup");

    {
        // alternating sums: direct superset reference vs memoized recurrence
        std::mt19937_64 rng(7);
        const int n = 18;
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
        for (int k = 0; k < 6; ++k)
            edges.push_back({static_cast<int>(rng() % n), static_cast<int>(rng() % n)});
        edges.erase(std::remove_if(edges.begin(), edges.end(),
                                   [](auto e) { return e.first == e.second; }),
                    edges.end());
        auto g = DependencyGraph::make(n, edges);
        ProbVec p(n, 0.12);

        auto t0 = std::chrono::steady_clock::now();
        auto ref = shearer_values_reference(g, p);
        double t_ref = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        auto fast = shearer_values(g, p);
        double t_fast = ms_since(t0);
        bool ok = ref.q.size() == fast.q.size();
        for (std::size_t k = 0; ok && k < ref.q.size(); ++k)
            ok = std::abs(ref.q[k] - fast.q[k]) <= 1e-12;
        row("shearer alternating sums", t_ref, t_fast, ok);
    }

    {
        // union measure over a large product grid
        std::mt19937_64 rng(11);
        const int m = 8, cells = 6, n = 12;
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i) {
            edges.push_back({i, i % m});
            edges.push_back({i, (i + 3) % m});
        }
        auto h = Bigraph::make(n, m, edges);
        DiscreteCylinderSet s;
        s.partitions.assign(m, std::vector<double>(cells, 1.0 / cells));
        s.indicators.assign(n, {});
        for (int i = 0; i < n; ++i) {
            s.indicators[i].assign(cells * cells, 0);
            for (int c = 0; c < cells * cells; ++c) s.indicators[i][c] = rng() % 3 == 0;
        }
        auto t0 = std::chrono::steady_clock::now();
        auto serial = evaluate_cylinder_set_serial(s, h);
        double t_serial = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        auto parallel = evaluate_cylinder_set(s, h);
        double t_parallel = ms_since(t0);
        bool ok = std::abs(serial.union_measure - parallel.union_measure) <= 1e-12;
        row("cylinder union evaluation", t_serial, t_parallel, ok);
    }

    {
        // discretized membership search near the 4-cycle boundary
        auto h = make_cycle_bigraph(4);
        ProbVec q(4, 0.34);
        SearchConfig cfg;
        set_worker_threads(1);
        auto t0 = std::chrono::steady_clock::now();
        auto one = exterior_membership(h, q, cfg);
        double t_one = ms_since(t0);
        set_worker_threads(0);
        t0 = std::chrono::steady_clock::now();
        auto many = exterior_membership(h, q, cfg);
        double t_many = ms_since(t0);
        bool ok = one.has_value() == many.has_value();
        row("membership search (1 vs all)", t_one, t_many, ok);
    }

    return 0;
}
