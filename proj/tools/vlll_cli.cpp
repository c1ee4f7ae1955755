// Command-line front end: instance generation, boundary solvers, gap
// classification, witnesses, brute-force oracles, and batch sweeps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "vlll/cycle_boundary.hpp"
#include "vlll/discrete_program.hpp"
#include "vlll/errors.hpp"
#include "vlll/exec.hpp"
#include "vlll/gap_engine.hpp"
#include "vlll/json_io.hpp"
#include "vlll/tree_boundary.hpp"

namespace {

using namespace vlll;

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void emit(const Json& j, const std::string& out_path) {
    std::string text = dump_json(j) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot write " + out_path);
        out << text;
    }
}

Bigraph load_bigraph(const std::string& path) { return bigraph_from_json(read_json_file(path)); }

Bigraph random_tree_bigraph(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random tree needs at least one event");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int k = 1; k < n; ++k) {
        int parent = static_cast<int>(rng() % static_cast<std::uint64_t>(k));
        edges.push_back({parent, k - 1});
        edges.push_back({k, k - 1});
    }
    return Bigraph::make(n, std::max(0, n - 1), std::move(edges));
}

ProbVec random_direction(int n, std::mt19937_64& rng) {
    ProbVec p(static_cast<std::size_t>(n));
    for (double& x : p) x = uniform_real(rng, 0.1, 1.0);
    return p;
}

struct Options {
    std::string bigraph_path, graph_path, out_path;
    std::string dir_text, p_text, q_text;
    std::string method = "auto";
    std::string family;
    std::vector<int> params;
    int n = 0;
    int dirs = 5;
    int count = 10;
    int starts = 16;
    std::uint64_t seed = 12345;
    double tol = 0.0; // 0: per-method default
    double margin = 1e-6;
    double lambda_tol = 1e-3;
    long long cells_cap = 4096;
    bool numeric = false;
    bool evaluate = false;
    std::string format = "csv";
};

SearchConfig search_config(const Options& o) {
    if (o.tol < 0.0 || o.tol > 1e-2) throw std::invalid_argument("tolerance must lie in (0, 1e-2]");
    if (o.cells_cap < 1 || o.starts < 1) throw std::invalid_argument("caps must be positive");
    SearchConfig cfg;
    cfg.cells_cap = o.cells_cap;
    cfg.starts = o.starts;
    cfg.seed = o.seed;
    cfg.lambda_tol = o.lambda_tol;
    if (o.tol > 0.0) cfg.tol = o.tol;
    return cfg;
}

int cmd_generate(const Options& o) {
    Bigraph h = [&] {
        const auto& p = o.params;
        if (o.family == "cycle") {
            if (p.size() != 1) throw std::invalid_argument("usage: generate cycle <n>");
            return make_cycle_bigraph(p[0]);
        }
        if (o.family == "comb") {
            if (p.size() != 2) throw std::invalid_argument("usage: generate comb <n> <m>");
            return make_combinatorial_bigraph(p[0], p[1]);
        }
        if (o.family == "upper-comb") {
            if (p.size() != 2) throw std::invalid_argument("usage: generate upper-comb <n> <m>");
            return make_upper_combinatorial(p[0], p[1]);
        }
        if (o.family == "hstar") return make_hstar();
        if (o.family == "canonical-of") {
            if (o.graph_path.empty()) throw std::invalid_argument("canonical-of needs --graph");
            return make_canonical_bigraph(graph_from_json(read_json_file(o.graph_path)));
        }
        if (o.family == "random-tree") {
            if (p.size() != 1) throw std::invalid_argument("usage: generate random-tree <n>");
            return random_tree_bigraph(p[0], o.seed);
        }
        throw std::invalid_argument("unknown family: " + o.family);
    }();
    emit(to_json(h), o.out_path);
    return 0;
}

ProbVec direction_for(const Options& o, int n) {
    if (o.dir_text.empty()) return ProbVec(static_cast<std::size_t>(n), 1.0);
    ProbVec dir = parse_vector(o.dir_text);
    if (static_cast<int>(dir.size()) != n)
        throw std::invalid_argument("direction length does not match event count");
    return dir;
}

int cmd_boundary(const Options& o) {
    std::string method = o.method;
    if (method == "shearer") {
        DependencyGraph g = o.graph_path.empty() ? base_graph(load_bigraph(o.bigraph_path))
                                                 : graph_from_json(read_json_file(o.graph_path));
        auto res = abstract_boundary_lambda(g, direction_for(o, g.n), o.tol > 0 ? o.tol : 1e-10);
        emit(to_json(res), o.out_path);
        return 0;
    }
    if (method == "cycle" && o.bigraph_path.empty()) {
        if (o.n < 3) throw std::invalid_argument("cycle method needs --n or --bigraph");
        auto res = cycle_boundary_lambda(direction_for(o, o.n), o.tol > 0 ? o.tol : 1e-12);
        emit(to_json(res), o.out_path);
        return 0;
    }

    Bigraph h = load_bigraph(o.bigraph_path);
    ProbVec dir = direction_for(o, h.n_events);
    auto base = base_graph(h);
    if (method == "auto") {
        if (is_tree(base))
            method = "tree";
        else if (cyclic_event_order(h))
            method = "cycle";
        else
            method = "discrete";
    }
    if (method == "tree") {
        emit(to_json(tree_boundary_lambda(h, dir, o.tol > 0 ? o.tol : 1e-10)), o.out_path);
        return 0;
    }
    if (method == "cycle") {
        auto order = cyclic_event_order(h);
        if (!order) throw std::invalid_argument("bigraph is not cyclic");
        ProbVec permuted;
        for (int e : *order) permuted.push_back(dir[static_cast<std::size_t>(e)]);
        auto res = cycle_boundary_lambda(permuted, o.tol > 0 ? o.tol : 1e-12);
        // report in original event order
        res.direction = dir;
        res.boundary_vector = dir;
        for (double& x : res.boundary_vector) x *= res.lambda;
        emit(to_json(res), o.out_path);
        return 0;
    }
    if (method == "discrete") {
        emit(to_json(vlll_boundary_lambda_bruteforce(h, dir, search_config(o))), o.out_path);
        return 0;
    }
    throw std::invalid_argument("unknown method: " + method);
}

int cmd_shearer(const Options& o) {
    DependencyGraph g = graph_from_json(read_json_file(o.graph_path));
    ProbVec p = parse_vector(o.p_text);
    auto rep = shearer_values(g, p);
    Json j;
    j["min_q"] = rep.min_value;
    Json set = Json::array();
    for (int v = 0; v < g.n; ++v)
        if (rep.min_set >> v & 1) set.push_back(v + 1);
    j["min_set"] = std::move(set);
    j["interior"] = in_abstract_interior(g, p);
    emit(j, o.out_path);
    return 0;
}

int cmd_classify(const Options& o) {
    Bigraph h = load_bigraph(o.bigraph_path);
    auto verdict = classify_gap(h);
    Json j = to_json(verdict);
    if (o.numeric) {
        std::mt19937_64 rng(o.seed);
        Json rows = Json::array();
        for (int k = 0; k < o.dirs; ++k) {
            ProbVec dir = random_direction(h.n_events, rng);
            auto chk = numeric_gap_check(h, dir, search_config(o), o.margin);
            Json row;
            row["direction"] = dir;
            row["lambda_abstract"] = chk.lambda_abstract;
            row["lambda_variable"] = chk.lambda_variable;
            row["margin"] = chk.lambda_variable - chk.lambda_abstract;
            row["gapful_in_direction"] = chk.gapful_in_direction;
            row["variable_method"] = chk.variable_method;
            rows.push_back(std::move(row));
        }
        j["numeric"] = std::move(rows);
    }
    emit(j, o.out_path);
    return 0;
}

int cmd_witness(const Options& o) {
    if (o.method == "tree") {
        Bigraph h = load_bigraph(o.bigraph_path);
        ProbVec dir = direction_for(o, h.n_events);
        auto res = tree_boundary_lambda(h, dir);
        auto w = tree_witness(h, res.boundary_vector);
        Json j = to_json(w);
        if (o.evaluate)
            j["evaluation"] = to_json(evaluate_cylinder_set(to_cylinder_set(w, h), h));
        emit(j, o.out_path);
        return 0;
    }
    if (o.method == "cycle") {
        if (o.n < 3) throw std::invalid_argument("cycle witness needs --n");
        ProbVec dir = direction_for(o, o.n);
        auto res = cycle_boundary_lambda(dir);
        auto s = cycle_boundary_witness(dir, res);
        Bigraph h = make_cycle_bigraph(o.n);
        Json j = to_json(s, h);
        if (o.evaluate) j["evaluation"] = to_json(evaluate_cylinder_set(s, h));
        emit(j, o.out_path);
        return 0;
    }
    if (o.method == "cycle-gapful") {
        if (o.n < 3) throw std::invalid_argument("cycle-gapful witness needs --n");
        auto s = cycle_gapful_witness(o.n);
        Bigraph h = make_cycle_bigraph(o.n);
        Json j = to_json(s, h);
        if (o.evaluate) j["evaluation"] = to_json(evaluate_cylinder_set(s, h));
        emit(j, o.out_path);
        return 0;
    }
    if (o.method == "small-exclusive") {
        Bigraph h = load_bigraph(o.bigraph_path);
        auto s = small_exclusive_witness(h);
        Json j = to_json(s, h);
        if (o.evaluate) j["evaluation"] = to_json(evaluate_cylinder_set(s, h));
        emit(j, o.out_path);
        return 0;
    }
    if (o.method == "h43") {
        ProbVec p = parse_vector(o.p_text);
        auto s = h43_witness(p);
        Bigraph h = make_combinatorial_bigraph(4, 3);
        Json j = to_json(s, h);
        if (o.evaluate) j["evaluation"] = to_json(evaluate_cylinder_set(s, h));
        emit(j, o.out_path);
        return 0;
    }
    throw std::invalid_argument("unknown witness method: " + o.method);
}

int cmd_oracle(const Options& o, const std::string& which) {
    Bigraph h = load_bigraph(o.bigraph_path);
    auto cfg = search_config(o);
    if (which == "exterior") {
        ProbVec q = parse_vector(o.q_text);
        auto cert = exterior_membership(h, q, cfg);
        Json j;
        j["member"] = cert.has_value();
        j["starts"] = cfg.starts;
        j["cells_cap"] = cfg.cells_cap;
        if (cert) {
            j["certificate"]["cylinder_set"] = to_json(cert->cylinder_set, h);
            j["certificate"]["slack"] = cert->slack;
            j["certificate"]["coverage_ok"] = cert->coverage_ok;
        }
        emit(j, o.out_path);
        return 0;
    }
    if (which == "boundary") {
        ProbVec dir = direction_for(o, h.n_events);
        emit(to_json(vlll_boundary_lambda_bruteforce(h, dir, cfg)), o.out_path);
        return 0;
    }
    if (which == "mup") {
        ProbVec p = parse_vector(o.p_text);
        auto res = mup_bruteforce_detailed(h, p, cfg);
        Json j;
        j["psi"] = res.value;
        j["best_exclusive"] = res.best_exclusive;
        j["best_nonexclusive"] = res.best_nonexclusive;
        j["exhausted"] = res.exhausted;
        j["candidates"] = res.candidates;
        j["cylinder_set"] = to_json(res.best, h);
        emit(j, o.out_path);
        return 0;
    }
    throw std::invalid_argument("unknown oracle: " + which);
}

int cmd_sweep(const Options& o) {
    Bigraph h = load_bigraph(o.bigraph_path);
    std::mt19937_64 rng(o.seed);
    std::ostringstream out;
    auto cfg = search_config(o);
    if (o.format == "csv")
        out << "direction,lambda_abstract,lambda_variable,margin,gapful_in_direction\n";
    Json rows = Json::array();
    for (int k = 0; k < o.count; ++k) {
        ProbVec dir = random_direction(h.n_events, rng);
        auto chk = numeric_gap_check(h, dir, cfg, o.margin);
        double margin = chk.lambda_variable - chk.lambda_abstract;
        if (o.format == "csv") {
            out << '"';
            for (std::size_t i = 0; i < dir.size(); ++i) {
                if (i) out << ',';
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.12g", dir[i]);
                out << buf;
            }
            char buf[128];
            std::snprintf(buf, sizeof buf, "\",%.12g,%.12g,%.12g,%d\n", chk.lambda_abstract,
                          chk.lambda_variable, margin, chk.gapful_in_direction ? 1 : 0);
            out << buf;
        } else {
            Json row;
            row["direction"] = dir;
            row["lambda_abstract"] = chk.lambda_abstract;
            row["lambda_variable"] = chk.lambda_variable;
            row["margin"] = margin;
            row["gapful_in_direction"] = chk.gapful_in_direction;
            rows.push_back(std::move(row));
        }
    }
    if (o.format == "csv") {
        if (o.out_path.empty()) {
            std::cout << out.str();
        } else {
            std::ofstream f(o.out_path);
            if (!f) throw std::invalid_argument("cannot write " + o.out_path);
            f << out.str();
        }
    } else {
        emit(rows, o.out_path);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tight probability boundaries for variable-generated event systems"};
    app.require_subcommand(1);
    app.set_config("--config");

    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", o.out_path, "write output to a file instead of stdout");
    };

    auto* gen = app.add_subcommand("generate", "emit a bigraph instance");
    gen->add_option("family", o.family, "cycle | comb | upper-comb | hstar | canonical-of | random-tree")
        ->required();
    gen->add_option("params", o.params, "family parameters");
    gen->add_option("--graph", o.graph_path, "dependency graph JSON (canonical-of)");
    gen->add_option("--seed", o.seed, "seed for random families");
    add_common(gen);

    auto* bnd = app.add_subcommand("boundary", "boundary scalar along a direction");
    bnd->add_option("--method", o.method, "auto | shearer | tree | cycle | discrete");
    bnd->add_option("--bigraph", o.bigraph_path, "bigraph JSON");
    bnd->add_option("--graph", o.graph_path, "dependency graph JSON (shearer)");
    bnd->add_option("--n", o.n, "canonical cycle length (cycle)");
    bnd->add_option("--dir", o.dir_text, "direction vector, default all ones");
    bnd->add_option("--tol", o.tol, "solver tolerance");
    bnd->add_option("--lambda-tol", o.lambda_tol, "bisection tolerance (discrete)");
    bnd->add_option("--cells-cap", o.cells_cap, "grid cap (discrete)");
    bnd->add_option("--starts", o.starts, "multi-start count (discrete)");
    bnd->add_option("--seed", o.seed, "search seed (discrete)");
    add_common(bnd);

    auto* sh = app.add_subcommand("shearer", "alternating sums and interior test");
    sh->add_option("--graph", o.graph_path, "dependency graph JSON")->required();
    sh->add_option("--p", o.p_text, "probability vector")->required();
    add_common(sh);

    auto* shb = app.add_subcommand("shearer-boundary", "abstract boundary along a direction");
    shb->add_option("--graph", o.graph_path, "dependency graph JSON")->required();
    shb->add_option("--dir", o.dir_text, "direction vector");
    shb->add_option("--tol", o.tol, "bisection tolerance");
    add_common(shb);

    auto* cls = app.add_subcommand("classify", "gap classification with derivation trace");
    cls->add_option("--bigraph", o.bigraph_path, "bigraph JSON")->required();
    cls->add_flag("--numeric", o.numeric, "add numeric gap checks on random directions");
    cls->add_option("--dirs", o.dirs, "number of random directions");
    cls->add_option("--seed", o.seed, "direction seed");
    cls->add_option("--margin", o.margin, "gap decision margin");
    cls->add_option("--cells-cap", o.cells_cap, "grid cap for the discrete solver");
    cls->add_option("--starts", o.starts, "multi-start count");
    add_common(cls);

    auto* wit = app.add_subcommand("witness", "worst-case cylinder-set witnesses");
    wit->add_option("--method", o.method, "tree | cycle | cycle-gapful | small-exclusive | h43")
        ->required();
    wit->add_option("--bigraph", o.bigraph_path, "bigraph JSON");
    wit->add_option("--n", o.n, "cycle length");
    wit->add_option("--dir", o.dir_text, "direction vector");
    wit->add_option("--p", o.p_text, "measure vector (h43)");
    wit->add_flag("--evaluate", o.evaluate, "append exact evaluation");
    add_common(wit);

    auto* orc = app.add_subcommand("oracle", "discretized-program brute force");
    std::string oracle_kind;
    orc->add_option("kind", oracle_kind, "exterior | boundary | mup")->required();
    orc->add_option("--bigraph", o.bigraph_path, "bigraph JSON")->required();
    orc->add_option("--q", o.q_text, "measure bound vector (exterior)");
    orc->add_option("--p", o.p_text, "measure vector (mup)");
    orc->add_option("--dir", o.dir_text, "direction vector (boundary)");
    orc->add_option("--cells-cap", o.cells_cap, "grid cap");
    orc->add_option("--starts", o.starts, "multi-start count");
    orc->add_option("--tol", o.tol, "measure slack tolerance");
    orc->add_option("--lambda-tol", o.lambda_tol, "bisection tolerance");
    orc->add_option("--seed", o.seed, "search seed");
    add_common(orc);

    auto* swp = app.add_subcommand("sweep", "margins over seeded random directions");
    swp->add_option("--bigraph", o.bigraph_path, "bigraph JSON")->required();
    swp->add_option("--count", o.count, "number of directions");
    swp->add_option("--seed", o.seed, "direction seed");
    swp->add_option("--margin", o.margin, "gap decision margin");
    swp->add_option("--format", o.format, "csv | json");
    swp->add_option("--cells-cap", o.cells_cap, "grid cap for the discrete solver");
    add_common(swp);

    CLI11_PARSE(app, argc, argv);

    try {
        if (o.tol < 0.0 || o.tol > 1e-2)
            throw std::invalid_argument("tolerance must lie in (0, 1e-2]");
        if (gen->parsed()) return cmd_generate(o);
        if (bnd->parsed()) return cmd_boundary(o);
        if (sh->parsed()) return cmd_shearer(o);
        if (shb->parsed()) {
            o.method = "shearer";
            return cmd_boundary(o);
        }
        if (cls->parsed()) return cmd_classify(o);
        if (wit->parsed()) return cmd_witness(o);
        if (orc->parsed()) return cmd_oracle(o, oracle_kind);
        if (swp->parsed()) return cmd_sweep(o);
    } catch (const vlll::cap_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const vlll::no_convergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
