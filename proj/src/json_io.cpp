#include "vlll/json_io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace vlll {

Json to_json(const DependencyGraph& g) {
    Json j;
    j["vertices"] = g.n;
    j["edges"] = Json::array();
    for (auto [u, v] : g.edges) j["edges"].push_back({u + 1, v + 1});
    return j;
}

DependencyGraph graph_from_json(const Json& j) {
    int n = j.at("vertices").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges"))
        edges.push_back({e.at(0).get<int>() - 1, e.at(1).get<int>() - 1});
    return DependencyGraph::make(n, std::move(edges));
}

Json to_json(const Bigraph& h) {
    Json j;
    j["events"] = h.n_events;
    j["variables"] = h.n_variables;
    j["edges"] = Json::array();
    for (auto [i, v] : h.edges) j["edges"].push_back({i + 1, v + 1});
    return j;
}

Bigraph bigraph_from_json(const Json& j) {
    int n = j.at("events").get<int>();
    int m = j.at("variables").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges"))
        edges.push_back({e.at(0).get<int>() - 1, e.at(1).get<int>() - 1});
    return Bigraph::make(n, m, std::move(edges));
}

Json to_json(const DiscreteCylinderSet& s, const Bigraph& h) {
    Json j;
    j["partitions"] = s.partitions;
    j["indicators"] = Json::array();
    for (int i = 0; i < h.n_events; ++i) {
        Json ind;
        ind["event"] = i + 1;
        Json shape = Json::array();
        for (int v : h.event_nbrs[i]) shape.push_back(s.partitions[v].size());
        ind["shape"] = std::move(shape);
        Json cells = Json::array();
        for (auto c : s.indicators[i]) cells.push_back(static_cast<int>(c));
        ind["cells"] = std::move(cells);
        j["indicators"].push_back(std::move(ind));
    }
    return j;
}

DiscreteCylinderSet cylinder_from_json(const Json& j) {
    DiscreteCylinderSet s;
    for (const auto& p : j.at("partitions")) s.partitions.push_back(p.get<std::vector<double>>());
    std::size_t n = j.at("indicators").size();
    s.indicators.assign(n, {});
    for (const auto& ind : j.at("indicators")) {
        int event = ind.at("event").get<int>() - 1;
        if (event < 0 || event >= static_cast<int>(n))
            throw std::invalid_argument("indicator event index out of range");
        std::vector<std::uint8_t> cells;
        for (const auto& c : ind.at("cells")) cells.push_back(c.get<int>() ? 1 : 0);
        s.indicators[static_cast<std::size_t>(event)] = std::move(cells);
    }
    return s;
}

Json to_json(const BoundaryResult& r) {
    Json j;
    j["direction"] = r.direction;
    j["lambda"] = r.lambda;
    j["boundary_vector"] = r.boundary_vector;
    j["method"] = r.method;
    j["residual"] = r.residual;
    if (r.rotation >= 0) j["rotation"] = r.rotation + 1;
    return j;
}

BoundaryResult boundary_from_json(const Json& j) {
    BoundaryResult r;
    r.direction = j.at("direction").get<ProbVec>();
    r.lambda = j.at("lambda").get<double>();
    r.boundary_vector = j.at("boundary_vector").get<ProbVec>();
    r.method = j.at("method").get<std::string>();
    r.residual = j.at("residual").get<double>();
    if (j.contains("rotation")) r.rotation = j.at("rotation").get<int>() - 1;
    return r;
}

Json to_json(const BoxWitness& w) {
    Json j;
    j["events"] = w.n_events;
    j["variables"] = w.n_variables;
    j["boxes"] = Json::array();
    for (int i = 0; i < w.n_events; ++i) {
        Json boxes = Json::array();
        for (const auto& box : w.event_boxes[i]) {
            Json b = Json::array();
            for (std::size_t k = 0; k < box.vars.size(); ++k) {
                Json iv;
                iv["var"] = box.vars[k] + 1;
                iv["lo"] = format_double(box.intervals[k].first);
                iv["hi"] = format_double(box.intervals[k].second);
                b.push_back(std::move(iv));
            }
            boxes.push_back(std::move(b));
        }
        j["boxes"].push_back(std::move(boxes));
    }
    return j;
}

BoxWitness box_witness_from_json(const Json& j) {
    BoxWitness w;
    w.n_events = j.at("events").get<int>();
    w.n_variables = j.at("variables").get<int>();
    w.event_boxes.assign(static_cast<std::size_t>(w.n_events), {});
    int i = 0;
    for (const auto& boxes : j.at("boxes")) {
        for (const auto& b : boxes) {
            Box box;
            for (const auto& iv : b) {
                box.vars.push_back(iv.at("var").get<int>() - 1);
                box.intervals.push_back({std::stod(iv.at("lo").get<std::string>()),
                                         std::stod(iv.at("hi").get<std::string>())});
            }
            w.event_boxes[static_cast<std::size_t>(i)].push_back(std::move(box));
        }
        ++i;
    }
    return w;
}

Json to_json(const GapVerdict& v) {
    Json j;
    j["status"] = v.status == GapStatus::Gapful    ? "gapful"
                  : v.status == GapStatus::Gapless ? "gapless"
                                                   : "unknown";
    j["trace"] = Json::array();
    for (const auto& step : v.trace) {
        Json s;
        s["rule"] = step.rule;
        s["tag"] = step.tag;
        s["params"] = step.params;
        j["trace"].push_back(std::move(s));
    }
    return j;
}

GapVerdict verdict_from_json(const Json& j) {
    GapVerdict v;
    auto status = j.at("status").get<std::string>();
    v.status = status == "gapful"    ? GapStatus::Gapful
               : status == "gapless" ? GapStatus::Gapless
                                     : GapStatus::Unknown;
    for (const auto& s : j.at("trace")) {
        TraceStep step;
        step.rule = s.at("rule").get<std::string>();
        step.tag = s.at("tag").get<std::string>();
        step.params = s.at("params").get<std::vector<std::string>>();
        v.trace.push_back(std::move(step));
    }
    return v;
}

Json to_json(const CylinderEval& e) {
    Json j;
    j["measures"] = e.measures;
    j["union"] = e.union_measure;
    j["exclusive"] = e.exclusive;
    j["max_adjacent_overlap"] = e.max_adjacent_overlap;
    return j;
}

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

void dump_rec(const Json& j, std::string& out, int indent, int depth) {
    auto pad = [&](int d) { out.append(static_cast<std::size_t>(indent * d), ' '); };
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) { out += "{}"; return; }
        out += "{\n";
        std::size_t k = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++k) {
            pad(depth + 1);
            out += Json(it.key()).dump();
            out += ": ";
            dump_rec(it.value(), out, indent, depth + 1);
            if (k + 1 < j.size()) out += ',';
            out += '\n';
        }
        pad(depth);
        out += '}';
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) { out += "[]"; return; }
        bool scalars = true;
        for (const auto& e : j) scalars = scalars && !e.is_structured();
        if (scalars) {
            out += '[';
            for (std::size_t k = 0; k < j.size(); ++k) {
                if (k) out += ", ";
                dump_rec(j[k], out, indent, depth);
            }
            out += ']';
            return;
        }
        out += "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
            pad(depth + 1);
            dump_rec(j[k], out, indent, depth + 1);
            if (k + 1 < j.size()) out += ',';
            out += '\n';
        }
        pad(depth);
        out += ']';
        return;
    }
    case Json::value_t::number_float: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", j.get<double>());
        out += buf;
        return;
    }
    default:
        out += j.dump();
        return;
    }
}

} // namespace

std::string dump_json(const Json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    return out;
}

ProbVec parse_vector(const std::string& text) {
    ProbVec v;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        std::stringstream ts(token);
        double x;
        while (ts >> x) v.push_back(x);
        if (!ts.eof()) throw std::invalid_argument("cannot parse vector entry: " + token);
    }
    if (v.empty()) throw std::invalid_argument("empty vector");
    return v;
}

} // namespace vlll
