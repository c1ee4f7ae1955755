#pragma once
#include <string>

#include <json.hpp>

#include "vlll/bigraph.hpp"
#include "vlll/cylinder.hpp"
#include "vlll/discrete_program.hpp"
#include "vlll/gap_engine.hpp"
#include "vlll/shearer.hpp"
#include "vlll/tree_boundary.hpp"

namespace vlll {

// External formats are 1-based; conversion happens here only.
using Json = nlohmann::ordered_json;

Json to_json(const DependencyGraph& g);
DependencyGraph graph_from_json(const Json& j);

Json to_json(const Bigraph& h);
Bigraph bigraph_from_json(const Json& j);

Json to_json(const DiscreteCylinderSet& s, const Bigraph& h);
DiscreteCylinderSet cylinder_from_json(const Json& j);

Json to_json(const BoundaryResult& r);
BoundaryResult boundary_from_json(const Json& j);

Json to_json(const BoxWitness& w);
BoxWitness box_witness_from_json(const Json& j);

Json to_json(const GapVerdict& v);
GapVerdict verdict_from_json(const Json& j);

Json to_json(const CylinderEval& e);

// Shortest decimal string that round-trips the double.
std::string format_double(double x);

// Serializer with floats at 12 significant digits.
std::string dump_json(const Json& j, int indent = 2);

// "0.25,0.25,0.25" (commas and/or spaces) -> vector
ProbVec parse_vector(const std::string& text);

} // namespace vlll
