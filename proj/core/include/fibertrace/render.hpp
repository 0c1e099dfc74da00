#pragma once

#include <string>
#include <vector>

#include "fibertrace/embedding.hpp"
#include "fibertrace/trace_graph.hpp"
#include "fibertrace/writhes.hpp"

namespace fibertrace {

// Graphviz source: vertices as nodes, arcs as edges colored by marking.
std::string render_dot(const TraceGraph& graph);

// Projection of the trace graph to the (tau, phi) torus, drawn as a flat square.
std::string render_svg(const TraceGraph& graph, const Embedding& embedding, const std::vector<TorusCrossing>& crossings);

}  // namespace fibertrace
