#pragma once

#include <optional>

#include "fibertrace/diagram.hpp"
#include "fibertrace/embedding.hpp"
#include "fibertrace/events.hpp"
#include "fibertrace/trace_graph.hpp"
#include "fibertrace/writhes.hpp"

namespace fibertrace {

struct Analysis {
    AnnularDiagram diagram;
    Embedding embedding;
    EventSet events;
    TraceGraph graph;
    std::vector<TorusCrossing> crossings;
    std::optional<WritheTable> table;  // empty when |m| = 1
};

// Generic embedding, events, trace graph, torus crossings and writhe table.
Analysis analyze(const AnnularDiagram& diagram, const EmbeddingConfig& config = {}, OverRule rule = kOverRule);

}  // namespace fibertrace
