#pragma once

#include <string>

#include "fibertrace/embedding.hpp"
#include "fibertrace/events.hpp"
#include "fibertrace/oracle.hpp"
#include "fibertrace/trace_graph.hpp"
#include "fibertrace/writhes.hpp"

namespace fibertrace {

// All emitters return pretty-printed JSON with a trailing newline and deterministic key order.
std::string config_json(const EmbeddingConfig& config);
std::string graph_json(const TraceGraph& graph, const EmbeddingConfig& config);
std::string writhe_json(const WritheTable& table, const EmbeddingConfig& config);
std::string bound_json(const BoundReport& report, const EmbeddingConfig& config);
std::string events_json(const EventSet& events, const EmbeddingConfig& config);
std::string genericity_json(const GenericityReport& report, const EmbeddingConfig& config);
std::string comparison_json(const ComparisonReport& report, const SampledSweep& sweep, const EmbeddingConfig& config);

}  // namespace fibertrace
