#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibertrace/diagram.hpp"
#include "fibertrace/embedding.hpp"
#include "fibertrace/events.hpp"
#include "fibertrace/writhes.hpp"

namespace fibertrace {

struct SampledEvent {
    EventKind kind = EventKind::Collinear;
    int sector = 0;
    double phi = 0;
    std::vector<int> strands;
};

struct SampledCrossing {
    int sector = 0;
    double phi = 0;
    OrderedPair over;
    OrderedPair under;
    int sign = 0;
    long over_label = 0;
    long under_label = 0;
};

struct SampledSweep {
    int samples = 0;
    std::vector<SampledEvent> collinear;
    std::vector<SampledEvent> parallel;
    int tangent_breaks = 0;
    std::vector<SampledCrossing> crossings;
    std::optional<WritheTable> table;
    std::vector<std::string> warnings;  // ResolutionWarning and orientation notes
};

// Plain double-precision sweep of the embedded knot on a grid of `samples_per_sector` steps.
SampledSweep sampled_sweep(const AnnularDiagram& diagram, const Embedding& embedding, int samples_per_sector,
                           OverRule rule = kOverRule);
SampledSweep sampled_sweep(const AnnularDiagram& diagram, const EmbeddingConfig& config, int samples_per_sector,
                           OverRule rule = kOverRule);

struct QuadrisecantHit {
    int sector = 0;
    double phi = 0;
    std::vector<int> strands;
};

std::vector<QuadrisecantHit> quadrisecant_scan(const AnnularDiagram& diagram, const Embedding& embedding, int samples,
                                               double tolerance = 1e-9);

struct ExactResults {
    const EventSet* events = nullptr;
    const TraceGraph* graph = nullptr;
    const std::vector<TorusCrossing>* crossings = nullptr;
    const WritheTable* table = nullptr;  // may be null when |m| = 1
};

struct KindComparison {
    std::string kind;
    int exact = 0;
    int sampled = 0;
    int matched = 0;
    std::vector<std::string> unmatched;
};

struct ComparisonReport {
    std::vector<KindComparison> kinds;
    int sign_mismatches = 0;
    bool tables_equal = true;
    std::vector<std::string> warnings;
    bool full_match() const;
};

ComparisonReport compare(const ExactResults& exact, const SampledSweep& sampled, double tolerance);

}  // namespace fibertrace
