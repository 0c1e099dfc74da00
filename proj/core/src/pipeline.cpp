#include "fibertrace/pipeline.hpp"

#include <cstdlib>

namespace fibertrace {

Analysis analyze(const AnnularDiagram& diagram, const EmbeddingConfig& config, OverRule rule) {
    Analysis a{diagram, embed_generic(diagram, config), {}, {}, {}, std::nullopt};
    a.events = enumerate_events(a.diagram, a.embedding);
    a.graph = assemble(a.diagram, a.embedding, a.events);
    a.crossings = torus_crossings(a.diagram, a.embedding, a.events, a.graph, rule);
    if (std::abs(a.diagram.m()) != 1) a.table = writhe_table(a.diagram.m(), a.crossings);
    return a;
}

}  // namespace fibertrace
