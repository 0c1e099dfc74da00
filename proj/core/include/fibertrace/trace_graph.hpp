#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "fibertrace/diagram.hpp"
#include "fibertrace/embedding.hpp"
#include "fibertrace/events.hpp"

namespace fibertrace {

enum class VertexKind { Triple, Tangent, Hanging };

std::string vertex_kind_name(VertexKind kind);

struct OrderedPair {
    int p = 0;
    int q = 0;
    friend auto operator<=>(const OrderedPair&, const OrderedPair&) = default;
};

struct TraceVertex {
    VertexKind kind = VertexKind::Triple;
    int sector = 0;
    int half = 0;
    QuadSurd phi;
    // Triple: flanking pairs (u,v), (v,w) then the middle pair (u,w) for points u,v,w in line order.
    std::vector<OrderedPair> pairs;
};

// Part of an arc inside one half-sector, traversed from `from` to `to` in chain order.
struct ArcRun {
    int sector = 0;
    int half = 0;
    int p = 0;
    int q = 0;
    int dir = 1;
    QuadSurd from;
    QuadSurd to;

    QuadSurd lo() const { return dir > 0 ? from : to; }
    QuadSurd hi() const { return dir > 0 ? to : from; }
};

struct TraceArc {
    std::vector<ArcRun> runs;
    int start_vertex = -1;  // -1 only for a vertex-free closed trace
    int end_vertex = -1;
    int knot_sign = 0;
    int orientation = 1;  // +1 if the oriented traversal follows `runs` order
    Marking marking;
    int trace = -1;

    double phi_lo() const;
    double phi_hi() const;
};

struct Trace {
    int id = 0;
    bool closed = false;
    Marking marking;
    std::vector<int> arcs;  // in chain order
    int orientation = 1;
};

class TraceGraph {
public:
    int m = 0;
    std::vector<TraceVertex> vertices;
    std::vector<TraceArc> arcs;
    std::vector<Trace> traces;

    int count(VertexKind kind) const;
    // Arc containing the chord of (p,q) at phi in the given half-sector, or -1.
    int arc_at(int sector, int half, int p, int q, const QuadSurd& phi) const;
    void index_runs();

private:
    struct RunRef {
        QuadSurd lo;
        QuadSurd hi;
        int arc;
    };
    std::map<std::tuple<int, int, int, int>, std::vector<RunRef>> run_index_;
};

// Sign of the crossing (p over q) seen along the secant, from the exact determinant; 0 when tau is constant.
int knot_sign_at(const AnnularDiagram& diagram, const Embedding& embedding, int sector, int half, int p, int q);

TraceGraph assemble(const AnnularDiagram& diagram, const Embedding& embedding, const EventSet& events);

int knot_sign(const TraceArc& arc);

// Traces with their oriented arc lists; verifies the orientation along each trace.
std::vector<Trace> decompose_traces(const TraceGraph& graph);

struct SymmetryReport {
    bool ok = true;
    std::vector<std::string> issues;
    std::vector<std::pair<long, long>> marking_pairs;  // (a, image of a), label values
};

SymmetryReport verify_symmetry(const AnnularDiagram& diagram, const Embedding& embedding, const TraceGraph& graph);

struct InvariantReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Marking-sum rule, constant markings, [0] on open traces, sign switching, symmetry.
InvariantReport check_graph_invariants(const AnnularDiagram& diagram, const Embedding& embedding, const TraceGraph& graph);

}  // namespace fibertrace
