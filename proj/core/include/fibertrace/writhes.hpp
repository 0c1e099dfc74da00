#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fibertrace/diagram.hpp"
#include "fibertrace/embedding.hpp"
#include "fibertrace/events.hpp"
#include "fibertrace/trace_graph.hpp"

namespace fibertrace {

// Which secant of a parallel pair is drawn over the other. The offset of an oriented
// secant from p to q is cross(p, q - p) / |q - p|, so reversing the secant negates it.
enum class OverRule { SmallerOffset, LargerOffset };

// Calibrated once so that the closure of (s1 s3 s2)^2 S3 S2 S3 has W_c(1) > 0, then frozen.
inline constexpr OverRule kOverRule = OverRule::LargerOffset;

OverRule flipped(OverRule rule);

struct TorusCrossing {
    int sector = 0;
    int half = 0;
    QuadSurd phi;
    OrderedPair over;
    OrderedPair under;
    int over_arc = -1;
    int under_arc = -1;
    int sign = 0;
    Marking over_marking;
    Marking under_marking;
};

// Two crossings per parallel event: the pair of parallel secants and its tau + pi image.
std::vector<TorusCrossing> torus_crossings(const AnnularDiagram& diagram, const Embedding& embedding,
                                           const EventSet& events, const TraceGraph& graph, OverRule rule = kOverRule);

struct WritheTable {
    int m = 0;
    std::map<std::pair<long, long>, long> W_u;  // a < b
    std::map<std::pair<long, long>, long> W_o;
    std::map<long, long> W_c;

    friend bool operator==(const WritheTable&, const WritheTable&) = default;
};

WritheTable writhe_table(int m, const std::vector<TorusCrossing>& crossings);

struct BoundReport {
    int m = 0;
    Rational bound_u;
    Rational bound_c;
    std::optional<Rational> bound_o;
    long ceil_u = 0;
    long ceil_c = 0;
    std::optional<long> ceil_o;
    // Readings of bound_c, a bound on fqs + fes/6.
    long fqs_without_extreme_secants = 0;
    long fes_without_quadrisecants = 0;
    std::optional<bool> bound_o_at_least_bound_u;
};

BoundReport theorem_bounds(const WritheTable& a, const WritheTable& b, bool closed_braids);

long ceil_of(const Rational& q);

}  // namespace fibertrace
