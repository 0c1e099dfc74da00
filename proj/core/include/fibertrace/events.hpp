#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibertrace/diagram.hpp"
#include "fibertrace/embedding.hpp"
#include "fibertrace/exact.hpp"

namespace fibertrace {

// Chord v = P_q - P_p of an ordered piece pair on one half of a sector.
struct ChordFunction {
    int sector = 0;
    int half = 0;
    int p = 0;
    int q = 0;
    Affine2 v;

    Rational lo() const { return half_lo(sector, half); }
    Rational hi() const { return half_hi(sector, half); }
    // Sign of d(tau)/d(phi) on this half; 0 when the direction is constant.
    int angular_sign() const { return sign(cross(v.a, v.b)); }
};

ChordFunction chord(const Embedding& embedding, int sector, int half, int p, int q);

// Direction of the chord at phi; tau is its angle to the positive x-axis.
Vec2 tau_of(const ChordFunction& chord, const Rational& phi);
// Exact circular order of directions by angle in [0, 2 pi).
int compare_direction(const Vec2& a, const Vec2& b);
// Squared distance from the origin to the line through p and q.
Rational rho_of(const Vec2& p, const Vec2& q);

enum class EventKind { Collinear, Parallel, TangentBreak, Cusp };

std::string event_kind_name(EventKind kind);

struct Event {
    EventKind kind = EventKind::Collinear;
    int sector = 0;
    int half = 0;
    QuadSurd phi;
    Poly2 poly;  // defining polynomial of phi
    // Collinear: {p,q,s} ascending. Parallel: {p,q,k,l} with p<q, k<l, (p,q)<(k,l).
    // TangentBreak: ordered pair before the break along its chain. Cusp: ordered pair.
    std::vector<int> strands;

    std::pair<Rational, Rational> isolating_interval() const;
};

bool event_less(const Event& a, const Event& b);

std::vector<Event> collinear_events(const AnnularDiagram& diagram, const Embedding& embedding, int sector);
std::vector<Event> parallel_events(const AnnularDiagram& diagram, const Embedding& embedding, int sector);
// Two per extremum: the ordered pairs (a,b) and (b,a) of the merging strands.
std::vector<Event> cusp_events(const AnnularDiagram& diagram, int sector);

// One half-sector stretch of an ordered pair's chord curve, traversed toward +phi when dir = +1.
struct ChainRun {
    int sector = 0;
    int half = 0;
    int p = 0;
    int q = 0;
    int dir = 1;
};

// Continuation of an ordered pair across sectors, caps and cups.
struct PairChain {
    std::vector<ChainRun> runs;
    bool closed = false;
};

std::vector<PairChain> pair_chains(const AnnularDiagram& diagram);

// Sign of tau' along the chain parameter per run, zero runs filled from their nearest nonzero neighbours.
std::vector<int> chain_tau_signs(const Embedding& embedding, const PairChain& chain);

struct TangentBreakSite {
    int chain = 0;
    int run = 0;  // the break lies between runs[run-1] and runs[run] (cyclically for closed chains)
    Event event;
};

std::vector<TangentBreakSite> tangent_breaks(const Embedding& embedding, const std::vector<PairChain>& chains);

struct EventSet {
    std::vector<Event> collinear;
    std::vector<Event> parallel;
    std::vector<Event> cusps;
    std::vector<PairChain> chains;
    std::vector<TangentBreakSite> tangents;
};

EventSet enumerate_events(const AnnularDiagram& diagram, const Embedding& embedding);

// Boundary point phi of a run where the chain leaves it.
Rational run_exit(const ChainRun& run);
Rational run_entry(const ChainRun& run);

}  // namespace fibertrace
