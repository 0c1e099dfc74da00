#include "fibertrace/trace_graph.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <set>

#include "fibertrace/errors.hpp"

namespace fibertrace {

std::string vertex_kind_name(VertexKind kind) {
    switch (kind) {
        case VertexKind::Triple: return "triple";
        case VertexKind::Tangent: return "tangent";
        case VertexKind::Hanging: return "hanging";
    }
    return "unknown";
}

double TraceArc::phi_lo() const {
    double v = runs.front().lo().to_double();
    for (const auto& r : runs) v = std::min(v, r.lo().to_double());
    return v;
}

double TraceArc::phi_hi() const {
    double v = runs.front().hi().to_double();
    for (const auto& r : runs) v = std::max(v, r.hi().to_double());
    return v;
}

int TraceGraph::count(VertexKind kind) const {
    return static_cast<int>(std::count_if(vertices.begin(), vertices.end(), [&](const TraceVertex& v) { return v.kind == kind; }));
}

void TraceGraph::index_runs() {
    run_index_.clear();
    for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
        for (const auto& r : arcs[static_cast<std::size_t>(a)].runs) {
            run_index_[{r.sector, r.half, r.p, r.q}].push_back({r.lo(), r.hi(), a});
        }
    }
}

int TraceGraph::arc_at(int sector, int half, int p, int q, const QuadSurd& phi) const {
    auto it = run_index_.find({sector, half, p, q});
    if (it == run_index_.end()) return -1;
    for (const auto& ref : it->second) {
        if (ref.lo <= phi && phi <= ref.hi) return ref.arc;
    }
    return -1;
}

int knot_sign_at(const AnnularDiagram& diagram, const Embedding& embedding, int sector, int half, int p, int q) {
    const Sector& s = diagram.sector(sector);
    Affine2 mp = embedding.motion(sector, half, p);
    Affine2 mq = embedding.motion(sector, half, q);
    Rational mid = (half_lo(sector, half) + half_hi(sector, half)) / 2;
    Vec2 w = mq.at(mid) - mp.at(mid);
    Rational ep(s.pieces.at(static_cast<std::size_t>(p)).direction);
    Rational eq(s.pieces.at(static_cast<std::size_t>(q)).direction);
    // rows: w = (wx, wr, 0), t_q = eq (x', r', 1), t_p = ep (x', r', 1)
    Rational bx = eq * mq.b.x, by = eq * mq.b.y, bz = eq;
    Rational cx = ep * mp.b.x, cy = ep * mp.b.y, cz = ep;
    Rational det = w.x * (by * cz - bz * cy) - w.y * (bx * cz - bz * cx);
    return sign(det);
}

int knot_sign(const TraceArc& arc) { return arc.knot_sign; }

namespace {

struct Point {
    int vertex;
    int run;
    QuadSurd phi;
};

using RunKey = std::tuple<int, int, int, int>;

[[noreturn]] void mismatch(const std::string& what) { throw Error(ErrorKind::AssemblyMismatch, what); }

// Points u, v, w of a collinear event in the order they appear along their common line.
std::array<int, 3> line_order(const Embedding& embedding, const Event& e) {
    int a = e.strands[0], b = e.strands[1], c = e.strands[2];
    Affine2 pa = embedding.motion(e.sector, e.half, a);
    Affine2 pb = embedding.motion(e.sector, e.half, b);
    Affine2 pc = embedding.motion(e.sector, e.half, c);
    Affine2 v = pb - pa;
    if (e.phi.eval(dot(pc - pa, v)).sign() < 0) return {c, a, b};
    if (e.phi.eval(dot(pc - pb, v)).sign() > 0) return {a, b, c};
    return {a, c, b};
}

}  // namespace

TraceGraph assemble(const AnnularDiagram& diagram, const Embedding& embedding, const EventSet& events) {
    TraceGraph g;
    g.m = diagram.m();

    std::map<RunKey, std::vector<std::pair<QuadSurd, int>>> triple_at;
    for (const auto& e : events.collinear) {
        auto [u, v, w] = line_order(embedding, e);
        for (const auto& pairs : {std::vector<OrderedPair>{{u, v}, {v, w}, {u, w}}, std::vector<OrderedPair>{{w, v}, {v, u}, {w, u}}}) {
            int id = static_cast<int>(g.vertices.size());
            g.vertices.push_back({VertexKind::Triple, e.sector, e.half, e.phi, pairs});
            for (const auto& pr : pairs) triple_at[{e.sector, e.half, pr.p, pr.q}].emplace_back(e.phi, id);
        }
    }
    std::map<std::tuple<int, int, int>, int> hanging_at;
    for (const auto& e : events.cusps) {
        int id = static_cast<int>(g.vertices.size());
        g.vertices.push_back({VertexKind::Hanging, e.sector, e.half, e.phi, {{e.strands[0], e.strands[1]}}});
        hanging_at[{e.sector, e.strands[0], e.strands[1]}] = id;
    }
    std::map<std::pair<int, int>, int> tangent_at;
    for (const auto& site : events.tangents) {
        int id = static_cast<int>(g.vertices.size());
        const auto& e = site.event;
        g.vertices.push_back({VertexKind::Tangent, e.sector, e.half, e.phi, {{e.strands[0], e.strands[1]}}});
        tangent_at[{site.chain, site.run}] = id;
    }

    // deterministic trace numbering by the smallest (sector, half, pair) a chain visits
    std::vector<int> order(events.chains.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<RunKey> chain_key;
    for (const auto& chain : events.chains) {
        RunKey key{INT32_MAX, 0, 0, 0};
        for (const auto& r : chain.runs) key = std::min(key, RunKey{r.sector, r.half, r.p, r.q});
        chain_key.push_back(key);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) { return chain_key[static_cast<std::size_t>(a)] < chain_key[static_cast<std::size_t>(b)]; });

    for (int trace_id = 0; trace_id < static_cast<int>(order.size()); ++trace_id) {
        const int c = order[static_cast<std::size_t>(trace_id)];
        const PairChain& chain = events.chains[static_cast<std::size_t>(c)];
        const auto& runs = chain.runs;
        const int n = static_cast<int>(runs.size());
        const auto tau = chain_tau_signs(embedding, chain);

        std::vector<Point> points;
        if (!chain.closed) {
            auto it = hanging_at.find({runs.front().sector, runs.front().p, runs.front().q});
            if (it == hanging_at.end()) mismatch("open trace does not start at a hanging vertex");
            points.push_back({it->second, 0, QuadSurd(run_entry(runs.front()))});
        }
        for (int i = 0; i < n; ++i) {
            const auto& r = runs[static_cast<std::size_t>(i)];
            if (auto t = tangent_at.find({c, i}); t != tangent_at.end()) points.push_back({t->second, i, QuadSurd(run_entry(r))});
            auto it = triple_at.find({r.sector, r.half, r.p, r.q});
            if (it == triple_at.end()) continue;
            auto inside = it->second;
            std::sort(inside.begin(), inside.end(), [&](const auto& x, const auto& y) { return r.dir * compare(x.first, y.first) < 0; });
            for (const auto& [phi, id] : inside) points.push_back({id, i, phi});
        }
        if (!chain.closed) {
            auto it = hanging_at.find({runs.back().sector, runs.back().p, runs.back().q});
            if (it == hanging_at.end()) mismatch("open trace does not end at a hanging vertex");
            points.push_back({it->second, n - 1, QuadSurd(run_exit(runs.back()))});
        }

        Trace trace;
        trace.id = trace_id;
        trace.closed = chain.closed;

        auto make_arc = [&](const Point* a, const Point* b, bool wrap) {
            TraceArc arc;
            arc.trace = trace_id;
            arc.start_vertex = a ? a->vertex : -1;
            arc.end_vertex = b ? b->vertex : -1;
            std::vector<int> seq;
            std::vector<int> used;
            int first = a ? a->run : 0;
            int last = b ? b->run : n - 1;
            if (!wrap) {
                for (int i = first; i <= last; ++i) seq.push_back(i);
            } else {
                for (int i = first; i < n; ++i) seq.push_back(i);
                for (int i = 0; i <= last; ++i) seq.push_back(i);
            }
            for (std::size_t t = 0; t < seq.size(); ++t) {
                const auto& r = runs[static_cast<std::size_t>(seq[t])];
                QuadSurd from = (t == 0 && a) ? a->phi : QuadSurd(run_entry(r));
                QuadSurd to = (t + 1 == seq.size() && b) ? b->phi : QuadSurd(run_exit(r));
                if (from == to) continue;
                arc.runs.push_back({r.sector, r.half, r.p, r.q, r.dir, from, to});
                used.push_back(seq[t]);
            }
            if (arc.runs.empty()) mismatch("empty arc between consecutive vertices");

            std::optional<int> ks;
            std::optional<int> orient;
            std::optional<long> wind;
            for (int i : used) {
                const auto& r = runs[static_cast<std::size_t>(i)];
                const Sector& s = diagram.sector(r.sector);
                int f = tau[static_cast<std::size_t>(i)];
                int k = knot_sign_at(diagram, embedding, r.sector, r.half, r.p, r.q);
                if (k == 0) {
                    k = s.pieces[static_cast<std::size_t>(r.p)].direction * s.pieces[static_cast<std::size_t>(r.q)].direction * f * r.dir;
                }
                if (ks && *ks != k) throw Error(ErrorKind::InvariantViolation, "knot sign changes inside an arc");
                ks = k;
                if (orient && *orient != k * f) throw Error(ErrorKind::OrientationClash, "orientation changes inside an arc");
                orient = k * f;
                Marking mk = crossing_marking(diagram, r.sector, r.p, r.q);
                if (wind && *wind != mk.winding) throw Error(ErrorKind::InvariantViolation, "marking changes inside an arc");
                wind = mk.winding;
                arc.marking = mk;
            }
            arc.knot_sign = *ks;
            arc.orientation = *orient;
            trace.arcs.push_back(static_cast<int>(g.arcs.size()));
            g.arcs.push_back(std::move(arc));
        };

        if (!chain.closed) {
            for (std::size_t j = 0; j + 1 < points.size(); ++j) make_arc(&points[j], &points[j + 1], false);
        } else if (points.empty()) {
            make_arc(nullptr, nullptr, false);
        } else {
            for (std::size_t j = 0; j < points.size(); ++j) {
                bool wrap = j + 1 == points.size();
                make_arc(&points[j], &points[wrap ? 0 : j + 1], wrap);
            }
        }
        trace.marking = g.arcs[static_cast<std::size_t>(trace.arcs.front())].marking;
        trace.orientation = g.arcs[static_cast<std::size_t>(trace.arcs.front())].orientation;
        g.traces.push_back(std::move(trace));
    }

    // every vertex must receive exactly its degree in arc ends
    std::vector<int> ends(g.vertices.size(), 0);
    for (const auto& arc : g.arcs) {
        if (arc.start_vertex >= 0) ++ends[static_cast<std::size_t>(arc.start_vertex)];
        if (arc.end_vertex >= 0) ++ends[static_cast<std::size_t>(arc.end_vertex)];
    }
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        int want = g.vertices[v].kind == VertexKind::Triple ? 6 : (g.vertices[v].kind == VertexKind::Tangent ? 2 : 1);
        if (ends[v] != want) {
            mismatch(vertex_kind_name(g.vertices[v].kind) + " vertex in sector " + std::to_string(g.vertices[v].sector) +
                     " has " + std::to_string(ends[v]) + " arc ends, expected " + std::to_string(want));
        }
    }

    // canonical vertex order: sector, phi, kind, pairs
    std::vector<int> perm(g.vertices.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        const auto& x = g.vertices[static_cast<std::size_t>(a)];
        const auto& y = g.vertices[static_cast<std::size_t>(b)];
        if (x.sector != y.sector) return x.sector < y.sector;
        if (int cmp = compare(x.phi, y.phi); cmp != 0) return cmp < 0;
        if (x.kind != y.kind) return x.kind < y.kind;
        return x.pairs < y.pairs;
    });
    std::vector<int> rank(perm.size());
    std::vector<TraceVertex> sorted;
    sorted.reserve(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        rank[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
        sorted.push_back(g.vertices[static_cast<std::size_t>(perm[i])]);
    }
    g.vertices = std::move(sorted);
    for (auto& arc : g.arcs) {
        if (arc.start_vertex >= 0) arc.start_vertex = rank[static_cast<std::size_t>(arc.start_vertex)];
        if (arc.end_vertex >= 0) arc.end_vertex = rank[static_cast<std::size_t>(arc.end_vertex)];
    }
    g.index_runs();
    decompose_traces(g);
    return g;
}

std::vector<Trace> decompose_traces(const TraceGraph& graph) {
    for (const auto& trace : graph.traces) {
        const auto& ids = trace.arcs;
        for (std::size_t j = 0; j < ids.size(); ++j) {
            const auto& arc = graph.arcs[static_cast<std::size_t>(ids[j])];
            if (arc.orientation != trace.orientation) {
                throw Error(ErrorKind::OrientationClash, "trace " + std::to_string(trace.id) + " changes orientation at a " +
                                                             (arc.start_vertex >= 0 ? vertex_kind_name(graph.vertices[static_cast<std::size_t>(arc.start_vertex)].kind) : std::string("loop")) +
                                                             " vertex");
            }
            if (arc.marking.winding != trace.marking.winding) {
                throw Error(ErrorKind::InvariantViolation, "marking changes along trace " + std::to_string(trace.id));
            }
            bool last = j + 1 == ids.size();
            if (last && !trace.closed) continue;
            const auto& next = graph.arcs[static_cast<std::size_t>(ids[last ? 0 : j + 1])];
            if (arc.end_vertex != next.start_vertex) {
                throw Error(ErrorKind::AssemblyMismatch, "arcs of trace " + std::to_string(trace.id) + " do not chain");
            }
        }
    }
    return graph.traces;
}

namespace {

// Rational point strictly inside a run.
Rational interior_point(const ArcRun& r) {
    Rational lo = r.lo().is_rational() ? r.lo().a() : r.lo().isolate(Rational(1, 1 << 30)).second;
    Rational hi = r.hi().is_rational() ? r.hi().a() : r.hi().isolate(Rational(1, 1 << 30)).first;
    return (lo + hi) / 2;
}

}  // namespace

SymmetryReport verify_symmetry(const AnnularDiagram& diagram, const Embedding& embedding, const TraceGraph& graph) {
    SymmetryReport report;
    auto fail = [&](const std::string& what) {
        report.ok = false;
        report.issues.push_back(what);
    };
    struct Key {
        int sector, half, p, q;
        QuadSurd lo;
        bool operator<(const Key& o) const {
            if (std::tie(sector, half, p, q) != std::tie(o.sector, o.half, o.p, o.q)) {
                return std::tie(sector, half, p, q) < std::tie(o.sector, o.half, o.p, o.q);
            }
            return compare(lo, o.lo) < 0;
        }
    };
    std::map<Key, int> by_run;
    for (int a = 0; a < static_cast<int>(graph.arcs.size()); ++a) {
        for (const auto& r : graph.arcs[static_cast<std::size_t>(a)].runs) by_run[{r.sector, r.half, r.p, r.q, r.lo()}] = a;
    }
    std::set<std::pair<long, long>> pairs;
    for (int a = 0; a < static_cast<int>(graph.arcs.size()); ++a) {
        const auto& arc = graph.arcs[static_cast<std::size_t>(a)];
        int image = -1;
        for (const auto& r : arc.runs) {
            auto it = by_run.find({r.sector, r.half, r.q, r.p, r.lo()});
            if (it == by_run.end()) {
                fail("arc " + std::to_string(a) + " has no mirrored run");
                image = -2;
                break;
            }
            if (image == -1) image = it->second;
            if (image != it->second) {
                fail("arc " + std::to_string(a) + " mirrors onto several arcs");
                image = -2;
                break;
            }
            const auto& mirrored_runs = graph.arcs[static_cast<std::size_t>(it->second)].runs;
            bool same_hi = std::any_of(mirrored_runs.begin(), mirrored_runs.end(), [&](const ArcRun& o) {
                return o.sector == r.sector && o.half == r.half && o.lo() == r.lo() && o.hi() == r.hi();
            });
            if (!same_hi) fail("arc " + std::to_string(a) + " mirrors onto a different phi-interval");
            Rational t = interior_point(r);
            Affine2 mp = embedding.motion(r.sector, r.half, r.p);
            Affine2 mq = embedding.motion(r.sector, r.half, r.q);
            if (rho_of(mp.at(t), mq.at(t)) != rho_of(mq.at(t), mp.at(t))) fail("rho differs on mirrored arcs");
        }
        if (image < 0) continue;
        if (image == a) fail("arc " + std::to_string(a) + " is its own mirror");
        const auto& other = graph.arcs[static_cast<std::size_t>(image)];
        if (other.runs.size() != arc.runs.size()) fail("mirrored arcs differ in length");
        if (arc.marking.winding + other.marking.winding != diagram.m()) {
            fail("markings of arc " + std::to_string(a) + " and its mirror do not sum to m");
        }
        auto kinds = [&](const TraceArc& x) {
            std::multiset<int> out;
            for (int v : {x.start_vertex, x.end_vertex}) {
                if (v >= 0) out.insert(static_cast<int>(graph.vertices[static_cast<std::size_t>(v)].kind));
            }
            return out;
        };
        if (kinds(arc) != kinds(other)) fail("mirrored arcs end at different vertex kinds");
        pairs.insert({arc.marking.label(), other.marking.label()});
    }
    // vertices map to vertices of the same kind at the same phi with reversed pairs
    std::map<std::tuple<int, int, int, std::vector<OrderedPair>>, std::vector<QuadSurd>> vertex_sites;
    for (const auto& v : graph.vertices) {
        auto ps = v.pairs;
        std::sort(ps.begin(), ps.end());
        vertex_sites[{static_cast<int>(v.kind), v.sector, v.half, ps}].push_back(v.phi);
    }
    for (const auto& v : graph.vertices) {
        std::vector<OrderedPair> rev;
        for (const auto& pr : v.pairs) rev.push_back({pr.q, pr.p});
        std::sort(rev.begin(), rev.end());
        auto it = vertex_sites.find({static_cast<int>(v.kind), v.sector, v.half, rev});
        bool found = it != vertex_sites.end() &&
                     std::any_of(it->second.begin(), it->second.end(), [&](const QuadSurd& phi) { return phi == v.phi; });
        if (!found) fail(vertex_kind_name(v.kind) + " vertex in sector " + std::to_string(v.sector) + " has no mirror");
    }
    report.marking_pairs.assign(pairs.begin(), pairs.end());
    return report;
}

InvariantReport check_graph_invariants(const AnnularDiagram& diagram, const Embedding& embedding, const TraceGraph& graph) {
    InvariantReport report;
    auto violation = [&](const std::string& what) { report.violations.push_back(what); };
    const int mod = std::abs(graph.m);
    auto residue = [&](long w) {
        if (mod == 0) return w;
        long r = w % mod;
        return r < 0 ? r + mod : r;
    };

    // marking-sum rule at triple vertices: b = a + c for flanking (u,v), (v,w) and middle (u,w)
    for (const auto& v : graph.vertices) {
        if (v.kind != VertexKind::Triple) continue;
        auto mk = [&](const OrderedPair& pr) { return crossing_marking(diagram, v.sector, pr.p, pr.q).winding; };
        long a = mk(v.pairs[0]);
        long c = mk(v.pairs[1]);
        long b = mk(v.pairs[2]);
        if (residue(b) != residue(a + c)) {
            violation("marking-sum rule fails at a triple vertex in sector " + std::to_string(v.sector));
        }
    }
    for (const auto& trace : graph.traces) {
        for (int id : trace.arcs) {
            if (graph.arcs[static_cast<std::size_t>(id)].marking.winding != trace.marking.winding) {
                violation("marking not constant on trace " + std::to_string(trace.id));
            }
        }
        if (!trace.closed && residue(trace.marking.winding) != 0) {
            violation("open trace " + std::to_string(trace.id) + " is not marked [0]");
        }
        // knot sign keeps its value through triple vertices and switches at tangent vertices
        const auto& ids = trace.arcs;
        for (std::size_t j = 0; j < ids.size(); ++j) {
            bool last = j + 1 == ids.size();
            if (last && !trace.closed) break;
            const auto& arc = graph.arcs[static_cast<std::size_t>(ids[j])];
            const auto& next = graph.arcs[static_cast<std::size_t>(ids[last ? 0 : j + 1])];
            if (arc.end_vertex < 0) continue;
            const auto kind = graph.vertices[static_cast<std::size_t>(arc.end_vertex)].kind;
            bool switched = arc.knot_sign != next.knot_sign;
            if (kind == VertexKind::Tangent && !switched) violation("knot sign does not switch at a tangent vertex");
            if (kind == VertexKind::Triple && switched) violation("knot sign switches at a triple vertex");
        }
    }
    // the sign recomputed from the determinant agrees with the arc sign wherever tau moves
    for (const auto& arc : graph.arcs) {
        for (const auto& r : arc.runs) {
            int k = knot_sign_at(diagram, embedding, r.sector, r.half, r.p, r.q);
            if (k != 0 && k != arc.knot_sign) violation("arc sign disagrees with the determinant");
        }
    }
    auto sym = verify_symmetry(diagram, embedding, graph);
    for (const auto& issue : sym.issues) violation("symmetry: " + issue);
    return report;
}

}  // namespace fibertrace
