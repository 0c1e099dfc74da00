#include "fibertrace/events.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "fibertrace/errors.hpp"
#include "genericity_internal.hpp"

namespace fibertrace {

ChordFunction chord(const Embedding& embedding, int sector, int half, int p, int q) {
    return {sector, half, p, q, embedding.motion(sector, half, q) - embedding.motion(sector, half, p)};
}

Vec2 tau_of(const ChordFunction& chord, const Rational& phi) {
    Vec2 v = chord.v.at(phi);
    if (v.x == 0 && v.y == 0) {
        throw Error(ErrorKind::ZeroChord, "chord (" + std::to_string(chord.p) + "," + std::to_string(chord.q) +
                                              ") vanishes at phi = " + phi.get_str());
    }
    return v;
}

int compare_direction(const Vec2& a, const Vec2& b) {
    auto upper = [](const Vec2& v) { return v.y > 0 || (v.y == 0 && v.x > 0); };
    bool ua = upper(a);
    bool ub = upper(b);
    if (ua != ub) return ua ? -1 : 1;
    return -sign(cross(a, b));
}

Rational rho_of(const Vec2& p, const Vec2& q) {
    Rational c = cross(p, q);
    if (c == 0) throw Error(ErrorKind::OriginIncidence, "secant line passes through the origin");
    Vec2 v = q - p;
    return c * c / dot(v, v);
}

std::string event_kind_name(EventKind kind) {
    switch (kind) {
        case EventKind::Collinear: return "collinear";
        case EventKind::Parallel: return "parallel";
        case EventKind::TangentBreak: return "tangent";
        case EventKind::Cusp: return "cusp";
    }
    return "unknown";
}

std::pair<Rational, Rational> Event::isolating_interval() const { return phi.isolate(Rational(1, 1 << 20)); }

bool event_less(const Event& a, const Event& b) {
    if (a.sector != b.sector) return a.sector < b.sector;
    if (int c = compare(a.phi, b.phi); c != 0) return c < 0;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.strands < b.strands;
}

namespace detail {

DegeneracyError::DegeneracyError(std::string condition, int sector, Rational lo, Rational hi, const std::string& what)
    : Error(ErrorKind::Degeneracy, "(" + condition + ") sector " + std::to_string(sector) + " phi in [" + lo.get_str() +
                                       ", " + hi.get_str() + "]: " + what),
      condition_(std::move(condition)),
      sector_(sector),
      lo_(std::move(lo)),
      hi_(std::move(hi)),
      what_(what) {}

std::pair<int, int> cusp_pieces(const Sector& sector) {
    int a = -1;
    int b = -1;
    for (int j = 0; j < static_cast<int>(sector.pieces.size()); ++j) {
        const auto& p = sector.pieces[static_cast<std::size_t>(j)];
        bool cusp = (sector.token.kind == TokenKind::Cap && p.out_slot < 0) ||
                    (sector.token.kind == TokenKind::Cup && p.in_slot < 0);
        if (!cusp) continue;
        (a < 0 ? a : b) = j;
    }
    return {a, b};
}

bool cusp_boundary(const Sector& sector, int half, const QuadSurd& root, bool involves_cusp_pair) {
    if (!involves_cusp_pair) return false;
    if (sector.token.kind == TokenKind::Cap) return half == 1 && root == QuadSurd(half_hi(sector.index, 1));
    if (sector.token.kind == TokenKind::Cup) return half == 0 && root == QuadSurd(half_lo(sector.index, 0));
    return false;
}

void collect_roots(const Poly2& poly, const Sector& sector, int half, bool involves_cusp_pair, const std::string& label,
                   const std::function<void(const QuadSurd&)>& emit) {
    Rational lo = half_lo(sector.index, half);
    Rational hi = half_hi(sector.index, half);
    RootScan scan = scan_roots(poly, lo, hi);
    if (scan.identically_zero) throw DegeneracyError("b", sector.index, lo, hi, label + " vanishes identically");
    if (scan.multiple) throw DegeneracyError("b", sector.index, lo, hi, label + " has a multiple root");
    for (const auto& r : scan.at_boundary) {
        if (!cusp_boundary(sector, half, r, involves_cusp_pair)) {
            throw DegeneracyError("d", sector.index, lo, hi, label + " has a root at a piece boundary");
        }
    }
    for (const auto& r : scan.interior) emit(r);
}

}  // namespace detail

namespace {

std::string ids(std::initializer_list<int> list) {
    std::string out = "{";
    for (int v : list) out += (out.size() > 1 ? "," : "") + std::to_string(v);
    return out + "}";
}

}  // namespace

std::vector<Event> collinear_events(const AnnularDiagram& diagram, const Embedding& embedding, int sector) {
    const Sector& s = diagram.sector(sector);
    const int n = static_cast<int>(s.pieces.size());
    auto [ca, cb] = detail::cusp_pieces(s);
    std::vector<Event> events;
    for (int half = 0; half < 2; ++half) {
        std::vector<Affine2> pos;
        for (int j = 0; j < n; ++j) pos.push_back(embedding.motion(sector, half, j));
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                for (int r = q + 1; r < n; ++r) {
                    Poly2 f = cross(pos[static_cast<std::size_t>(q)] - pos[static_cast<std::size_t>(p)],
                                    pos[static_cast<std::size_t>(r)] - pos[static_cast<std::size_t>(p)]);
                    auto in = [&](int x) { return x == p || x == q || x == r; };
                    bool cusp = ca >= 0 && in(ca) && in(cb);
                    detail::collect_roots(f, s, half, cusp, "collinearity of " + ids({p, q, r}), [&](const QuadSurd& root) {
                        events.push_back({EventKind::Collinear, sector, half, root, f, {p, q, r}});
                    });
                }
            }
        }
    }
    std::sort(events.begin(), events.end(), event_less);
    return events;
}

std::vector<Event> parallel_events(const AnnularDiagram& diagram, const Embedding& embedding, int sector) {
    const Sector& s = diagram.sector(sector);
    const int n = static_cast<int>(s.pieces.size());
    auto [ca, cb] = detail::cusp_pieces(s);
    std::vector<Event> events;
    for (int half = 0; half < 2; ++half) {
        std::vector<Affine2> pos;
        for (int j = 0; j < n; ++j) pos.push_back(embedding.motion(sector, half, j));
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                Affine2 v1 = pos[static_cast<std::size_t>(q)] - pos[static_cast<std::size_t>(p)];
                for (int k = p; k < n; ++k) {
                    for (int l = k + 1; l < n; ++l) {
                        if (std::make_pair(k, l) <= std::make_pair(p, q)) continue;
                        if (k == p || k == q || l == p || l == q) continue;
                        Affine2 v2 = pos[static_cast<std::size_t>(l)] - pos[static_cast<std::size_t>(k)];
                        Poly2 g = cross(v1, v2);
                        bool cusp = ca >= 0 && ((p == ca && q == cb) || (k == ca && l == cb));
                        detail::collect_roots(g, s, half, cusp, "parallelism of " + ids({p, q}) + "," + ids({k, l}),
                                              [&](const QuadSurd& root) {
                                                  events.push_back({EventKind::Parallel, sector, half, root, g, {p, q, k, l}});
                                              });
                    }
                }
            }
        }
    }
    std::sort(events.begin(), events.end(), event_less);
    return events;
}

std::vector<Event> cusp_events(const AnnularDiagram& diagram, int sector) {
    const Sector& s = diagram.sector(sector);
    auto [a, b] = detail::cusp_pieces(s);
    if (a < 0) return {};
    int half = s.token.kind == TokenKind::Cap ? 1 : 0;
    Rational at = s.token.kind == TokenKind::Cap ? half_hi(sector, 1) : half_lo(sector, 0);
    Poly2 poly{-at, 1, 0};
    return {{EventKind::Cusp, sector, half, QuadSurd(at), poly, {a, b}},
            {EventKind::Cusp, sector, half, QuadSurd(at), poly, {b, a}}};
}

Rational run_entry(const ChainRun& run) { return run.dir > 0 ? half_lo(run.sector, run.half) : half_hi(run.sector, run.half); }
Rational run_exit(const ChainRun& run) { return run.dir > 0 ? half_hi(run.sector, run.half) : half_lo(run.sector, run.half); }

std::vector<PairChain> pair_chains(const AnnularDiagram& diagram) {
    const int n_sectors = diagram.sector_count();
    // piece lookup by slot at each sector's lower and upper fiber
    std::vector<std::vector<int>> in_piece(static_cast<std::size_t>(n_sectors));
    std::vector<std::vector<int>> out_piece(static_cast<std::size_t>(n_sectors));
    std::vector<int> offset(static_cast<std::size_t>(n_sectors) + 1, 0);
    for (int k = 0; k < n_sectors; ++k) {
        const Sector& s = diagram.sector(k);
        auto& ins = in_piece[static_cast<std::size_t>(k)];
        auto& outs = out_piece[static_cast<std::size_t>(k)];
        ins.assign(static_cast<std::size_t>(s.count_in), -1);
        outs.assign(static_cast<std::size_t>(s.count_out), -1);
        for (int j = 0; j < static_cast<int>(s.pieces.size()); ++j) {
            const auto& piece = s.pieces[static_cast<std::size_t>(j)];
            if (piece.in_slot >= 0) ins[static_cast<std::size_t>(piece.in_slot)] = j;
            if (piece.out_slot >= 0) outs[static_cast<std::size_t>(piece.out_slot)] = j;
        }
        int w = static_cast<int>(s.pieces.size());
        offset[static_cast<std::size_t>(k) + 1] = offset[static_cast<std::size_t>(k)] + w * w;
    }
    auto seg_id = [&](int k, int p, int q) {
        int w = static_cast<int>(diagram.sector(k).pieces.size());
        return offset[static_cast<std::size_t>(k)] + p * w + q;
    };

    struct State {
        int k, p, q, dir;
    };
    // Next state when leaving `st` through its exit end; nullopt at a cusp.
    auto step = [&](const State& st) -> std::optional<State> {
        const Sector& s = diagram.sector(st.k);
        const auto& pp = s.pieces[static_cast<std::size_t>(st.p)];
        const auto& pq = s.pieces[static_cast<std::size_t>(st.q)];
        int sp = st.dir > 0 ? pp.out_slot : pp.in_slot;
        int sq = st.dir > 0 ? pq.out_slot : pq.in_slot;
        if (sp >= 0 && sq >= 0) {
            int k2 = st.dir > 0 ? (st.k + 1) % n_sectors : (st.k + n_sectors - 1) % n_sectors;
            const auto& table = st.dir > 0 ? in_piece[static_cast<std::size_t>(k2)] : out_piece[static_cast<std::size_t>(k2)];
            return State{k2, table[static_cast<std::size_t>(sp)], table[static_cast<std::size_t>(sq)], st.dir};
        }
        if (sp < 0 && sq < 0) return std::nullopt;
        if (sp < 0) return State{st.k, s.partner(st.p), st.q, -st.dir};
        return State{st.k, st.p, s.partner(st.q), -st.dir};
    };

    std::vector<bool> seen(static_cast<std::size_t>(offset.back()), false);
    std::vector<PairChain> chains;
    for (int k = 0; k < n_sectors; ++k) {
        int w = static_cast<int>(diagram.sector(k).pieces.size());
        for (int p = 0; p < w; ++p) {
            for (int q = 0; q < w; ++q) {
                if (p == q || seen[static_cast<std::size_t>(seg_id(k, p, q))]) continue;
                State origin{k, p, q, 1};
                State cur{k, p, q, -1};
                bool closed = false;
                while (auto nxt = step(cur)) {
                    if (nxt->k == k && nxt->p == p && nxt->q == q) {
                        closed = true;
                        break;
                    }
                    cur = *nxt;
                }
                State start = closed ? origin : State{cur.k, cur.p, cur.q, -cur.dir};
                PairChain chain;
                chain.closed = closed;
                State st = start;
                while (true) {
                    seen[static_cast<std::size_t>(seg_id(st.k, st.p, st.q))] = true;
                    int first = st.dir > 0 ? 0 : 1;
                    chain.runs.push_back({st.k, first, st.p, st.q, st.dir});
                    chain.runs.push_back({st.k, 1 - first, st.p, st.q, st.dir});
                    auto nxt = step(st);
                    if (!nxt) break;
                    if (nxt->k == start.k && nxt->p == start.p && nxt->q == start.q && nxt->dir == start.dir) break;
                    st = *nxt;
                }
                chains.push_back(std::move(chain));
            }
        }
    }
    return chains;
}

std::vector<int> chain_tau_signs(const Embedding& embedding, const PairChain& chain) {
    const int n = static_cast<int>(chain.runs.size());
    std::vector<int> raw(static_cast<std::size_t>(n));
    std::vector<int> nonzero;
    for (int i = 0; i < n; ++i) {
        const auto& run = chain.runs[static_cast<std::size_t>(i)];
        raw[static_cast<std::size_t>(i)] = chord(embedding, run.sector, run.half, run.p, run.q).angular_sign() * run.dir;
        if (raw[static_cast<std::size_t>(i)] != 0) nonzero.push_back(i);
    }
    if (nonzero.empty()) {
        const auto& run = chain.runs.front();
        throw Error(ErrorKind::DegenerateTangent, "chord direction of pair (" + std::to_string(run.p) + "," +
                                                      std::to_string(run.q) + ") from sector " +
                                                      std::to_string(run.sector) + " never turns");
    }
    std::vector<int> filled = raw;
    auto fill_block = [&](int first, int length, int before, int after) {
        int take_before = (length + 1) / 2;
        for (int j = 0; j < length; ++j) {
            int idx = (first + j) % n;
            filled[static_cast<std::size_t>(idx)] = j < take_before ? before : after;
        }
    };
    const int z = static_cast<int>(nonzero.size());
    for (int t = 0; t + 1 < z; ++t) {
        int a = nonzero[static_cast<std::size_t>(t)];
        int b = nonzero[static_cast<std::size_t>(t + 1)];
        fill_block(a + 1, b - a - 1, raw[static_cast<std::size_t>(a)], raw[static_cast<std::size_t>(b)]);
    }
    int first = nonzero.front();
    int last = nonzero.back();
    if (chain.closed) {
        fill_block(last + 1, n - 1 - last + first, raw[static_cast<std::size_t>(last)], raw[static_cast<std::size_t>(first)]);
    } else {
        for (int i = 0; i < first; ++i) filled[static_cast<std::size_t>(i)] = raw[static_cast<std::size_t>(first)];
        for (int i = last + 1; i < n; ++i) filled[static_cast<std::size_t>(i)] = raw[static_cast<std::size_t>(last)];
    }
    return filled;
}

std::vector<TangentBreakSite> tangent_breaks(const Embedding& embedding, const std::vector<PairChain>& chains) {
    std::vector<TangentBreakSite> sites;
    for (int c = 0; c < static_cast<int>(chains.size()); ++c) {
        const auto& chain = chains[static_cast<std::size_t>(c)];
        auto signs = chain_tau_signs(embedding, chain);
        const int n = static_cast<int>(chain.runs.size());
        for (int i = chain.closed ? 0 : 1; i < n; ++i) {
            int prev = (i + n - 1) % n;
            if (signs[static_cast<std::size_t>(i)] == signs[static_cast<std::size_t>(prev)]) continue;
            const auto& run = chain.runs[static_cast<std::size_t>(i)];
            Rational at = run_entry(run);
            Event e{EventKind::TangentBreak, run.sector, run.half, QuadSurd(at), Poly2{-at, 1, 0}, {run.p, run.q}};
            sites.push_back({c, i, std::move(e)});
        }
    }
    return sites;
}

EventSet enumerate_events(const AnnularDiagram& diagram, const Embedding& embedding) {
    EventSet set;
    for (int k = 0; k < diagram.sector_count(); ++k) {
        auto c = collinear_events(diagram, embedding, k);
        auto p = parallel_events(diagram, embedding, k);
        auto u = cusp_events(diagram, k);
        set.collinear.insert(set.collinear.end(), c.begin(), c.end());
        set.parallel.insert(set.parallel.end(), p.begin(), p.end());
        set.cusps.insert(set.cusps.end(), u.begin(), u.end());
    }
    set.chains = pair_chains(diagram);
    set.tangents = tangent_breaks(embedding, set.chains);
    return set;
}

}  // namespace fibertrace
