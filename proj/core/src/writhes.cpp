#include "fibertrace/writhes.hpp"

#include <set>

#include "fibertrace/errors.hpp"

namespace fibertrace {

OverRule flipped(OverRule rule) {
    return rule == OverRule::SmallerOffset ? OverRule::LargerOffset : OverRule::SmallerOffset;
}

std::vector<TorusCrossing> torus_crossings(const AnnularDiagram& diagram, const Embedding& embedding,
                                           const EventSet& events, const TraceGraph& graph, OverRule rule) {
    std::vector<TorusCrossing> out;
    out.reserve(2 * events.parallel.size());
    for (const auto& e : events.parallel) {
        const int k = e.sector;
        const int h = e.half;
        auto pos = [&](int piece) { return embedding.motion(k, h, piece); };
        OrderedPair a{e.strands[0], e.strands[1]};
        OrderedPair b{e.strands[2], e.strands[3]};
        if (e.phi.eval(dot(pos(a.q) - pos(a.p), pos(b.q) - pos(b.p))).sign() < 0) std::swap(b.p, b.q);

        for (int image = 0; image < 2; ++image) {
            OrderedPair x = image == 0 ? a : OrderedPair{a.q, a.p};
            OrderedPair y = image == 0 ? b : OrderedPair{b.q, b.p};
            Affine2 vx = pos(x.q) - pos(x.p);
            Affine2 vy = pos(y.q) - pos(y.p);
            int offset = e.phi.eval(cross(pos(x.p) - pos(y.p), vx)).sign();
            if (offset == 0) {
                throw Error(ErrorKind::EqualRho, "parallel secants at equal offset in sector " + std::to_string(k));
            }
            bool x_over = rule == OverRule::SmallerOffset ? offset < 0 : offset > 0;
            // sign(tau'_y - tau'_x) at the crossing
            int spread = e.phi.eval(cross(vx, vy).derivative()).sign();
            TorusCrossing c;
            c.sector = k;
            c.half = h;
            c.phi = e.phi;
            c.over = x_over ? x : y;
            c.under = x_over ? y : x;
            int tau_gap = x_over ? -spread : spread;  // sign(tau'_over - tau'_under)
            c.over_arc = graph.arc_at(k, h, c.over.p, c.over.q, e.phi);
            c.under_arc = graph.arc_at(k, h, c.under.p, c.under.q, e.phi);
            if (c.over_arc < 0 || c.under_arc < 0) {
                throw Error(ErrorKind::AssemblyMismatch, "crossing in sector " + std::to_string(k) + " is off the graph");
            }
            const auto& ao = graph.arcs[static_cast<std::size_t>(c.over_arc)];
            const auto& au = graph.arcs[static_cast<std::size_t>(c.under_arc)];
            auto phi_dir = [&](const TraceArc& arc, const OrderedPair& pr) {
                for (const auto& r : arc.runs) {
                    if (r.sector == k && r.half == h && r.p == pr.p && r.q == pr.q) return arc.orientation * r.dir;
                }
                return 0;
            };
            // det[d_over, d_under] with d = o (tau', 1)
            c.sign = phi_dir(ao, c.over) * phi_dir(au, c.under) * tau_gap;
            c.over_marking = ao.marking;
            c.under_marking = au.marking;
            out.push_back(std::move(c));
        }
    }
    return out;
}

WritheTable writhe_table(int m, const std::vector<TorusCrossing>& crossings) {
    if (std::abs(m) == 1) throw Error(ErrorKind::LinkingOne, "writhes are undefined for lk(K, L) = +-1");
    WritheTable t;
    t.m = m;
    const long mod = std::abs(m);
    if (mod >= 2) {
        for (long a = 1; a < mod; ++a) {
            t.W_c[a] = 0;
            for (long b = 1; b < mod; ++b) {
                if (a == b) continue;
                t.W_o[{a, b}] = 0;
                if (a < b) t.W_u[{a, b}] = 0;
            }
        }
    }
    for (const auto& c : crossings) {
        long a = c.over_marking.label();
        long b = c.under_marking.label();
        if (a == 0 || b == 0) continue;
        if (a == b) {
            t.W_c[a] += c.sign;
        } else {
            t.W_u[{std::min(a, b), std::max(a, b)}] += c.sign;
            t.W_o[{a, b}] += c.sign;
        }
    }
    return t;
}

long ceil_of(const Rational& q) {
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return c.get_si();
}

namespace {

template <typename Map>
Rational total_change(const Map& x, const Map& y) {
    std::set<typename Map::key_type> keys;
    for (const auto& [k, v] : x) keys.insert(k);
    for (const auto& [k, v] : y) keys.insert(k);
    mpz_class sum = 0;
    for (const auto& k : keys) {
        auto ix = x.find(k);
        auto iy = y.find(k);
        long vx = ix == x.end() ? 0 : ix->second;
        long vy = iy == y.end() ? 0 : iy->second;
        sum += std::abs(vx - vy);
    }
    Rational r(sum, 12);
    r.canonicalize();
    return r;
}

}  // namespace

BoundReport theorem_bounds(const WritheTable& a, const WritheTable& b, bool closed_braids) {
    if (a.m != b.m) {
        throw Error(ErrorKind::MismatchedM, "linking numbers differ: " + std::to_string(a.m) + " vs " + std::to_string(b.m));
    }
    if (std::abs(a.m) == 1) throw Error(ErrorKind::LinkingOne, "bounds are undefined for lk(K, L) = +-1");
    BoundReport r;
    r.m = a.m;
    r.bound_u = total_change(a.W_u, b.W_u);
    r.bound_c = total_change(a.W_c, b.W_c);
    r.ceil_u = ceil_of(r.bound_u);
    r.ceil_c = ceil_of(r.bound_c);
    r.fqs_without_extreme_secants = r.ceil_c;
    r.fes_without_quadrisecants = ceil_of(Rational(6 * r.bound_c));
    if (closed_braids) {
        r.bound_o = total_change(a.W_o, b.W_o);
        r.ceil_o = ceil_of(*r.bound_o);
        r.bound_o_at_least_bound_u = *r.bound_o >= r.bound_u;
    }
    return r;
}

}  // namespace fibertrace
