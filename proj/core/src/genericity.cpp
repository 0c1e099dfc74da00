#include <algorithm>

#include "fibertrace/embedding.hpp"
#include "fibertrace/events.hpp"
#include "genericity_internal.hpp"

namespace fibertrace {

namespace {

using detail::DegeneracyError;

std::string pair_label(int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

void check_paths(const AnnularDiagram& diagram, const Embedding& embedding, int k) {
    const Sector& s = diagram.sector(k);
    const int n = static_cast<int>(s.pieces.size());
    auto [ca, cb] = detail::cusp_pieces(s);
    for (int half = 0; half < 2; ++half) {
        Rational lo = half_lo(k, half);
        Rational hi = half_hi(k, half);
        for (int p = 0; p < n; ++p) {
            const auto& path = embedding.path(k, p);
            if (path.knot(half).y <= 0 || path.knot(half + 1).y <= 0) {
                throw DegeneracyError("r", k, lo, hi, "piece " + std::to_string(p) + " reaches the axis");
            }
        }
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                bool cusp_pair = ca >= 0 && p == ca && q == cb;
                Affine2 mp = embedding.motion(k, half, p);
                Affine2 mq = embedding.motion(k, half, q);
                Affine2 v = mq - mp;
                auto at_cusp = [&](const Rational& phi) {
                    return cusp_pair && detail::cusp_boundary(s, half, QuadSurd(phi), true);
                };
                if (v.b.x == 0 && v.b.y == 0) {
                    if (v.a.x == 0 && v.a.y == 0) {
                        throw DegeneracyError("collision", k, lo, hi, "pieces " + pair_label(p, q) + " coincide");
                    }
                } else {
                    Rational t = v.b.x != 0 ? Rational(-v.a.x / v.b.x) : Rational(-v.a.y / v.b.y);
                    Vec2 at = v.at(t);
                    if (at.x == 0 && at.y == 0 && lo <= t && t <= hi && !at_cusp(t)) {
                        throw DegeneracyError("collision", k, lo, hi,
                                              "pieces " + pair_label(p, q) + " collide at phi = " + t.get_str());
                    }
                }
                // A swapping pair turns its secant through the origin, so only degenerate passages count.
                RootScan origin = scan_roots(cross(mp, mq), lo, hi);
                if (origin.identically_zero || origin.multiple) {
                    throw DegeneracyError("e", k, lo, hi, "secant " + pair_label(p, q) + " stays at the origin");
                }
            }
        }
    }
}

void check_events(const AnnularDiagram& diagram, const Embedding& embedding, int k) {
    auto collinear = collinear_events(diagram, embedding, k);
    auto parallel = parallel_events(diagram, embedding, k);
    for (const auto& e : parallel) {
        const auto& st = e.strands;
        Affine2 pp = embedding.motion(k, e.half, st[0]);
        Affine2 pq = embedding.motion(k, e.half, st[1]);
        Affine2 pk = embedding.motion(k, e.half, st[2]);
        if (e.phi.eval(cross(pq - pp, pk - pp)).sign() == 0) {
            auto iv = e.isolating_interval();
            throw DegeneracyError("a", k, iv.first, iv.second, "parallel secants lie on one line (fiber quadrisecant)");
        }
        Affine2 pl = embedding.motion(k, e.half, st[3]);
        if (e.phi.eval(cross(pp, pq)).sign() == 0 || e.phi.eval(cross(pk, pl)).sign() == 0) {
            auto iv = e.isolating_interval();
            throw DegeneracyError("e", k, iv.first, iv.second, "parallel secant passes through the origin");
        }
    }
    std::vector<const Event*> all;
    for (const auto& e : collinear) all.push_back(&e);
    for (const auto& e : parallel) all.push_back(&e);
    std::sort(all.begin(), all.end(), [](const Event* a, const Event* b) { return a->phi < b->phi; });
    for (std::size_t i = 1; i < all.size(); ++i) {
        if (all[i - 1]->phi == all[i]->phi) {
            auto iv = all[i]->isolating_interval();
            throw DegeneracyError("d", k, iv.first, iv.second,
                                  event_kind_name(all[i - 1]->kind) + " and " + event_kind_name(all[i]->kind) +
                                      " events coincide");
        }
    }
}

GenericityViolation violation_of(const DegeneracyError& e) {
    return {e.condition(), e.sector(), e.lo(), e.hi(), e.detail()};
}

}  // namespace

GenericityReport genericity_check(const AnnularDiagram& diagram, const Embedding& embedding) {
    GenericityReport report;
    try {
        for (int k = 0; k < diagram.sector_count(); ++k) {
            check_paths(diagram, embedding, k);
            check_events(diagram, embedding, k);
        }
        auto chains = pair_chains(diagram);
        for (const auto& chain : chains) chain_tau_signs(embedding, chain);
    } catch (const DegeneracyError& e) {
        report.violation = violation_of(e);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateTangent) throw;
        report.violation = GenericityViolation{"tangent", -1, 0, Rational(diagram.sector_count()), e.what()};
    }
    return report;
}

GenericityReport genericity_check(const AnnularDiagram& diagram, const EmbeddingConfig& config) {
    try {
        return genericity_check(diagram, embed(diagram, config));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateConfig) throw;
        GenericityReport report;
        report.violation = GenericityViolation{"config", -1, 0, 0, e.what()};
        return report;
    }
}

}  // namespace fibertrace
