#include "fibertrace/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "fibertrace/errors.hpp"

namespace fibertrace {

namespace {

struct Pt {
    double x;
    double r;
};

Pt operator-(Pt a, Pt b) { return {a.x - b.x, a.r - b.r}; }
double crossd(Pt a, Pt b) { return a.x * b.r - a.r * b.x; }
double dotd(Pt a, Pt b) { return a.x * b.x + a.r * b.r; }
double norm(Pt a) { return std::hypot(a.x, a.r); }

constexpr double kEdge = 1e-9;      // grid ends are pulled this far into the sector
constexpr double kBisect = 0x1p-40;  // root tolerance

class Sampler {
public:
    Sampler(const AnnularDiagram& diagram, const Embedding& embedding) {
        for (int k = 0; k < diagram.sector_count(); ++k) {
            std::vector<std::array<Pt, 3>> sector;
            for (std::size_t j = 0; j < diagram.sector(k).pieces.size(); ++j) {
                const auto& path = embedding.path(k, static_cast<int>(j));
                std::array<Pt, 3> knots{};
                for (int i = 0; i < 3; ++i) knots[static_cast<std::size_t>(i)] = {path.knot(i).x.get_d(), path.knot(i).y.get_d()};
                sector.push_back(knots);
            }
            knots_.push_back(std::move(sector));
        }
    }

    Pt at(int sector, int piece, double phi) const {
        const auto& k = knots_[static_cast<std::size_t>(sector)][static_cast<std::size_t>(piece)];
        double t = phi - sector;
        if (t <= 0.5) {
            double s = 2 * t;
            return {k[0].x + s * (k[1].x - k[0].x), k[0].r + s * (k[1].r - k[0].r)};
        }
        double s = 2 * t - 1;
        return {k[1].x + s * (k[2].x - k[1].x), k[1].r + s * (k[2].r - k[1].r)};
    }

    Pt chord(int sector, int p, int q, double phi) const { return at(sector, q, phi) - at(sector, p, phi); }

    double tau(int sector, int p, int q, double phi) const {
        Pt v = chord(sector, p, q, phi);
        return std::atan2(v.r, v.x);
    }

    int pieces(int sector) const { return static_cast<int>(knots_[static_cast<std::size_t>(sector)].size()); }

private:
    std::vector<std::vector<std::array<Pt, 3>>> knots_;
};

double wrap_angle(double a) {
    while (a > std::numbers::pi) a -= 2 * std::numbers::pi;
    while (a <= -std::numbers::pi) a += 2 * std::numbers::pi;
    return a;
}

double grid_point(int sector, int j, int samples) {
    double t = static_cast<double>(j) / samples;
    return sector + std::clamp(t, kEdge, 1 - kEdge);
}

// Roots of f on the sector grid, refined by bisection.
std::vector<double> sweep_roots(const std::function<double(double)>& f, int sector, int samples) {
    std::vector<double> roots;
    double x0 = grid_point(sector, 0, samples);
    double f0 = f(x0);
    for (int j = 1; j <= samples; ++j) {
        double x1 = grid_point(sector, j, samples);
        double f1 = f(x1);
        if ((f0 < 0 && f1 > 0) || (f0 > 0 && f1 < 0)) {
            double lo = x0, hi = x1, flo = f0;
            while (hi - lo > kBisect) {
                double mid = 0.5 * (lo + hi);
                double fm = f(mid);
                if ((fm < 0) == (flo < 0) && fm != 0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

}  // namespace

SampledSweep sampled_sweep(const AnnularDiagram& diagram, const EmbeddingConfig& config, int samples_per_sector,
                           OverRule rule) {
    return sampled_sweep(diagram, embed_generic(diagram, config), samples_per_sector, rule);
}

SampledSweep sampled_sweep(const AnnularDiagram& diagram, const Embedding& embedding, int samples_per_sector,
                           OverRule rule) {
    if (samples_per_sector < 64) throw std::invalid_argument("at least 64 samples per sector are required");
    const int S = samples_per_sector;
    Sampler sm(diagram, embedding);
    SampledSweep out;
    out.samples = S;
    std::vector<TorusCrossing> as_crossings;

    for (int k = 0; k < diagram.sector_count(); ++k) {
        const Sector& sector = diagram.sector(k);
        const int n = sm.pieces(k);
        std::vector<double> all_roots;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                for (int r = q + 1; r < n; ++r) {
                    auto f = [&](double phi) {
                        Pt a = sm.at(k, p, phi);
                        return crossd(sm.at(k, q, phi) - a, sm.at(k, r, phi) - a);
                    };
                    for (double root : sweep_roots(f, k, S)) {
                        out.collinear.push_back({EventKind::Collinear, k, root, {p, q, r}});
                        all_roots.push_back(root);
                    }
                }
            }
        }
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                for (int a = p; a < n; ++a) {
                    for (int b = a + 1; b < n; ++b) {
                        if (std::make_pair(a, b) <= std::make_pair(p, q)) continue;
                        if (a == p || a == q || b == p || b == q) continue;
                        auto g = [&](double phi) { return crossd(sm.chord(k, p, q, phi), sm.chord(k, a, b, phi)); };
                        for (double root : sweep_roots(g, k, S)) {
                            out.parallel.push_back({EventKind::Parallel, k, root, {p, q, a, b}});
                            all_roots.push_back(root);

                            OrderedPair x{p, q};
                            OrderedPair y{a, b};
                            if (dotd(sm.chord(k, p, q, root), sm.chord(k, a, b, root)) < 0) std::swap(y.p, y.q);
                            double half_edge = root - k < 0.5 ? k + 0.5 : k + 1.0;
                            double low_edge = root - k < 0.5 ? k : k + 0.5;
                            double h = std::min(1e-6, 0.5 * std::min(root - low_edge, half_edge - root));
                            for (int image = 0; image < 2; ++image) {
                                OrderedPair u = image == 0 ? x : OrderedPair{x.q, x.p};
                                OrderedPair w = image == 0 ? y : OrderedPair{y.q, y.p};
                                Pt vu = sm.chord(k, u.p, u.q, root);
                                double offset_u = crossd(sm.at(k, u.p, root), vu) / norm(vu);
                                double offset_w = crossd(sm.at(k, w.p, root), vu) / norm(vu);
                                bool u_over = rule == OverRule::SmallerOffset ? offset_u < offset_w : offset_u > offset_w;
                                OrderedPair over = u_over ? u : w;
                                OrderedPair under = u_over ? w : u;
                                auto dtau = [&](const OrderedPair& pr) {
                                    return wrap_angle(sm.tau(k, pr.p, pr.q, root + h) - sm.tau(k, pr.p, pr.q, root - h));
                                };
                                // phi-direction of the oriented trace through this secant
                                auto phi_dir = [&](const OrderedPair& pr) {
                                    int ep = sector.pieces[static_cast<std::size_t>(pr.p)].direction;
                                    int eq = sector.pieces[static_cast<std::size_t>(pr.q)].direction;
                                    Pt w3 = sm.chord(k, pr.p, pr.q, root);
                                    Pt vp = sm.at(k, pr.p, root + h) - sm.at(k, pr.p, root - h);
                                    Pt vq = sm.at(k, pr.q, root + h) - sm.at(k, pr.q, root - h);
                                    double det = ep * eq * (w3.x * (vq.r - vp.r) - w3.r * (vq.x - vp.x)) / (2 * h);
                                    double dt = dtau(pr);
                                    if (std::abs(det) > 1e-12 && std::abs(dt) > 1e-15) {
                                        int o = (det > 0 ? 1 : -1) * (dt > 0 ? 1 : -1);
                                        if (o != ep * eq) out.warnings.push_back("orientation disagrees with strand directions");
                                        return o;
                                    }
                                    return ep * eq;
                                };
                                double gap = dtau(over) - dtau(under);
                                SampledCrossing c;
                                c.sector = k;
                                c.phi = root;
                                c.over = over;
                                c.under = under;
                                c.sign = phi_dir(over) * phi_dir(under) * (gap > 0 ? 1 : -1);
                                c.over_label = crossing_marking(diagram, k, over.p, over.q).label();
                                c.under_label = crossing_marking(diagram, k, under.p, under.q).label();
                                out.crossings.push_back(c);
                                TorusCrossing tc;
                                tc.sign = c.sign;
                                tc.over_marking = crossing_marking(diagram, k, over.p, over.q);
                                tc.under_marking = crossing_marking(diagram, k, under.p, under.q);
                                as_crossings.push_back(tc);
                            }
                        }
                    }
                }
            }
        }
        std::sort(all_roots.begin(), all_roots.end());
        for (std::size_t i = 1; i < all_roots.size(); ++i) {
            if (all_roots[i] - all_roots[i - 1] < 4.0 / S) {
                out.warnings.push_back("ResolutionWarning: events closer than 4 grid steps in sector " + std::to_string(k));
            }
        }
    }

    // tau extrema along each pair chain
    for (const auto& chain : pair_chains(diagram)) {
        std::vector<double> taus;
        std::vector<double> noise;  // rounding error of tau, large for short chords
        for (const auto& run : chain.runs) {
            const int steps = std::max(2, S / 2);
            double lo = run.sector + 0.5 * run.half;
            for (int j = 0; j <= steps; ++j) {
                double t = static_cast<double>(run.dir > 0 ? j : steps - j) / steps;
                double phi = std::clamp(lo + 0.5 * t, run.sector + kEdge, run.sector + 1 - kEdge);
                Pt v = sm.chord(run.sector, run.p, run.q, phi);
                double scale = norm(sm.at(run.sector, run.p, phi)) + norm(sm.at(run.sector, run.q, phi));
                taus.push_back(std::atan2(v.r, v.x));
                noise.push_back(1e-12 + 64 * std::numeric_limits<double>::epsilon() * scale / norm(v));
            }
        }
        std::vector<int> signs;
        auto step = [&](std::size_t i, std::size_t j) {
            double d = wrap_angle(taus[j] - taus[i]);
            if (std::abs(d) > noise[i] + noise[j]) signs.push_back(d > 0 ? 1 : -1);
        };
        for (std::size_t i = 1; i < taus.size(); ++i) step(i - 1, i);
        if (chain.closed && taus.size() > 1) step(taus.size() - 1, 0);
        for (std::size_t i = 1; i < signs.size(); ++i) {
            if (signs[i] != signs[i - 1]) ++out.tangent_breaks;
        }
        if (chain.closed && signs.size() > 1 && signs.front() != signs.back()) ++out.tangent_breaks;
    }

    if (std::abs(diagram.m()) != 1) out.table = writhe_table(diagram.m(), as_crossings);
    return out;
}

std::vector<QuadrisecantHit> quadrisecant_scan(const AnnularDiagram& diagram, const Embedding& embedding, int samples,
                                               double tolerance) {
    Sampler sm(diagram, embedding);
    std::vector<QuadrisecantHit> hits;
    auto flat = [&](Pt a, Pt b, Pt c) {
        double la = norm(b - a), lb = norm(c - a);
        if (la == 0 || lb == 0) return true;
        return std::abs(crossd(b - a, c - a)) / (la * lb) < tolerance;
    };
    for (int k = 0; k < diagram.sector_count(); ++k) {
        const int n = sm.pieces(k);
        for (int j = 0; j <= samples; ++j) {
            double phi = grid_point(k, j, samples);
            std::vector<Pt> pts;
            for (int p = 0; p < n; ++p) pts.push_back(sm.at(k, p, phi));
            for (int a = 0; a < n; ++a) {
                for (int b = a + 1; b < n; ++b) {
                    for (int c = b + 1; c < n; ++c) {
                        if (!flat(pts[static_cast<std::size_t>(a)], pts[static_cast<std::size_t>(b)], pts[static_cast<std::size_t>(c)])) continue;
                        for (int d = c + 1; d < n; ++d) {
                            if (flat(pts[static_cast<std::size_t>(a)], pts[static_cast<std::size_t>(b)], pts[static_cast<std::size_t>(d)])) {
                                hits.push_back({k, phi, {a, b, c, d}});
                            }
                        }
                    }
                }
            }
        }
    }
    return hits;
}

bool ComparisonReport::full_match() const {
    if (sign_mismatches != 0 || !tables_equal) return false;
    return std::all_of(kinds.begin(), kinds.end(), [](const KindComparison& k) {
        return k.exact == k.sampled && k.matched == k.exact && k.unmatched.empty();
    });
}

namespace {

std::string describe(int sector, double phi, const std::vector<int>& strands) {
    std::string s = "sector " + std::to_string(sector) + " phi " + std::to_string(phi) + " strands";
    for (int v : strands) s += " " + std::to_string(v);
    return s;
}

struct Item {
    int sector;
    double phi;
    std::vector<int> key;
    int sign = 0;
};

KindComparison match(const std::string& kind, const std::vector<Item>& exact, const std::vector<Item>& sampled,
                     double tolerance, int* sign_mismatches) {
    KindComparison out{kind, static_cast<int>(exact.size()), static_cast<int>(sampled.size()), 0, {}};
    std::vector<bool> used(sampled.size(), false);
    for (const auto& e : exact) {
        int best = -1;
        double best_gap = tolerance;
        for (std::size_t j = 0; j < sampled.size(); ++j) {
            if (used[j] || sampled[j].sector != e.sector || sampled[j].key != e.key) continue;
            double gap = std::abs(sampled[j].phi - e.phi);
            if (gap < best_gap) {
                best_gap = gap;
                best = static_cast<int>(j);
            }
        }
        if (best < 0) {
            out.unmatched.push_back("exact only: " + describe(e.sector, e.phi, e.key));
            continue;
        }
        used[static_cast<std::size_t>(best)] = true;
        ++out.matched;
        if (sign_mismatches && sampled[static_cast<std::size_t>(best)].sign != e.sign) ++*sign_mismatches;
    }
    for (std::size_t j = 0; j < sampled.size(); ++j) {
        if (!used[j]) out.unmatched.push_back("sampled only: " + describe(sampled[j].sector, sampled[j].phi, sampled[j].key));
    }
    return out;
}

}  // namespace

ComparisonReport compare(const ExactResults& exact, const SampledSweep& sampled, double tolerance) {
    ComparisonReport report;
    report.warnings = sampled.warnings;
    auto items = [](const std::vector<Event>& events) {
        std::vector<Item> out;
        for (const auto& e : events) out.push_back({e.sector, e.phi.to_double(), e.strands});
        return out;
    };
    auto sampled_items = [](const std::vector<SampledEvent>& events) {
        std::vector<Item> out;
        for (const auto& e : events) out.push_back({e.sector, e.phi, e.strands});
        return out;
    };
    report.kinds.push_back(match("collinear", items(exact.events->collinear), sampled_items(sampled.collinear), tolerance, nullptr));
    report.kinds.push_back(match("parallel", items(exact.events->parallel), sampled_items(sampled.parallel), tolerance, nullptr));

    std::vector<Item> ec;
    for (const auto& c : *exact.crossings) ec.push_back({c.sector, c.phi.to_double(), {c.over.p, c.over.q, c.under.p, c.under.q}, c.sign});
    std::vector<Item> sc;
    for (const auto& c : sampled.crossings) sc.push_back({c.sector, c.phi, {c.over.p, c.over.q, c.under.p, c.under.q}, c.sign});
    report.kinds.push_back(match("crossing", ec, sc, tolerance, &report.sign_mismatches));

    KindComparison tangents{"tangent", static_cast<int>(exact.events->tangents.size()), sampled.tangent_breaks, 0, {}};
    if (tangents.exact == tangents.sampled) {
        tangents.matched = tangents.exact;
    } else {
        tangents.unmatched.push_back("tangent break counts differ");
    }
    report.kinds.push_back(tangents);

    if (exact.table && sampled.table) {
        report.tables_equal = *exact.table == *sampled.table;
    } else {
        report.tables_equal = !exact.table && !sampled.table;
    }
    return report;
}

}  // namespace fibertrace
