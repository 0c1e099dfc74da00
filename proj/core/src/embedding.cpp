#include "fibertrace/embedding.hpp"

#include "fibertrace/errors.hpp"

namespace fibertrace {

EmbeddingConfig resolved_config(const EmbeddingConfig& config, int max_strands) {
    EmbeddingConfig out = config;
    if (!out.radius) out.radius = Rational(max_strands) * max_strands;
    return out;
}

namespace {

Rational default_abscissa(int slot, int n) { return Rational(2 * slot - (n - 1), 2); }

Rational default_perturbation(int slot, const Rational& epsilon) {
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), 3, static_cast<unsigned long>(slot + 1));
    return epsilon / Rational(power);
}

[[noreturn]] void degenerate(const std::string& what) { throw Error(ErrorKind::DegenerateConfig, what); }

}  // namespace

std::vector<FiberPoint> rest_positions(int n, const EmbeddingConfig& config) {
    Rational radius = config.radius.value_or(Rational(n) * n);
    bool explicit_x = static_cast<int>(config.abscissas.size()) == n;
    bool explicit_delta = static_cast<int>(config.perturbations.size()) == n;
    std::vector<FiberPoint> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        Rational x = explicit_x ? config.abscissas[static_cast<std::size_t>(j)] : default_abscissa(j, n);
        Rational delta = explicit_delta ? config.perturbations[static_cast<std::size_t>(j)]
                                        : default_perturbation(j, config.epsilon);
        points.push_back({x, radius + config.curvature * x * x + delta});
    }
    for (int i = 0; i < n; ++i) {
        const auto& p = points[static_cast<std::size_t>(i)];
        if (p.y - config.depth <= 0) degenerate("nonpositive radius at slot " + std::to_string(i + 1));
        if (i > 0 && !(points[static_cast<std::size_t>(i - 1)].x < p.x)) degenerate("abscissas not increasing");
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto& p = points[static_cast<std::size_t>(i)];
            const auto& q = points[static_cast<std::size_t>(j)];
            if (cross(p, q) == 0) {
                degenerate("chord through origin {" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}");
            }
            for (int s = j + 1; s < n; ++s) {
                if (cross(q - p, points[static_cast<std::size_t>(s)] - p) == 0) {
                    degenerate("collinear triple {" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                               std::to_string(s + 1) + "}");
                }
            }
            for (int k = i + 1; k < n; ++k) {
                for (int l = k + 1; l < n; ++l) {
                    if (k == j || l == j) continue;
                    if (!(std::make_pair(i, j) < std::make_pair(k, l))) continue;
                    if (cross(q - p, points[static_cast<std::size_t>(l)] - points[static_cast<std::size_t>(k)]) == 0) {
                        degenerate("parallel chords {" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "} and {" +
                                   std::to_string(k + 1) + "," + std::to_string(l + 1) + "}");
                    }
                }
            }
        }
    }
    return points;
}

Rational half_lo(int sector, int half) { return Rational(2 * sector + half, 2); }
Rational half_hi(int sector, int half) { return Rational(2 * sector + half + 1, 2); }

Affine2 half_motion(const StrandPath& path, int sector, int half) {
    return Affine2::through(path.knot(half), half_lo(sector, half), path.knot(half + 1), half_hi(sector, half));
}

std::vector<StrandPath> sector_paths(const Sector& sector, const EmbeddingConfig& config) {
    const auto in = rest_positions(sector.count_in, config);
    const auto out = rest_positions(sector.count_out, config);
    auto midpoint = [](const FiberPoint& a, const FiberPoint& b) { return Rational(1, 2) * (a + b); };
    auto linear = [&](const FiberPoint& a, const FiberPoint& b) { return StrandPath{a, midpoint(a, b), b}; };
    const FiberPoint dip{0, config.depth};
    const int i = sector.token.slot - 1;

    std::vector<StrandPath> paths;
    paths.reserve(sector.pieces.size());
    for (const auto& piece : sector.pieces) {
        switch (sector.token.kind) {
            case TokenKind::Crossing: {
                const auto& from = in[static_cast<std::size_t>(piece.in_slot)];
                const auto& to = in[static_cast<std::size_t>(piece.out_slot)];
                if (piece.in_slot != i && piece.in_slot != i + 1) {
                    paths.push_back({from, from, from});
                    break;
                }
                int over_slot = sector.token.sign > 0 ? i : i + 1;
                FiberPoint centre = midpoint(in[static_cast<std::size_t>(i)], in[static_cast<std::size_t>(i + 1)]);
                FiberPoint mid = piece.in_slot == over_slot ? centre - dip : centre + dip;
                paths.push_back({from, mid, to});
                break;
            }
            case TokenKind::Cap: {
                const auto& from = in[static_cast<std::size_t>(piece.in_slot)];
                if (piece.out_slot >= 0) {
                    paths.push_back(linear(from, out[static_cast<std::size_t>(piece.out_slot)]));
                } else {
                    FiberPoint merge =
                        midpoint(in[static_cast<std::size_t>(i)], in[static_cast<std::size_t>(i + 1)]) - dip;
                    paths.push_back(linear(from, merge));
                }
                break;
            }
            case TokenKind::Cup: {
                const auto& to = out[static_cast<std::size_t>(piece.out_slot)];
                if (piece.in_slot >= 0) {
                    paths.push_back(linear(in[static_cast<std::size_t>(piece.in_slot)], to));
                } else {
                    FiberPoint merge =
                        midpoint(out[static_cast<std::size_t>(i)], out[static_cast<std::size_t>(i + 1)]) - dip;
                    paths.push_back(linear(merge, to));
                }
                break;
            }
        }
    }
    return paths;
}

Embedding embed(const AnnularDiagram& diagram, const EmbeddingConfig& config) {
    Embedding e;
    e.config = resolved_config(config, diagram.max_strands());
    for (const auto& sector : diagram.sectors()) {
        auto paths = sector_paths(sector, e.config);
        for (const auto& p : paths) {
            for (int j = 0; j < 3; ++j) {
                if (p.knot(j).y <= 0) {
                    throw Error(ErrorKind::DegenerateConfig,
                                "path reaches the axis in sector " + std::to_string(sector.index));
                }
            }
        }
        e.paths.push_back(std::move(paths));
    }
    return e;
}

Embedding embed_generic(const AnnularDiagram& diagram, const EmbeddingConfig& config) {
    EmbeddingConfig attempt = config;
    std::string last;
    for (int retry = 0; retry <= config.max_retries; ++retry) {
        try {
            Embedding e = embed(diagram, attempt);
            auto report = genericity_check(diagram, e);
            if (report.ok()) {
                e.retries = retry;
                return e;
            }
            const auto& v = *report.violation;
            last = "(" + v.condition + ") in sector " + std::to_string(v.sector) + ": " + v.detail;
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::DegenerateConfig) throw;
            last = err.what();
        }
        attempt.epsilon /= 2;
        attempt.depth /= 2;
    }
    throw Error(ErrorKind::Degeneracy, "no generic embedding after " + std::to_string(config.max_retries) +
                                           " retries; last failure " + last);
}

}  // namespace fibertrace
