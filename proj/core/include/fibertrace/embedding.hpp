#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibertrace/diagram.hpp"
#include "fibertrace/exact.hpp"

namespace fibertrace {

// Point of a fiber half-plane: x along the axis, y = r the distance from it.
using FiberPoint = Vec2;

struct EmbeddingConfig {
    std::optional<Rational> radius;  // defaults to N^2 for the widest fiber
    Rational curvature{1};
    Rational epsilon{1, 1024};
    Rational depth{1, 8};
    // Explicit rest data, used only for fibers with exactly this many strands.
    std::vector<Rational> abscissas;
    std::vector<Rational> perturbations;
    int max_retries = 8;
};

// Resolves defaults that depend on the diagram.
EmbeddingConfig resolved_config(const EmbeddingConfig& config, int max_strands);

std::vector<FiberPoint> rest_positions(int n, const EmbeddingConfig& config);

// Three knots per sector: the path is linear on [k, k+1/2] and on [k+1/2, k+1].
struct StrandPath {
    FiberPoint start;
    FiberPoint mid;
    FiberPoint end;

    const FiberPoint& knot(int i) const { return i == 0 ? start : (i == 1 ? mid : end); }
};

// Affine motion of a path on one half of sector k.
Affine2 half_motion(const StrandPath& path, int sector, int half);
Rational half_lo(int sector, int half);
Rational half_hi(int sector, int half);

std::vector<StrandPath> sector_paths(const Sector& sector, const EmbeddingConfig& config);

struct Embedding {
    EmbeddingConfig config;  // resolved
    std::vector<std::vector<StrandPath>> paths;
    int retries = 0;

    const StrandPath& path(int sector, int piece) const {
        return paths.at(static_cast<std::size_t>(sector)).at(static_cast<std::size_t>(piece));
    }
    Affine2 motion(int sector, int half, int piece) const { return half_motion(path(sector, piece), sector, half); }
};

Embedding embed(const AnnularDiagram& diagram, const EmbeddingConfig& config);

struct GenericityViolation {
    std::string condition;
    int sector = -1;
    Rational phi_lo;
    Rational phi_hi;
    std::string detail;
};

struct GenericityReport {
    std::optional<GenericityViolation> violation;
    bool ok() const { return !violation.has_value(); }
};

GenericityReport genericity_check(const AnnularDiagram& diagram, const EmbeddingConfig& config);
GenericityReport genericity_check(const AnnularDiagram& diagram, const Embedding& embedding);

// Embeds with the given config, halving epsilon and depth until the genericity check passes.
Embedding embed_generic(const AnnularDiagram& diagram, const EmbeddingConfig& config);

}  // namespace fibertrace
