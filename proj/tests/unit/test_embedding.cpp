#include <doctest.h>

#include <cmath>
#include <random>

#include "fibertrace/embedding.hpp"
#include "fibertrace/errors.hpp"
#include "generators.hpp"

using namespace fibertrace;

namespace {

EmbeddingConfig explicit_config(std::vector<Rational> xs, Rational radius) {
    EmbeddingConfig c;
    c.radius = radius;
    c.perturbations.assign(xs.size(), Rational(0));
    c.abscissas = std::move(xs);
    return c;
}

}  // namespace

TEST_CASE("rest positions on the parabola") {
    auto pts = rest_positions(2, explicit_config({-1, 1}, 4));
    REQUIRE(pts.size() == 2);
    CHECK(pts[0] == Vec2{-1, 5});
    CHECK(pts[1] == Vec2{1, 5});
}

TEST_CASE("symmetric abscissas give parallel chords") {
    try {
        rest_positions(4, explicit_config({-3, -1, 1, 3}, 16));
        FAIL("expected DegenerateConfig");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateConfig);
        CHECK(std::string(e.what()).find("parallel") != std::string::npos);
    }
}

TEST_CASE("default rest positions satisfy every config invariant") {
    for (int n = 2; n <= 7; ++n) {
        auto c = resolved_config({}, n);
        auto pts = rest_positions(n, c);
        for (int i = 0; i < n; ++i) {
            CHECK(pts[static_cast<std::size_t>(i)].y - c.depth > 0);
            for (int j = i + 1; j < n; ++j) {
                const auto& p = pts[static_cast<std::size_t>(i)];
                const auto& q = pts[static_cast<std::size_t>(j)];
                CHECK(cross(p, q) != 0);
                for (int k = 0; k < n; ++k) {
                    for (int l = k + 1; l < n; ++l) {
                        if (std::make_pair(k, l) == std::make_pair(i, j)) continue;
                        CHECK(cross(q - p, pts[static_cast<std::size_t>(l)] - pts[static_cast<std::size_t>(k)]) != 0);
                    }
                }
                // strict convexity: every other point lies above the chord
                for (int s = 0; s < n; ++s) {
                    if (s == i || s == j) continue;
                    const auto& r = pts[static_cast<std::size_t>(s)];
                    int side = sign(cross(q - p, r - p));
                    bool between = p.x < r.x && r.x < q.x;
                    CHECK(side == (between ? -1 : 1));
                }
            }
        }
    }
}

TEST_CASE("crossing sector paths") {
    auto d = build_diagram(parse_morse_word("s1 s1 s1"), 2);
    EmbeddingConfig c = resolved_config({}, 2);
    auto pts = rest_positions(2, c);
    auto paths = sector_paths(d.sector(0), c);
    REQUIRE(paths.size() == 2);
    Vec2 centre = Rational(1, 2) * (pts[0] + pts[1]);
    CHECK(paths[0].start == pts[0]);
    CHECK(paths[0].end == pts[1]);
    CHECK(paths[1].start == pts[1]);
    CHECK(paths[1].end == pts[0]);
    // s1 puts the left strand over, dipping toward the axis
    CHECK(paths[0].mid == centre - Vec2{0, c.depth});
    CHECK(paths[1].mid == centre + Vec2{0, c.depth});
}

TEST_CASE("cap sector merges the strands") {
    auto d = build_diagram(parse_morse_word("cup2 s1 s1 s1 cap2"), 1);
    const int cap = d.sector_count() - 1;
    EmbeddingConfig c = resolved_config({}, d.max_strands());
    auto paths = sector_paths(d.sector(cap), c);
    int ended = 0;
    Vec2 merge;
    for (std::size_t j = 0; j < paths.size(); ++j) {
        if (d.sector(cap).pieces[j].out_slot < 0) {
            if (ended++ > 0) CHECK(paths[j].end == merge);
            merge = paths[j].end;
        }
    }
    CHECK(ended == 2);
}

TEST_CASE("genericity of the default embedding") {
    auto b0 = build_diagram(parse_morse_word("s3 s2 s1"), 4);
    CHECK(genericity_check(b0, EmbeddingConfig{}).ok());
    auto b1 = build_diagram(parse_morse_word("s1 s3 s2 s1 s3 s2 S3 S2 S3"), 4);
    CHECK(genericity_check(b1, EmbeddingConfig{}).ok());

    EmbeddingConfig flat;
    flat.epsilon = 0;
    auto report = genericity_check(b0, flat);
    CHECK_FALSE(report.ok());

    EmbeddingConfig shallow;
    shallow.depth = 0;
    auto collide = genericity_check(b0, shallow);
    REQUIRE_FALSE(collide.ok());
    CHECK(collide.violation->condition == "collision");
}

TEST_CASE("random diagrams embed generically with r > 0 and matching closure") {
    std::mt19937 rng(21);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto d = trial % 2 ? testing::random_closed_braid(rng, 3 + trial % 3, 12)
                           : testing::random_morse_knot(rng, trial % 3, 1 + trial % 2, 5);
        if (!d) continue;
        Embedding e;
        try {
            e = embed_generic(*d, {});
        } catch (const Error& err) {
            CHECK(err.kind() == ErrorKind::Degeneracy);
            continue;
        }
        ++checked;
        CHECK(genericity_check(*d, e).ok());
        for (int k = 0; k < d->sector_count(); ++k) {
            for (std::size_t j = 0; j < e.paths[static_cast<std::size_t>(k)].size(); ++j) {
                for (int i = 0; i < 3; ++i) CHECK(e.path(k, static_cast<int>(j)).knot(i).y > 0);
            }
        }
        // consecutive sectors glue: each piece ends where its successor starts
        for (std::size_t i = 0; i < d->traversal().size(); ++i) {
            const auto& a = d->traversal()[i];
            const auto& b = d->traversal()[(i + 1) % d->traversal().size()];
            int da = d->sector(a.sector).pieces[static_cast<std::size_t>(a.piece)].direction;
            int db = d->sector(b.sector).pieces[static_cast<std::size_t>(b.piece)].direction;
            const auto& pa = e.path(a.sector, a.piece);
            const auto& pb = e.path(b.sector, b.piece);
            CHECK((da > 0 ? pa.end : pa.start) == (db > 0 ? pb.start : pb.end));
        }
    }
    CHECK(checked > 25);
}

TEST_CASE("chord direction is monotone inside each half") {
    auto d = build_diagram(parse_morse_word("s1 s3 s2 s1 s3 s2 S3 S2 S3"), 4);
    auto e = embed_generic(d, {});
    for (int k = 0; k < d.sector_count(); ++k) {
        for (int h = 0; h < 2; ++h) {
            for (int p = 0; p < 4; ++p) {
                for (int q = 0; q < 4; ++q) {
                    if (p == q) continue;
                    Affine2 v = e.motion(k, h, q) - e.motion(k, h, p);
                    int want = sign(cross(v.a, v.b));
                    double prev = std::nan("");
                    for (int s = 0; s <= 64; ++s) {
                        Rational phi = half_lo(k, h) + Rational(s, 128);
                        Vec2 w = v.at(phi);
                        double t = std::atan2(w.y.get_d(), w.x.get_d());
                        if (!std::isnan(prev) && want != 0) {
                            double step = std::remainder(t - prev, 2 * M_PI);
                            CHECK((step == 0 || (step > 0) == (want > 0)));
                        }
                        prev = t;
                    }
                }
            }
        }
    }
}
