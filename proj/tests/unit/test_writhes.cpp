#include <doctest.h>

#include <random>

#include "fibertrace/errors.hpp"
#include "fibertrace/pipeline.hpp"
#include "generators.hpp"

using namespace fibertrace;

namespace {

TorusCrossing labelled(long over, long under, int sign, int m) {
    TorusCrossing c;
    c.sign = sign;
    c.over_marking = {over, std::abs(m)};
    c.under_marking = {under, std::abs(m)};
    return c;
}

WritheTable negated(WritheTable t) {
    for (auto& [k, v] : t.W_u) v = -v;
    for (auto& [k, v] : t.W_c) v = -v;
    std::map<std::pair<long, long>, long> o;
    for (const auto& [k, v] : t.W_o) o[{k.second, k.first}] = -v;
    t.W_o = o;
    return t;
}

}  // namespace

TEST_CASE("table domain and aggregation") {
    auto t = writhe_table(4, {labelled(1, 3, 1, 4), labelled(3, 1, 1, 4), labelled(2, 2, -1, 4), labelled(0, 2, 1, 4),
                              labelled(5, 7, -1, 4)});
    CHECK(t.W_c.size() == 3);
    CHECK(t.W_u.size() == 3);
    CHECK(t.W_o.size() == 6);
    CHECK(t.W_u.at({1, 3}) == 1);  // the (5,7) crossing reduces to (1,3)
    CHECK(t.W_o.at({1, 3}) == 0);
    CHECK(t.W_o.at({3, 1}) == 1);
    CHECK(t.W_c.at(2) == -1);
    CHECK_THROWS_AS(writhe_table(1, {}), Error);
    CHECK_THROWS_AS(writhe_table(-1, {}), Error);
}

TEST_CASE("bound formulas") {
    WritheTable zero = writhe_table(4, {});
    WritheTable golden = zero;
    golden.W_c[1] = 4;
    golden.W_c[3] = -4;
    auto r = theorem_bounds(zero, golden, true);
    CHECK(r.bound_c == Rational(2, 3));
    CHECK(r.ceil_c == 1);
    CHECK(r.bound_u == 0);
    CHECK(*r.bound_o == 0);
    CHECK(r.fes_without_quadrisecants == 4);

    auto same = theorem_bounds(zero, zero, true);
    CHECK(same.bound_u == 0);
    CHECK(same.bound_c == 0);
    CHECK(*same.bound_o == 0);

    WritheTable other = writhe_table(3, {});
    CHECK_THROWS_AS(theorem_bounds(zero, other, false), Error);

    CHECK(ceil_of(Rational(1, 3)) == 1);
    CHECK(ceil_of(Rational(-1, 3)) == 0);
    CHECK(ceil_of(Rational(2)) == 2);
}

TEST_CASE("writhes of s3 s2 s1 vanish") {
    auto a = analyze(build_diagram(parse_morse_word("s3 s2 s1"), 4));
    REQUIRE(a.table);
    for (const auto& [k, v] : a.table->W_u) CHECK(v == 0);
    for (const auto& [k, v] : a.table->W_o) CHECK(v == 0);
    for (const auto& [k, v] : a.table->W_c) CHECK(v == 0);
}

TEST_CASE("calibrated sign and pi-shift pattern on the example braid") {
    auto a = analyze(build_diagram(parse_morse_word("s1 s3 s2 s1 s3 s2 S3 S2 S3"), 4));
    REQUIRE(a.table);
    CHECK(a.table->W_c.at(1) > 0);
    CHECK(a.table->W_c.at(1) == -a.table->W_c.at(3));
    CHECK(a.table->W_c.at(2) == 0);
}

TEST_CASE("flipping the over rule negates tables and keeps bounds") {
    std::mt19937 rng(91);
    std::vector<std::pair<Analysis, WritheTable>> runs;
    for (int trial = 0; runs.size() < 6 && trial < 60; ++trial) {
        auto d = testing::random_closed_braid(rng, 4, 12);
        if (!d) continue;
        Analysis a;
        try {
            a = analyze(*d);
        } catch (const Error&) {
            continue;
        }
        Analysis f = analyze(*d, {}, flipped(kOverRule));
        CHECK(*f.table == negated(*a.table));
        runs.emplace_back(a, *f.table);
    }
    REQUIRE(runs.size() >= 2);
    for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
        auto x = theorem_bounds(*runs[i].first.table, *runs[i + 1].first.table, true);
        auto y = theorem_bounds(runs[i].second, runs[i + 1].second, true);
        CHECK(x.bound_u == y.bound_u);
        CHECK(x.bound_c == y.bound_c);
        CHECK(*x.bound_o == *y.bound_o);
    }
}

TEST_CASE("rotating the word keeps the writhe table") {
    auto d = build_diagram(parse_morse_word("s1 s3 s2 s1 s3 s2 S3 S2 S3"), 4);
    auto base = analyze(d);
    for (int shift = 1; shift < d.sector_count(); ++shift) {
        auto r = analyze(testing::rotated(d, shift));
        CHECK(*r.table == *base.table);
    }
}
