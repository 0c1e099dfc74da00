#include <doctest.h>

#include <cmath>
#include <random>

#include "fibertrace/exact.hpp"

using namespace fibertrace;

namespace {

Rational random_rational(std::mt19937& rng, int span = 40) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, 12);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

long double value(const QuadSurd& x) {
    return x.a().get_d() + static_cast<long double>(x.b().get_d()) * std::sqrt(static_cast<long double>(x.d().get_d()));
}

}  // namespace

TEST_CASE("parse_rational accepts integers, fractions and decimals") {
    CHECK(parse_rational("7") == 7);
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-0.125") == Rational(-1, 8));
    CHECK(parse_rational("6/8") == Rational(3, 4));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
    CHECK(to_string(Rational(2, 3)) == "2/3");
}

TEST_CASE("square radicands fold into rationals") {
    QuadSurd x(1, 1, 4);
    CHECK(x.is_rational());
    CHECK(x == QuadSurd(Rational(3)));
    CHECK(is_rational_square(Rational(9, 16)));
    CHECK(rational_sqrt(Rational(9, 16)) == Rational(3, 4));
    CHECK_FALSE(is_rational_square(Rational(2)));
}

TEST_CASE("surd sign and order agree with long double evaluation") {
    std::mt19937 rng(7);
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        QuadSurd x(random_rational(rng), random_rational(rng), Rational(std::uniform_int_distribution<int>(2, 30)(rng)));
        QuadSurd y(random_rational(rng), random_rational(rng), Rational(std::uniform_int_distribution<int>(2, 30)(rng)));
        long double vx = value(x), vy = value(y);
        if (std::abs(vx) > 1e-9) CHECK(x.sign() == (vx > 0 ? 1 : -1));
        if (std::abs(vx - vy) > 1e-9) {
            CHECK(compare(x, y) == (vx < vy ? -1 : 1));
            ++checked;
        }
        CHECK(compare(x, x) == 0);
    }
    CHECK(checked > 1900);
}

TEST_CASE("polynomial evaluation stays exact") {
    std::mt19937 rng(11);
    for (int i = 0; i < 500; ++i) {
        Poly2 p{random_rational(rng), random_rational(rng), random_rational(rng)};
        QuadSurd x(random_rational(rng, 5), random_rational(rng, 5), Rational(std::uniform_int_distribution<int>(2, 11)(rng)));
        long double vx = value(x);
        long double want = p.c0.get_d() + p.c1.get_d() * vx + p.c2.get_d() * vx * vx;
        CHECK(static_cast<double>(value(x.eval(p))) == doctest::Approx(static_cast<double>(want)).epsilon(1e-9));
    }
}

TEST_CASE("isolating intervals contain the value") {
    QuadSurd x(Rational(1, 2), Rational(1), Rational(2));
    auto [lo, hi] = x.isolate(Rational(1, 1 << 20));
    CHECK(hi - lo <= Rational(1, 1 << 20));
    CHECK(QuadSurd(lo) <= x);
    CHECK(x <= QuadSurd(hi));
}

TEST_CASE("root scan classifies roots") {
    // (phi - 1/3)(phi - 2/3)
    Poly2 two{Rational(2, 9), Rational(-1), Rational(1)};
    auto scan = scan_roots(two, 0, 1);
    REQUIRE(scan.interior.size() == 2);
    CHECK(scan.interior[0] == QuadSurd(Rational(1, 3)));
    CHECK(scan.interior[1] == QuadSurd(Rational(2, 3)));
    CHECK_FALSE(scan.multiple);

    Poly2 edge{Rational(-1, 2), Rational(1), Rational(0)};
    auto at_edge = scan_roots(edge, 0, Rational(1, 2));
    CHECK(at_edge.interior.empty());
    CHECK(at_edge.at_boundary.size() == 1);

    Poly2 twice{Rational(1, 4), Rational(-1), Rational(1)};
    CHECK(scan_roots(twice, 0, 1).multiple);
    CHECK(scan_roots(Poly2{}, 0, 1).identically_zero);

    // phi^2 - 2 on [1, 2] has the irrational root sqrt 2
    auto irr = scan_roots(Poly2{Rational(-2), Rational(0), Rational(1)}, 1, 2);
    REQUIRE(irr.interior.size() == 1);
    CHECK(irr.interior[0].to_double() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("root scan matches a sampled sign-change count") {
    std::mt19937 rng(3);
    for (int i = 0; i < 300; ++i) {
        Poly2 p{random_rational(rng), random_rational(rng), random_rational(rng)};
        auto scan = scan_roots(p, 0, 1);
        if (scan.identically_zero || scan.multiple || !scan.at_boundary.empty()) continue;
        int changes = 0;
        double prev = p(Rational(0)).get_d();
        for (int j = 1; j <= 20000; ++j) {
            double v = p(Rational(j, 20000)).get_d();
            if ((prev < 0 && v > 0) || (prev > 0 && v < 0)) ++changes;
            if (v != 0) prev = v;
        }
        CHECK(changes == static_cast<int>(scan.interior.size()));
    }
}
