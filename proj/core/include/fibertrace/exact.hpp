#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace fibertrace {

using Rational = mpq_class;

int sign(const Rational& q);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

struct Vec2 {
    Rational x;
    Rational y;
};

Vec2 operator+(const Vec2& a, const Vec2& b);
Vec2 operator-(const Vec2& a, const Vec2& b);
Vec2 operator*(const Rational& s, const Vec2& a);
bool operator==(const Vec2& a, const Vec2& b);
Rational cross(const Vec2& a, const Vec2& b);
Rational dot(const Vec2& a, const Vec2& b);

// Polynomial of degree at most two in phi.
struct Poly2 {
    Rational c0;
    Rational c1;
    Rational c2;

    bool is_zero() const;
    Rational operator()(const Rational& phi) const;
    Poly2 derivative() const;
};

Poly2 operator+(const Poly2& a, const Poly2& b);
Poly2 operator-(const Poly2& a, const Poly2& b);
Poly2 operator*(const Rational& s, const Poly2& p);

// Point moving affinely in phi: a + b * phi.
struct Affine2 {
    Vec2 a;
    Vec2 b;

    Vec2 at(const Rational& phi) const;
    static Affine2 through(const Vec2& p0, const Rational& phi0, const Vec2& p1, const Rational& phi1);
};

Affine2 operator-(const Affine2& p, const Affine2& q);
Poly2 cross(const Affine2& u, const Affine2& v);
Poly2 dot(const Affine2& u, const Affine2& v);

// a + b * sqrt(d) with d >= 0. When b == 0 the value is rational and d is ignored.
class QuadSurd {
public:
    QuadSurd() = default;
    QuadSurd(Rational value);  // NOLINT(google-explicit-constructor)
    QuadSurd(Rational a, Rational b, Rational d);

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& d() const { return d_; }
    bool is_rational() const { return b_ == 0; }

    int sign() const;
    double to_double() const;
    std::string to_string() const;

    // Evaluates p at this number; the result lives in the same field.
    QuadSurd eval(const Poly2& p) const;

    // Rational interval [lo, hi] of width at most `width` containing the value.
    std::pair<Rational, Rational> isolate(const Rational& width) const;

private:
    Rational a_;
    Rational b_;
    Rational d_;
};

int compare(const QuadSurd& x, const QuadSurd& y);
inline bool operator<(const QuadSurd& x, const QuadSurd& y) { return compare(x, y) < 0; }
inline bool operator==(const QuadSurd& x, const QuadSurd& y) { return compare(x, y) == 0; }
inline bool operator!=(const QuadSurd& x, const QuadSurd& y) { return compare(x, y) != 0; }
inline bool operator<=(const QuadSurd& x, const QuadSurd& y) { return compare(x, y) <= 0; }

QuadSurd operator-(const QuadSurd& x, const Rational& r);

struct RootScan {
    std::vector<QuadSurd> interior;  // simple roots strictly inside (lo, hi), ascending
    std::vector<QuadSurd> at_boundary;
    bool multiple = false;            // a double root lies in [lo, hi]
    bool identically_zero = false;
};

// Real roots of p in the closed interval [lo, hi].
RootScan scan_roots(const Poly2& p, const Rational& lo, const Rational& hi);

bool is_rational_square(const Rational& q);
Rational rational_sqrt(const Rational& q);

}  // namespace fibertrace
