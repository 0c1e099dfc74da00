#include "fibertrace/exact.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fibertrace {

int sign(const Rational& q) { return sgn(q); }

Rational parse_rational(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto dot_pos = s.find('.');
    if (dot_pos != std::string::npos) {
        std::string int_part = s.substr(0, dot_pos);
        std::string frac_part = s.substr(dot_pos + 1);
        bool negative = !int_part.empty() && int_part[0] == '-';
        if (negative || (!int_part.empty() && int_part[0] == '+')) int_part.erase(0, 1);
        if (int_part.empty()) int_part = "0";
        auto digits = [](const std::string& t) {
            return std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); });
        };
        if (!digits(int_part) || !digits(frac_part)) throw std::invalid_argument("bad rational: " + text);
        mpz_class scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
        mpz_class num(int_part + frac_part, 10);
        Rational q(num, scale);
        q.canonicalize();
        return negative ? Rational(-q) : q;
    }
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator*(const Rational& s, const Vec2& a) { return {s * a.x, s * a.y}; }
bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
Rational cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
Rational dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

bool Poly2::is_zero() const { return c0 == 0 && c1 == 0 && c2 == 0; }

Rational Poly2::operator()(const Rational& phi) const { return c0 + phi * (c1 + phi * c2); }

Poly2 Poly2::derivative() const { return {c1, 2 * c2, 0}; }

Poly2 operator+(const Poly2& a, const Poly2& b) { return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2}; }
Poly2 operator-(const Poly2& a, const Poly2& b) { return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2}; }
Poly2 operator*(const Rational& s, const Poly2& p) { return {s * p.c0, s * p.c1, s * p.c2}; }

Vec2 Affine2::at(const Rational& phi) const { return a + phi * b; }

Affine2 Affine2::through(const Vec2& p0, const Rational& phi0, const Vec2& p1, const Rational& phi1) {
    Rational inv = 1 / Rational(phi1 - phi0);
    Vec2 b = inv * (p1 - p0);
    return {p0 - phi0 * b, b};
}

Affine2 operator-(const Affine2& p, const Affine2& q) { return {p.a - q.a, p.b - q.b}; }

Poly2 cross(const Affine2& u, const Affine2& v) {
    return {cross(u.a, v.a), cross(u.a, v.b) + cross(u.b, v.a), cross(u.b, v.b)};
}

Poly2 dot(const Affine2& u, const Affine2& v) {
    return {dot(u.a, v.a), dot(u.a, v.b) + dot(u.b, v.a), dot(u.b, v.b)};
}

bool is_rational_square(const Rational& q) {
    if (q < 0) return false;
    return mpz_perfect_square_p(q.get_num_mpz_t()) != 0 && mpz_perfect_square_p(q.get_den_mpz_t()) != 0;
}

Rational rational_sqrt(const Rational& q) {
    mpz_class n = sqrt(mpz_class(q.get_num()));
    mpz_class d = sqrt(mpz_class(q.get_den()));
    Rational r(n, d);
    r.canonicalize();
    return r;
}

QuadSurd::QuadSurd(Rational value) : a_(std::move(value)), b_(0), d_(0) {}

QuadSurd::QuadSurd(Rational a, Rational b, Rational d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    if (d_ < 0) throw std::invalid_argument("negative radicand");
    if (b_ == 0 || d_ == 0) {
        b_ = 0;
        d_ = 0;
    } else if (is_rational_square(d_)) {
        a_ += b_ * rational_sqrt(d_);
        b_ = 0;
        d_ = 0;
    }
}

int QuadSurd::sign() const {
    int sa = sgn(a_);
    int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 with b^2 d
    int c = cmp(Rational(a_ * a_), Rational(b_ * b_ * d_));
    if (c > 0) return sa;
    if (c < 0) return sb;
    return 0;
}

double QuadSurd::to_double() const {
    if (is_rational()) return a_.get_d();
    return a_.get_d() + b_.get_d() * std::sqrt(d_.get_d());
}

std::string QuadSurd::to_string() const {
    if (is_rational()) return a_.get_str();
    std::ostringstream out;
    out << a_.get_str() << (b_ < 0 ? " - " : " + ") << Rational(abs(b_)).get_str() << "*sqrt(" << d_.get_str() << ")";
    return out.str();
}

QuadSurd QuadSurd::eval(const Poly2& p) const {
    if (is_rational()) return QuadSurd(p(a_));
    Rational rational_part = p.c0 + p.c1 * a_ + p.c2 * (a_ * a_ + b_ * b_ * d_);
    Rational surd_part = p.c1 * b_ + 2 * p.c2 * a_ * b_;
    return {rational_part, surd_part, d_};
}

std::pair<Rational, Rational> QuadSurd::isolate(const Rational& width) const {
    if (is_rational()) return {a_, a_};
    Rational lo(std::floor(to_double()) - 1);
    Rational hi(std::ceil(to_double()) + 1);
    while (compare(QuadSurd(lo), *this) >= 0) lo -= 1;
    while (compare(QuadSurd(hi), *this) <= 0) hi += 1;
    while (hi - lo > width) {
        Rational mid = (lo + hi) / 2;
        if (compare(QuadSurd(mid), *this) < 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {lo, hi};
}

int compare(const QuadSurd& x, const QuadSurd& y) {
    Rational da = x.a() - y.a();
    if (x.is_rational() && y.is_rational()) return sgn(da);
    if (y.is_rational()) return QuadSurd(da, x.b(), x.d()).sign();
    if (x.is_rational()) return QuadSurd(da, -y.b(), y.d()).sign();
    if (x.d() == y.d()) return QuadSurd(da, x.b() - y.b(), x.d()).sign();
    // sign(X - Z) with X = da + xb sqrt(xd), Z = yb sqrt(yd)
    QuadSurd big_x(da, x.b(), x.d());
    int sx = big_x.sign();
    int sz = sgn(y.b());
    if (sx == 0) return -sz;
    if (sx != sz) return sx;
    QuadSurd diff_sq(da * da + x.b() * x.b() * x.d() - y.b() * y.b() * y.d(), 2 * da * x.b(), x.d());
    return sx * diff_sq.sign();
}

QuadSurd operator-(const QuadSurd& x, const Rational& r) { return {x.a() - r, x.b(), x.d()}; }

RootScan scan_roots(const Poly2& p, const Rational& lo, const Rational& hi) {
    RootScan scan;
    if (p.is_zero()) {
        scan.identically_zero = true;
        return scan;
    }
    std::vector<QuadSurd> roots;
    bool double_root = false;
    if (p.c2 == 0) {
        if (p.c1 == 0) return scan;
        roots.emplace_back(Rational(-p.c0 / p.c1));
    } else {
        Rational disc = p.c1 * p.c1 - 4 * p.c2 * p.c0;
        Rational centre = -p.c1 / (2 * p.c2);
        if (disc < 0) return scan;
        if (disc == 0) {
            roots.emplace_back(centre);
            double_root = true;
        } else {
            Rational half = 1 / (2 * abs(p.c2));
            roots.emplace_back(centre, -half, disc);
            roots.emplace_back(centre, half, disc);
        }
    }
    for (const auto& r : roots) {
        int c_lo = compare(r, QuadSurd(lo));
        int c_hi = compare(r, QuadSurd(hi));
        if (c_lo < 0 || c_hi > 0) continue;
        if (double_root) scan.multiple = true;
        if (c_lo == 0 || c_hi == 0) {
            scan.at_boundary.push_back(r);
        } else if (!double_root) {
            scan.interior.push_back(r);
        }
    }
    return scan;
}

}  // namespace fibertrace
