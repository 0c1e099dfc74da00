#pragma once

#include <functional>
#include <string>
#include <utility>

#include "fibertrace/diagram.hpp"
#include "fibertrace/errors.hpp"
#include "fibertrace/exact.hpp"

namespace fibertrace::detail {

class DegeneracyError : public Error {
public:
    DegeneracyError(std::string condition, int sector, Rational lo, Rational hi, const std::string& what);
    const std::string& condition() const { return condition_; }
    int sector() const { return sector_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    const std::string& detail() const { return what_; }

private:
    std::string condition_;
    int sector_;
    Rational lo_;
    Rational hi_;
    std::string what_;
};

// The two pieces merging at the sector's cap or cup, or {-1,-1}.
std::pair<int, int> cusp_pieces(const Sector& sector);

// True when `root` is the cusp point of the sector and the polynomial involves the merging pair.
bool cusp_boundary(const Sector& sector, int half, const QuadSurd& root, bool involves_cusp_pair);

// Emits the simple interior roots of `poly` on the half, throwing DegeneracyError otherwise.
void collect_roots(const Poly2& poly, const Sector& sector, int half, bool involves_cusp_pair, const std::string& label,
                   const std::function<void(const QuadSurd&)>& emit);

}  // namespace fibertrace::detail
