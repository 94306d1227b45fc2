#pragma once

#include "balpair/poly.hpp"

#include <vector>

namespace balpair {

/// Sturm sequence of a squarefree polynomial.
class SturmChain {
public:
    explicit SturmChain(const RatPoly& squarefree);

    int sign_changes(const Rational& x) const;
    int sign_changes_neg_inf() const;
    int sign_changes_pos_inf() const;
    /// Number of distinct real roots in (a, b].
    int count(const Rational& a, const Rational& b) const;
    int count_real() const;

private:
    std::vector<RatPoly> chain_;
};

/// Closed rational interval. lo == hi marks an exactly known point.
struct RatInterval {
    Rational lo, hi;
    bool is_point() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    friend bool operator==(const RatInterval&, const RatInterval&) = default;
};

/// Integer bound B with |z| < B for every complex root z.
Integer cauchy_bound(const RatPoly& p);

/// Isolating intervals for the distinct real roots of a squarefree
/// polynomial, in increasing order. Each interval either is a point (an
/// exact rational root) or has p(lo), p(hi) nonzero of opposite sign with
/// exactly one root strictly inside.
std::vector<RatInterval> isolate_real_roots(const RatPoly& squarefree);

/// Shrink an isolating interval of a sign-change root by bisection until its
/// width is at most `width`. Point intervals are returned unchanged.
RatInterval refine_root(const RatPoly& p, RatInterval iv, const Rational& width);

/// Interval enclosure of p over iv using Horner's rule in interval arithmetic.
RatInterval eval_interval(const std::vector<Rational>& coeffs, const RatInterval& iv);

}  // namespace balpair
