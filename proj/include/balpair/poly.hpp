#pragma once

#include "balpair/rational.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace balpair {

/// Univariate polynomial over the rationals. Coefficients are stored
/// lowest degree first; trailing zeros are always stripped, so the zero
/// polynomial has no coefficients.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs);
    RatPoly(std::initializer_list<long> coeffs);

    static RatPoly constant(const Rational& c);
    static RatPoly monomial(const Rational& c, int degree);
    /// x - r
    static RatPoly linear_root(const Rational& r);

    bool is_zero() const noexcept { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const Rational& leading() const { return c_.back(); }
    Rational coeff(int i) const;
    const std::vector<Rational>& coeffs() const noexcept { return c_; }

    Rational eval(const Rational& x) const;
    RatPoly derivative() const;
    RatPoly monic() const;
    /// x^deg * p(1/x)
    RatPoly reciprocal() const;

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    std::vector<Integer> primitive_integer() const;

    RatPoly operator-() const;
    friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator*(const Rational& s, const RatPoly& p);
    friend bool operator==(const RatPoly& a, const RatPoly& b) = default;

    /// Euclidean division; throws DivisionByZero for a zero divisor.
    friend std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator%(const RatPoly& a, const RatPoly& b) { return divmod(a, b).second; }
    friend RatPoly operator/(const RatPoly& a, const RatPoly& b) { return divmod(a, b).first; }

    /// Human-readable form in x, highest degree first, e.g. "x^2 - 3*x + 1".
    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
RatPoly gcd(RatPoly a, RatPoly b);

/// Returns (g, s) with s * a == g (mod m), g = gcd(a, m) monic.
std::pair<RatPoly, RatPoly> half_extended_gcd(const RatPoly& a, const RatPoly& m);

RatPoly pow(const RatPoly& p, int e);

}  // namespace balpair
