#pragma once

#include "balpair/poly.hpp"
#include "balpair/roots.hpp"

#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace balpair {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// Q(theta) for a real algebraic theta, given by its monic irreducible
/// minimal polynomial and a rational interval isolating theta among the
/// real roots of that polynomial.
class NumberField {
public:
    /// Checks that `interval` isolates exactly one root (Sturm count) and
    /// normalizes `min_poly` to monic. Irreducibility is the caller's contract.
    static FieldPtr create(const RatPoly& min_poly, const RatInterval& interval);
    /// Q itself, as Q(0) with minimal polynomial x.
    static FieldPtr rationals();

    int degree() const noexcept { return min_poly_.degree(); }
    const RatPoly& min_poly() const noexcept { return min_poly_; }
    const RatInterval& isolating_interval() const noexcept { return interval_; }
    bool is_rational() const noexcept { return degree() == 1; }

    /// An enclosure of theta of width at most `width`; refinements are cached.
    RatInterval enclosure(const Rational& width) const;
    /// Decimal approximation of theta with `digits` fractional digits.
    std::string approx(int digits) const;
    double approx_double() const;

private:
    NumberField(RatPoly min_poly, RatInterval interval);

    RatPoly min_poly_;
    RatInterval interval_;
    mutable std::mutex cache_mutex_;
    mutable RatInterval refined_;
};

/// Exact element of a NumberField, stored as a polynomial in theta of
/// degree below the field degree.
class FieldScalar {
public:
    FieldScalar() = default;
    FieldScalar(FieldPtr field, std::vector<Rational> coeffs);
    FieldScalar(FieldPtr field, const Rational& value);

    static FieldScalar generator(const FieldPtr& field);

    const FieldPtr& field() const noexcept { return field_; }
    /// Always exactly field degree entries, lowest power first.
    const std::vector<Rational>& coeffs() const noexcept { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    /// Value when is_rational().
    Rational rational_value() const;
    /// -1, 0 or 1, decided exactly.
    int sign() const;
    double approx() const;
    std::string approx_string(int digits) const;

    FieldScalar inverse() const;

    friend FieldScalar operator+(const FieldScalar& a, const FieldScalar& b);
    friend FieldScalar operator-(const FieldScalar& a, const FieldScalar& b);
    friend FieldScalar operator*(const FieldScalar& a, const FieldScalar& b);
    friend FieldScalar operator/(const FieldScalar& a, const FieldScalar& b);
    FieldScalar operator-() const;
    FieldScalar& operator+=(const FieldScalar& b) { return *this = *this + b; }

    friend bool operator==(const FieldScalar& a, const FieldScalar& b);
    /// Exact three-way comparison.
    friend int compare(const FieldScalar& a, const FieldScalar& b) { return (a - b).sign(); }

    /// e.g. "1/2 + 3/2*t".
    std::string to_string(const std::string& var = "t") const;

private:
    RatPoly as_poly() const;
    static FieldScalar from_poly(const FieldPtr& field, const RatPoly& p);
    void check_same_field(const FieldScalar& other) const;
    /// Interval enclosure of the value using an enclosure of theta of width `w`.
    RatInterval enclose(const Rational& w) const;

    FieldPtr field_;
    std::vector<Rational> c_;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);

}  // namespace balpair
