#include "balpair/number_field.hpp"

#include "balpair/errors.hpp"

namespace balpair {

NumberField::NumberField(RatPoly min_poly, RatInterval interval)
    : min_poly_(std::move(min_poly)), interval_(std::move(interval)), refined_(interval_) {}

FieldPtr NumberField::create(const RatPoly& min_poly, const RatInterval& interval) {
    if (min_poly.degree() < 1) throw InvariantViolation("minimal polynomial must have positive degree");
    RatPoly m = min_poly.monic();
    if (m.degree() == 1) {
        Rational r = -m.coeff(0);
        return FieldPtr(new NumberField(std::move(m), RatInterval{r, r}));
    }
    if (interval.is_point()) {
        if (sgn(m.eval(interval.lo)) != 0) throw InvariantViolation("point interval is not a root");
    } else {
        SturmChain chain(m);
        if (chain.count(interval.lo, interval.hi) != 1 || sgn(m.eval(interval.hi)) == 0 ||
            sgn(m.eval(interval.lo)) == 0)
            throw InvariantViolation("interval does not isolate exactly one root of " + m.to_string());
    }
    return FieldPtr(new NumberField(std::move(m), interval));
}

FieldPtr NumberField::rationals() {
    static const FieldPtr q = create(RatPoly{0, 1}, RatInterval{Rational(0), Rational(0)});
    return q;
}

RatInterval NumberField::enclosure(const Rational& width) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (refined_.width() > width) refined_ = refine_root(min_poly_, refined_, width);
    return refined_;
}

std::string NumberField::approx(int digits) const {
    Rational eps(1);
    Integer ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(digits + 2));
    eps /= Rational(ten);
    return to_decimal(enclosure(eps).mid(), digits);
}

double NumberField::approx_double() const {
    Rational eps(1, 1);
    eps /= Rational(Integer(1) << 70);
    return enclosure(eps).mid().get_d();
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (!(a->min_poly() == b->min_poly())) return false;
    if (a->is_rational()) return true;
    // Same polynomial; same root iff the isolating intervals overlap after refinement.
    RatInterval x = a->isolating_interval(), y = b->isolating_interval();
    return !(x.hi < y.lo || y.hi < x.lo) && SturmChain(a->min_poly()).count(std::max(x.lo, y.lo), std::min(x.hi, y.hi)) == 1;
}

FieldScalar::FieldScalar(FieldPtr field, std::vector<Rational> coeffs) : field_(std::move(field)) {
    *this = from_poly(field_, RatPoly(std::move(coeffs)));
}

FieldScalar::FieldScalar(FieldPtr field, const Rational& value)
    : FieldScalar(std::move(field), std::vector<Rational>{value}) {}

FieldScalar FieldScalar::generator(const FieldPtr& field) { return from_poly(field, RatPoly{0, 1}); }

FieldScalar FieldScalar::from_poly(const FieldPtr& field, const RatPoly& p) {
    FieldScalar s;
    s.field_ = field;
    RatPoly r = p % field->min_poly();
    s.c_.assign(static_cast<std::size_t>(field->degree()), Rational(0));
    for (int i = 0; i <= r.degree(); ++i) s.c_[static_cast<std::size_t>(i)] = r.coeff(i);
    return s;
}

RatPoly FieldScalar::as_poly() const { return RatPoly(c_); }

void FieldScalar::check_same_field(const FieldScalar& other) const {
    if (!same_field(field_, other.field_)) throw InvariantViolation("field scalars from different fields");
}

bool FieldScalar::is_zero() const {
    for (const auto& q : c_)
        if (sgn(q) != 0) return false;
    return true;
}

bool FieldScalar::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) return false;
    return true;
}

Rational FieldScalar::rational_value() const {
    if (!is_rational()) throw InvariantViolation("field scalar is irrational");
    // In Q(0) the constant coefficient is the value; otherwise theta does not appear.
    return c_.empty() ? Rational(0) : c_[0];
}

RatInterval FieldScalar::enclose(const Rational& w) const {
    return eval_interval(c_, field_->enclosure(w));
}

int FieldScalar::sign() const {
    if (is_zero()) return 0;
    if (is_rational()) return sgn(c_[0]);
    Rational w = field_->isolating_interval().width() / 16;
    while (true) {
        RatInterval e = enclose(w);
        if (sgn(e.lo) > 0) return 1;
        if (sgn(e.hi) < 0) return -1;
        w /= 256;
    }
}

double FieldScalar::approx() const {
    if (is_rational()) return c_[0].get_d();
    Rational w(1);
    w /= Rational(Integer(1) << 80);
    return enclose(w).mid().get_d();
}

std::string FieldScalar::approx_string(int digits) const {
    if (is_rational()) return to_decimal(c_[0], digits);
    Integer ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(digits + 4));
    // Coefficients can amplify the error of theta; shrink until the value is pinned.
    Rational w(1);
    w /= Rational(ten);
    Rational target(1);
    target /= Rational(ten);
    while (true) {
        RatInterval e = enclose(w);
        if (e.width() <= target) return to_decimal(e.mid(), digits);
        w /= 1024;
    }
}

FieldScalar FieldScalar::inverse() const {
    if (is_zero()) throw DivisionByZero();
    auto [g, s] = half_extended_gcd(as_poly(), field_->min_poly());
    if (g.degree() != 0) throw InvariantViolation("minimal polynomial is reducible");
    return from_poly(field_, s);
}

FieldScalar operator+(const FieldScalar& a, const FieldScalar& b) {
    a.check_same_field(b);
    FieldScalar s = a;
    for (std::size_t i = 0; i < s.c_.size(); ++i) s.c_[i] += b.c_[i];
    return s;
}

FieldScalar operator-(const FieldScalar& a, const FieldScalar& b) {
    a.check_same_field(b);
    FieldScalar s = a;
    for (std::size_t i = 0; i < s.c_.size(); ++i) s.c_[i] -= b.c_[i];
    return s;
}

FieldScalar FieldScalar::operator-() const {
    FieldScalar s = *this;
    for (auto& q : s.c_) q = -q;
    return s;
}

FieldScalar operator*(const FieldScalar& a, const FieldScalar& b) {
    a.check_same_field(b);
    return FieldScalar::from_poly(a.field_, a.as_poly() * b.as_poly());
}

FieldScalar operator/(const FieldScalar& a, const FieldScalar& b) { return a * b.inverse(); }

bool operator==(const FieldScalar& a, const FieldScalar& b) {
    return same_field(a.field_, b.field_) && a.c_ == b.c_;
}

std::string FieldScalar::to_string(const std::string& var) const {
    return as_poly().to_string(var);
}

}  // namespace balpair
