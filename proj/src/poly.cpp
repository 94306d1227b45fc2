#include "balpair/poly.hpp"

#include "balpair/errors.hpp"

#include <algorithm>

namespace balpair {

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    for (auto& q : c_) q.canonicalize();
    trim();
}

RatPoly::RatPoly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

RatPoly RatPoly::constant(const Rational& c) { return RatPoly(std::vector<Rational>{c}); }

RatPoly RatPoly::monomial(const Rational& c, int degree) {
    std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return RatPoly(std::move(v));
}

RatPoly RatPoly::linear_root(const Rational& r) { return RatPoly(std::vector<Rational>{-r, Rational(1)}); }

void RatPoly::trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational RatPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
    return c_[static_cast<std::size_t>(i)];
}

Rational RatPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RatPoly RatPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return RatPoly(std::move(d));
}

RatPoly RatPoly::monic() const {
    if (is_zero()) return {};
    Rational lc = leading();
    std::vector<Rational> v(c_);
    for (auto& x : v) x /= lc;
    return RatPoly(std::move(v));
}

RatPoly RatPoly::reciprocal() const {
    std::vector<Rational> v(c_.rbegin(), c_.rend());
    return RatPoly(std::move(v));
}

std::vector<Integer> RatPoly::primitive_integer() const {
    if (is_zero()) return {};
    Integer den = 1;
    for (const auto& q : c_) den = lcm(den, q.get_den());
    std::vector<Integer> out;
    out.reserve(c_.size());
    Integer g = 0;
    for (const auto& q : c_) {
        Integer v = q.get_num() * (den / q.get_den());
        g = gcd(g, v);
        out.push_back(v);
    }
    if (sgn(out.back()) < 0) g = -g;
    for (auto& v : out) v /= g;
    return out;
}

RatPoly RatPoly::operator-() const {
    std::vector<Rational> v(c_);
    for (auto& x : v) x = -x;
    return RatPoly(std::move(v));
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return RatPoly(std::move(v));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + (-b); }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (sgn(a.c_[i]) == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return RatPoly(std::move(v));
}

RatPoly operator*(const Rational& s, const RatPoly& p) {
    std::vector<Rational> v(p.c_);
    for (auto& x : v) x *= s;
    return RatPoly(std::move(v));
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (a.degree() < b.degree()) return {RatPoly{}, a};
    std::vector<Rational> rem(a.c_);
    std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
    const Rational& lc = b.leading();
    const int db = b.degree();
    for (int k = a.degree(); k >= db; --k) {
        Rational t = rem[static_cast<std::size_t>(k)] / lc;
        quo[static_cast<std::size_t>(k - db)] = t;
        if (sgn(t) == 0) continue;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= t * b.c_[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(db));
    return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

std::string RatPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const Rational& q = c_[static_cast<std::size_t>(k)];
        if (sgn(q) == 0) continue;
        bool neg = sgn(q) < 0;
        Rational mag = abs(q);
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        bool unit = mag == 1;
        if (k == 0 || !unit) out += balpair::to_string(mag);
        if (k > 0) {
            if (!unit) out += "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

RatPoly gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::pair<RatPoly, RatPoly> half_extended_gcd(const RatPoly& a, const RatPoly& m) {
    // Invariant: s0 * a == r0 and s1 * a == r1 modulo m.
    RatPoly r0 = m, r1 = a % m;
    RatPoly s0, s1 = RatPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        RatPoly s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.is_zero()) return {RatPoly{}, RatPoly{}};
    Rational inv = 1 / r0.leading();
    return {inv * r0, (inv * s0) % m};
}

RatPoly pow(const RatPoly& p, int e) {
    RatPoly out = RatPoly::constant(1);
    for (int i = 0; i < e; ++i) out = out * p;
    return out;
}

}  // namespace balpair
