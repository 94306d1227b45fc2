#include "balpair/roots.hpp"

#include <algorithm>

namespace balpair {

namespace {

int sign_at_neg_inf(const RatPoly& p) {
    int s = sgn(p.leading());
    return (p.degree() % 2 == 0) ? s : -s;
}

int count_changes(const std::vector<int>& signs) {
    int changes = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

}  // namespace

SturmChain::SturmChain(const RatPoly& p) {
    if (p.is_zero()) return;
    chain_.push_back(p);
    chain_.push_back(p.derivative());
    while (!chain_.back().is_zero()) {
        RatPoly r = chain_[chain_.size() - 2] % chain_.back();
        chain_.push_back(-r);
    }
    chain_.pop_back();
}

int SturmChain::sign_changes(const Rational& x) const {
    std::vector<int> s;
    s.reserve(chain_.size());
    for (const auto& q : chain_) s.push_back(sgn(q.eval(x)));
    return count_changes(s);
}

int SturmChain::sign_changes_neg_inf() const {
    std::vector<int> s;
    for (const auto& q : chain_) s.push_back(sign_at_neg_inf(q));
    return count_changes(s);
}

int SturmChain::sign_changes_pos_inf() const {
    std::vector<int> s;
    for (const auto& q : chain_) s.push_back(sgn(q.leading()));
    return count_changes(s);
}

int SturmChain::count(const Rational& a, const Rational& b) const { return sign_changes(a) - sign_changes(b); }

int SturmChain::count_real() const { return sign_changes_neg_inf() - sign_changes_pos_inf(); }

Integer cauchy_bound(const RatPoly& p) {
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeff(i) / p.leading())));
    Integer c = m.get_num() / m.get_den();
    return c + 2;
}

std::vector<RatInterval> isolate_real_roots(const RatPoly& p) {
    std::vector<RatInterval> out;
    if (p.degree() < 1) return out;
    SturmChain chain(p);
    Integer b = cauchy_bound(p);
    std::vector<RatInterval> work{{Rational(-b), Rational(b)}};
    while (!work.empty()) {
        RatInterval iv = work.back();
        work.pop_back();
        int n = chain.count(iv.lo, iv.hi);
        if (n == 0) continue;
        if (n == 1) {
            if (sgn(p.eval(iv.hi)) == 0) {
                out.push_back({iv.hi, iv.hi});
            } else if (sgn(p.eval(iv.lo)) != 0) {
                out.push_back(iv);
            } else {
                // lo is a root belonging to a neighbouring interval; nudge inward.
                work.push_back({iv.mid(), iv.hi});
                work.push_back({iv.lo, iv.mid()});
            }
            continue;
        }
        Rational m = iv.mid();
        work.push_back({iv.lo, m});
        work.push_back({m, iv.hi});
    }
    std::sort(out.begin(), out.end(), [](const RatInterval& a, const RatInterval& b) { return a.lo < b.lo; });
    return out;
}

RatInterval refine_root(const RatPoly& p, RatInterval iv, const Rational& width) {
    if (iv.is_point()) return iv;
    int slo = sgn(p.eval(iv.lo));
    while (iv.width() > width) {
        Rational m = iv.mid();
        int sm = sgn(p.eval(m));
        if (sm == 0) return {m, m};
        if (sm == slo)
            iv.lo = m;
        else
            iv.hi = m;
    }
    return iv;
}

RatInterval eval_interval(const std::vector<Rational>& coeffs, const RatInterval& iv) {
    if (coeffs.empty()) return {Rational(0), Rational(0)};
    RatInterval acc{coeffs.back(), coeffs.back()};
    for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) {
        Rational a = acc.lo * iv.lo, b = acc.lo * iv.hi, c = acc.hi * iv.lo, d = acc.hi * iv.hi;
        acc.lo = std::min({a, b, c, d}) + *it;
        acc.hi = std::max({a, b, c, d}) + *it;
    }
    return acc;
}

}  // namespace balpair
