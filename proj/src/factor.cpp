#include "balpair/factor.hpp"

#include "balpair/errors.hpp"

#include <algorithm>
#include <numeric>

namespace balpair {

namespace {

std::vector<Integer> positive_divisors(Integer n) {
    n = abs(n);
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        Integer e = n / d;
        if (e != d) large.push_back(e);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

std::size_t divisor_count(const Integer& n) { return positive_divisors(n).size(); }

RatPoly from_integers(const std::vector<Integer>& c) {
    std::vector<Rational> v;
    v.reserve(c.size());
    for (const auto& x : c) v.emplace_back(x);
    return RatPoly(std::move(v));
}

Integer eval_int(const std::vector<Integer>& c, const Integer& x) {
    Integer acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

bool poly_less(const RatPoly& a, const RatPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        int c = cmp(a.coeff(i), b.coeff(i));
        if (c != 0) return c < 0;
    }
    return false;
}

void split_irreducibles(const RatPoly& p, int degree_cap, std::vector<RatPoly>& out) {
    if (p.degree() <= 0) return;
    if (p.degree() <= 3) {
        // No rational roots by the time we get here, so degrees 2 and 3 are irreducible.
        out.push_back(p.monic());
        return;
    }
    if (p.degree() > degree_cap)
        throw DegreeCapExceeded("factor of degree " + std::to_string(p.degree()) + " exceeds cap " +
                                std::to_string(degree_cap));
    auto g = kronecker_split(p);
    if (!g) {
        out.push_back(p.monic());
        return;
    }
    split_irreducibles(*g, degree_cap, out);
    split_irreducibles(p / *g, degree_cap, out);
}

}  // namespace

std::vector<RatPoly> squarefree_decomposition(const RatPoly& p) {
    std::vector<RatPoly> out;
    if (p.degree() <= 0) return out;
    RatPoly a = p.monic();
    RatPoly b = a.derivative();
    RatPoly c = gcd(a, b);
    RatPoly w = a / c;
    RatPoly y = b / c;
    RatPoly z = y - w.derivative();
    while (w.degree() > 0) {
        RatPoly g = gcd(w, z);
        out.push_back(g);
        w = w / g;
        y = z / g;
        z = y - w.derivative();
    }
    while (!out.empty() && out.back().degree() == 0) out.pop_back();
    return out;
}

std::vector<Rational> rational_roots(const RatPoly& p) {
    std::vector<Rational> roots;
    if (p.degree() <= 0) return roots;
    std::vector<Integer> c = p.primitive_integer();
    std::size_t low = 0;
    while (low < c.size() && sgn(c[low]) == 0) ++low;
    if (low > 0) roots.emplace_back(0);
    std::vector<Integer> trimmed(c.begin() + static_cast<std::ptrdiff_t>(low), c.end());
    if (trimmed.size() >= 2) {
        auto nums = positive_divisors(trimmed.front());
        auto dens = positive_divisors(trimmed.back());
        RatPoly q = from_integers(trimmed);
        for (const auto& n : nums)
            for (const auto& d : dens)
                for (int s : {1, -1}) {
                    Rational r(s * n, d);
                    r.canonicalize();
                    if (r.get_den() != d) continue;  // visited in lowest terms already
                    if (sgn(q.eval(r)) == 0) roots.push_back(r);
                }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::optional<RatPoly> kronecker_split(const RatPoly& p) {
    std::vector<Integer> f = p.primitive_integer();
    const int d = static_cast<int>(f.size()) - 1;
    if (d < 4) return std::nullopt;

    // Evaluation points with the fewest divisors keep the search small.
    struct Point {
        Integer x, fx;
        std::size_t tau;
    };
    std::vector<Point> pts;
    for (long x = 0; x <= 40; ++x)
        for (long s : {1L, -1L}) {
            if (x == 0 && s == -1) continue;
            Integer xi = s * x;
            Integer fx = eval_int(f, xi);
            if (fx == 0) continue;
            pts.push_back({xi, fx, divisor_count(fx)});
        }
    std::stable_sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.tau < b.tau; });

    const Integer& lead = f.back();
    for (int e = 2; e <= d / 2; ++e) {
        const std::size_t m = static_cast<std::size_t>(e) + 1;
        std::vector<Point> use(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(m));
        std::vector<Point> check(pts.begin() + static_cast<std::ptrdiff_t>(m),
                                 pts.begin() + static_cast<std::ptrdiff_t>(std::min(pts.size(), m + 6)));

        // Lagrange basis over the chosen points.
        std::vector<RatPoly> basis(m);
        for (std::size_t i = 0; i < m; ++i) {
            RatPoly num = RatPoly::constant(1);
            Rational den = 1;
            for (std::size_t j = 0; j < m; ++j) {
                if (j == i) continue;
                num = num * RatPoly::linear_root(Rational(use[j].x));
                den *= Rational(use[i].x - use[j].x);
            }
            basis[i] = (1 / den) * num;
        }

        std::vector<std::vector<Integer>> choices(m);
        for (std::size_t i = 0; i < m; ++i) {
            for (const auto& v : positive_divisors(use[i].fx)) {
                choices[i].push_back(v);
                if (i > 0) choices[i].push_back(-v);  // factor fixed up to sign
            }
        }

        std::vector<std::size_t> idx(m, 0);
        while (true) {
            RatPoly g;
            for (std::size_t i = 0; i < m; ++i) g = g + Rational(choices[i][idx[i]]) * basis[i];
            bool ok = g.degree() == e;
            if (ok) {
                for (const auto& c : g.coeffs())
                    if (c.get_den() != 1) {
                        ok = false;
                        break;
                    }
            }
            if (ok && lead % g.leading().get_num() != 0) ok = false;
            if (ok) {
                for (const auto& pt : check) {
                    Rational gx = g.eval(Rational(pt.x));
                    if (sgn(gx) == 0 || pt.fx % gx.get_num() != 0) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok && (p % g).is_zero()) return g.monic();

            std::size_t k = 0;
            while (k < m && ++idx[k] == choices[k].size()) {
                idx[k] = 0;
                ++k;
            }
            if (k == m) break;
        }
    }
    return std::nullopt;
}

std::vector<Factor> factor_poly(const RatPoly& p, int degree_cap) {
    if (p.is_zero()) throw DivisionByZero();
    std::vector<Factor> out;
    auto parts = squarefree_decomposition(p);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        RatPoly part = parts[i];
        if (part.degree() <= 0) continue;
        const int mult = static_cast<int>(i) + 1;
        for (const auto& r : rational_roots(part)) {
            RatPoly lin = RatPoly::linear_root(r);
            out.push_back({lin, mult});
            part = part / lin;
        }
        std::vector<RatPoly> irr;
        split_irreducibles(part, degree_cap, irr);
        for (auto& q : irr) out.push_back({std::move(q), mult});
    }
    std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
        if (a.poly == b.poly) return a.multiplicity < b.multiplicity;
        return poly_less(a.poly, b.poly);
    });
    return out;
}

RatPoly cyclotomic(int k) {
    RatPoly num = RatPoly::monomial(1, k) - RatPoly::constant(1);
    for (int d = 1; d < k; ++d)
        if (k % d == 0) num = num / cyclotomic(d);
    return num;
}

std::optional<int> cyclotomic_index(const RatPoly& f) {
    const int deg = f.degree();
    if (deg < 1) return std::nullopt;
    // phi(k) >= sqrt(k/2), so phi(k) == deg forces k <= 2 deg^2.
    for (int k = 1; k <= 2 * deg * deg + 2; ++k) {
        int phi = 0;
        for (int j = 1; j <= k; ++j)
            if (std::gcd(j, k) == 1) ++phi;
        if (phi != deg) continue;
        if (cyclotomic(k) == f.monic()) return k;
    }
    return std::nullopt;
}

RatPoly expand(const std::vector<Factor>& factors) {
    RatPoly out = RatPoly::constant(1);
    for (const auto& f : factors) out = out * pow(f.poly, f.multiplicity);
    return out;
}

}  // namespace balpair
