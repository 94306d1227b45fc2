#include "balpair/spectrum.hpp"

#include "balpair/errors.hpp"
#include "balpair/roots.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdio>

namespace balpair {

RatPoly char_poly(const IntMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<Integer> c(n + 1);
    c[n] = 1;
    IntMatrix m(n, n);
    const IntMatrix id = IntMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m + c[n - k + 1] * id;
        Integer t = (a * m).trace();
        c[n - k] = -t / static_cast<long>(k);
    }
    std::vector<Rational> q;
    q.reserve(c.size());
    for (auto& v : c) q.emplace_back(v);
    return RatPoly(std::move(q));
}

IntMatrix eval_matrix_poly(const RatPoly& p, const IntMatrix& a) {
    const std::size_t n = a.rows();
    IntMatrix acc(n, n);
    const IntMatrix id = IntMatrix::identity(n);
    for (int i = p.degree(); i >= 0; --i) {
        const Rational& q = p.coeff(i);
        if (q.get_den() != 1) throw InvariantViolation("matrix polynomial needs integer coefficients");
        acc = acc * a + q.get_num() * id;
    }
    return acc;
}

bool is_primitive_matrix(const IntMatrix& a) {
    const std::size_t n = a.rows();
    if (n == 0) return false;
    std::vector<std::vector<char>> base(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) base[i][j] = sgn(a(i, j)) > 0;
    auto cur = base;
    const std::size_t bound = (n - 1) * (n - 1) + 1;
    for (std::size_t m = 1; m <= bound; ++m) {
        bool positive = true;
        for (const auto& row : cur)
            for (char v : row) positive = positive && v;
        if (positive) return true;
        std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (cur[i][k])
                    for (std::size_t j = 0; j < n; ++j) next[i][j] = next[i][j] || base[k][j];
        cur = std::move(next);
    }
    return false;
}

namespace {

struct LargestRoot {
    const RatPoly* poly;
    RatInterval iv;
};

/// Refines two isolating intervals of distinct reals until they separate; true iff a > b.
bool root_greater(LargestRoot& a, LargestRoot& b) {
    while (true) {
        if (a.iv.lo > b.iv.hi) return true;
        if (b.iv.lo > a.iv.hi) return false;
        if (a.iv.is_point() && b.iv.is_point()) throw InvariantViolation("coincident roots of distinct factors");
        if (!a.iv.is_point()) a.iv = refine_root(*a.poly, a.iv, a.iv.width() / 2);
        if (!b.iv.is_point()) b.iv = refine_root(*b.poly, b.iv, b.iv.width() / 2);
    }
}

}  // namespace

FieldPtr perron_field(const std::vector<Factor>& factors) {
    std::optional<LargestRoot> best;
    for (const auto& f : factors) {
        auto roots = isolate_real_roots(f.poly);
        if (roots.empty()) continue;
        LargestRoot cand{&f.poly, roots.back()};
        if (!best || root_greater(cand, *best)) best = cand;
    }
    if (!best) throw InvariantViolation("characteristic polynomial has no real root");
    return NumberField::create(*best->poly, best->iv);
}

FieldPtr perron_field(const IntMatrix& a, int degree_cap) {
    return perron_field(factor_poly(char_poly(a), degree_cap));
}

std::vector<FieldScalar> left_pf_eigenvector(const IntMatrix& a, const FieldPtr& field) {
    const std::size_t n = a.rows();
    const FieldScalar lambda = FieldScalar::generator(field);
    // Rows of (A^T - lambda I); its kernel holds the left eigenvectors of A.
    std::vector<std::vector<FieldScalar>> m(n, std::vector<FieldScalar>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            m[i][j] = FieldScalar(field, Rational(a(j, i)));
            if (i == j) m[i][j] = m[i][j] - lambda;
        }

    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t p = row;
        while (p < n && m[p][col].is_zero()) ++p;
        if (p == n) continue;
        std::swap(m[p], m[row]);
        FieldScalar inv = m[row][col].inverse();
        for (auto& x : m[row]) x = x * inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            FieldScalar f = m[r][col];
            for (std::size_t c = 0; c < n; ++c) m[r][c] = m[r][c] - f * m[row][c];
        }
        pivot_col.push_back(col);
        ++row;
    }
    if (pivot_col.size() + 1 != n) throw InvariantViolation("Perron-Frobenius eigenspace is not one-dimensional");

    std::size_t free_col = 0;
    {
        std::vector<char> is_pivot(n, 0);
        for (auto c : pivot_col) is_pivot[c] = 1;
        while (is_pivot[free_col]) ++free_col;
    }
    std::vector<FieldScalar> x(n, FieldScalar(field, Rational(0)));
    x[free_col] = FieldScalar(field, Rational(1));
    for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = -m[r][free_col];
    if (x[0].is_zero()) throw InvariantViolation("Perron-Frobenius eigenvector has a zero entry");
    FieldScalar inv0 = x[0].inverse();
    for (auto& v : x) v = v * inv0;
    return x;
}

std::optional<std::vector<Integer>> integer_form(const std::vector<FieldScalar>& v) {
    Integer den = 1;
    for (const auto& s : v) {
        if (!s.is_rational()) return std::nullopt;
        den = lcm(den, s.rational_value().get_den());
    }
    std::vector<Integer> out;
    Integer g = 0;
    for (const auto& s : v) {
        Rational q = s.rational_value() * Rational(den);
        out.push_back(q.get_num());
        g = gcd(g, q.get_num());
    }
    if (g == 0) return out;
    if (!out.empty() && sgn(out[0]) < 0) g = -g;
    for (auto& x : out) x /= g;
    return out;
}

const char* to_string(RootClass c) {
    switch (c) {
        case RootClass::zero: return "zero";
        case RootClass::small: return "small";
        case RootClass::unit: return "unit";
        case RootClass::large: return "large";
        case RootClass::perron: return "perron";
    }
    return "?";
}

namespace {

template <unsigned Bits>
using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<Bits, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

template <class R>
struct Cx {
    R re, im;
};

template <class R>
Cx<R> operator+(const Cx<R>& a, const Cx<R>& b) { return {a.re + b.re, a.im + b.im}; }
template <class R>
Cx<R> operator-(const Cx<R>& a, const Cx<R>& b) { return {a.re - b.re, a.im - b.im}; }
template <class R>
Cx<R> operator*(const Cx<R>& a, const Cx<R>& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R>
Cx<R> operator/(const Cx<R>& a, const Cx<R>& b) {
    R d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
template <class R>
R modulus(const Cx<R>& a) { return sqrt(a.re * a.re + a.im * a.im); }

template <class R>
R to_real(const Rational& q) {
    return R(q.get_num().get_str()) / R(q.get_den().get_str());
}

struct NumericRoot {
    RootClass cls;
    std::string approx;
};

std::string format_root(double re, double im, bool real) {
    char buf[96];
    if (real)
        std::snprintf(buf, sizeof buf, "%.12g", re);
    else
        std::snprintf(buf, sizeof buf, "%.12g%+.12gi", re, im);
    return buf;
}

/// Locates and classifies the roots of a monic squarefree polynomial at a
/// fixed precision. Returns nothing when the inclusion discs overlap each
/// other or the unit circle.
template <unsigned Bits>
std::optional<std::vector<NumericRoot>> classify_numeric(const RatPoly& monic, const FieldPtr& perron, bool on_circle) {
    using R = Real<Bits>;
    const int d = monic.degree();
    std::vector<R> c;
    for (int i = 0; i <= d; ++i) c.push_back(to_real<R>(monic.coeff(i)));

    auto eval = [&](const Cx<R>& z, Cx<R>& p, Cx<R>& dp) {
        p = {c[static_cast<std::size_t>(d)], R(0)};
        dp = {R(0), R(0)};
        for (int i = d - 1; i >= 0; --i) {
            dp = dp * z + p;
            p = p * z + Cx<R>{c[static_cast<std::size_t>(i)], R(0)};
        }
    };

    double radius = 1.0;
    if (c[0] != 0) radius = std::pow(std::abs(static_cast<double>(c[0])), 1.0 / d);
    radius = std::max(radius, 0.5);
    std::vector<Cx<R>> z(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        double ang = 2.0 * 3.14159265358979323846 * k / d + 0.4;
        z[static_cast<std::size_t>(k)] = {R(radius * std::cos(ang)), R(radius * std::sin(ang))};
    }

    const R tol = ldexp(R(1), -static_cast<int>(Bits) + 6);
    for (int iter = 0; iter < 4000; ++iter) {
        bool done = true;
        for (int k = 0; k < d; ++k) {
            auto& zk = z[static_cast<std::size_t>(k)];
            Cx<R> p, dp;
            eval(zk, p, dp);
            if (p.re == 0 && p.im == 0) continue;
            Cx<R> ratio = p / dp;
            Cx<R> sum{R(0), R(0)};
            for (int j = 0; j < d; ++j)
                if (j != k) sum = sum + Cx<R>{R(1), R(0)} / (zk - z[static_cast<std::size_t>(j)]);
            Cx<R> w = ratio / (Cx<R>{R(1), R(0)} - ratio * sum);
            zk = zk - w;
            if (modulus(w) > tol * (1 + modulus(zk))) done = false;
        }
        if (done) break;
    }

    // Weierstrass inclusion: discs of radius d*|p(z_k)/prod(z_k - z_j)| cover the
    // roots, and pairwise disjoint discs hold exactly one root each.
    std::vector<R> rad(static_cast<std::size_t>(d));
    const R eps = ldexp(R(1), -static_cast<int>(Bits) + 12);
    for (int k = 0; k < d; ++k) {
        const auto& zk = z[static_cast<std::size_t>(k)];
        Cx<R> p, dp;
        eval(zk, p, dp);
        R mag = modulus(zk), scale = 0, pw = 1;
        for (int i = 0; i <= d; ++i) {
            scale += abs(c[static_cast<std::size_t>(i)]) * pw;
            pw *= mag;
        }
        Cx<R> prod{R(1), R(0)};
        for (int j = 0; j < d; ++j)
            if (j != k) prod = prod * (zk - z[static_cast<std::size_t>(j)]);
        R pm = modulus(prod);
        if (pm == 0) return std::nullopt;
        rad[static_cast<std::size_t>(k)] = R(d) * (modulus(p) + eps * scale) / pm + eps * (1 + mag);
    }
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k)
            if (modulus(z[static_cast<std::size_t>(j)] - z[static_cast<std::size_t>(k)]) <=
                rad[static_cast<std::size_t>(j)] + rad[static_cast<std::size_t>(k)])
                return std::nullopt;

    int perron_idx = -1;
    if (perron) {
        R lam = to_real<R>(perron->enclosure(Rational(1, 1) / Rational(Integer(1) << (Bits / 2))).mid());
        R best = -1;
        for (int k = 0; k < d; ++k) {
            R dist = modulus(z[static_cast<std::size_t>(k)] - Cx<R>{lam, R(0)});
            if (best < 0 || dist < best) {
                best = dist;
                perron_idx = k;
            }
        }
    }

    std::vector<NumericRoot> out;
    for (int k = 0; k < d; ++k) {
        const auto& zk = z[static_cast<std::size_t>(k)];
        R m = modulus(zk), r = rad[static_cast<std::size_t>(k)];
        RootClass cls;
        if (on_circle)
            cls = RootClass::unit;
        else if (k == perron_idx)
            cls = RootClass::perron;
        else if (m - r > 1)
            cls = RootClass::large;
        else if (m + r < 1)
            cls = RootClass::small;
        else
            return std::nullopt;
        bool real = abs(zk.im) <= r;
        out.push_back({cls, format_root(static_cast<double>(zk.re), static_cast<double>(zk.im), real)});
    }
    return out;
}

std::optional<std::vector<NumericRoot>> classify_at(int bits, const RatPoly& monic, const FieldPtr& perron,
                                                    bool on_circle = false) {
    switch (bits) {
        case 64: return classify_numeric<64>(monic, perron, on_circle);
        case 256: return classify_numeric<256>(monic, perron, on_circle);
        case 1024: return classify_numeric<1024>(monic, perron, on_circle);
        case 4096: return classify_numeric<4096>(monic, perron, on_circle);
    }
    return std::nullopt;
}

}  // namespace

EigenReport classify_spectrum(const IntMatrix& a, int max_bits, int degree_cap) {
    EigenReport rep;
    rep.char_poly = char_poly(a);
    auto factors = factor_poly(rep.char_poly, degree_cap);
    rep.primitive = is_primitive_matrix(a);
    rep.charpoly_irreducible = factors.size() == 1 && factors[0].multiplicity == 1;
    {
        rep.constant_length = true;
        Integer first = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Integer s = 0;
            for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, j);
            if (j == 0) first = s;
            rep.constant_length = rep.constant_length && s == first;
        }
    }

    FieldPtr perron = rep.primitive ? perron_field(factors) : nullptr;
    std::vector<int> ladder;
    for (int b : {64, 256, 1024, 4096})
        if (b <= std::max(max_bits, 64)) ladder.push_back(b);

    for (const auto& f : factors) {
        FactorReport fr;
        fr.poly = f.poly;
        fr.multiplicity = f.multiplicity;
        fr.cyclotomic = cyclotomic_index(f.poly);
        const bool is_perron = perron && f.poly == perron->min_poly();
        if (f.poly.degree() == 1) {
            Rational r = -f.poly.coeff(0);
            RootClass cls = is_perron           ? RootClass::perron
                            : sgn(r) == 0       ? RootClass::zero
                            : abs(r) < 1        ? RootClass::small
                            : abs(r) == 1       ? RootClass::unit
                                                : RootClass::large;
            fr.roots.push_back({cls, to_string(r)});
        } else if (fr.cyclotomic && !is_perron) {
            auto num = classify_at(64, f.poly, nullptr, true);
            for (int k = 0; k < f.poly.degree(); ++k)
                fr.roots.push_back({RootClass::unit, num ? (*num)[static_cast<std::size_t>(k)].approx : "root of unity"});
        } else {
            std::optional<std::vector<NumericRoot>> got;
            for (int bits : ladder) {
                got = classify_at(bits, f.poly, is_perron ? perron : nullptr);
                rep.precision_bits = std::max(rep.precision_bits, bits);
                if (got) break;
            }
            if (!got) throw Undecidable("cannot separate root moduli of " + f.poly.to_string() + " from 1");
            for (auto& r : *got) fr.roots.push_back({r.cls, r.approx});
        }
        for (const auto& r : fr.roots) rep.counts[static_cast<int>(r.cls)] += f.multiplicity;
        rep.factors.push_back(std::move(fr));
    }

    rep.script_l_dim = rep.count(RootClass::unit) + rep.count(RootClass::large);
    rep.script_s_dim = rep.count(RootClass::zero) + rep.count(RootClass::small);
    const bool one_perron = rep.count(RootClass::perron) == 1;
    rep.pisot_type_allow_zero = rep.primitive && one_perron && rep.script_l_dim == 0;
    rep.pisot_type_literal = rep.pisot_type_allow_zero && rep.count(RootClass::zero) == 0;
    return rep;
}

}  // namespace balpair
