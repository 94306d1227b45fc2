#include "balpair/errors.hpp"
#include "balpair/factor.hpp"
#include "balpair/poly.hpp"
#include "balpair/rational.hpp"
#include "balpair/roots.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace balpair;
using balpair::testing::frac;

namespace {

RatPoly random_poly(std::mt19937_64& rng, int max_degree, int bound) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<long> c(-bound, bound);
    std::vector<Rational> coeffs(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : coeffs) x = frac(c(rng), 1 + std::abs(c(rng)));
    return RatPoly(coeffs);
}

RatPoly from_roots(const std::vector<long>& roots) {
    RatPoly p{1};
    for (long r : roots) p = p * RatPoly::linear_root(Rational(r));
    return p;
}

}  // namespace

TEST_CASE("rational parsing and rendering") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-4") == Rational(-4));
    CHECK(to_string(frac(6, 4)) == "3/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK(to_decimal(Rational(1, 3), 5) == "0.33333");
    CHECK(to_decimal(Rational(-2, 3), 2) == "-0.67");
    CHECK(to_decimal(Rational(1, 2), 0) == "1");
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidLength);
    CHECK_THROWS_AS(parse_rational("abc"), InvalidLength);
    CHECK_THROWS_AS(parse_rational(""), InvalidLength);
    CHECK(lcm(Integer(4), Integer(6)) == 12);
}

TEST_CASE("polynomial basics") {
    RatPoly p{1, -3, 1};
    CHECK(p.degree() == 2);
    CHECK(p.to_string() == "x^2 - 3*x + 1");
    CHECK(RatPoly{}.degree() == -1);
    CHECK(RatPoly{0, 0}.is_zero());
    CHECK(p.eval(Rational(2)) == -1);
    CHECK(p.derivative() == RatPoly{-3, 2});
    CHECK(RatPoly({2, 0, 4}).monic() == RatPoly({Rational(1, 2), 0, 1}));
    CHECK(RatPoly({1, 2, 3}).reciprocal() == RatPoly{3, 2, 1});
    CHECK(RatPoly({Rational(1, 2), Rational(3, 4)}).primitive_integer() == std::vector<Integer>{2, 3});
    CHECK_THROWS_AS(divmod(p, RatPoly{}), DivisionByZero);
    CHECK(gcd(from_roots({1, 2}), from_roots({1, 3})) == from_roots({1}));
    CHECK(gcd(RatPoly{}, RatPoly{}).is_zero());
    CHECK(pow(RatPoly{1, 1}, 3) == RatPoly{1, 3, 3, 1});
}

TEST_CASE("division identity on random polynomials") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        RatPoly a = random_poly(rng, 7, 9);
        RatPoly b = random_poly(rng, 4, 9);
        if (b.is_zero()) continue;
        auto [q, r] = divmod(a, b);
        CHECK(q * b + r == a);
        CHECK(r.degree() < b.degree());
    }
}

TEST_CASE("half extended gcd gives a Bezout multiplier") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        RatPoly a = random_poly(rng, 5, 6);
        RatPoly m = random_poly(rng, 5, 6);
        if (m.degree() < 1) continue;
        auto [g, s] = half_extended_gcd(a, m);
        CHECK(g == gcd(a, m));
        CHECK((s * a - g) % m == RatPoly{});
    }
}

TEST_CASE("factorization recovers known factors") {
    auto f = factor_poly(RatPoly{1, -2, -2, 1} * RatPoly{1});  // (x+1)(x^2-3x+1)
    REQUIRE(f.size() == 2);
    CHECK(f[0].poly == RatPoly{1, 1});
    CHECK(f[1].poly == RatPoly{1, -3, 1});

    // (x - 1)(x^2 - 3x - 1)
    auto g = factor_poly(RatPoly{1} * RatPoly{-1, 1} * RatPoly{-1, -3, 1});
    REQUIRE(g.size() == 2);
    CHECK(g[0].poly == RatPoly{-1, 1});
    CHECK(g[1].poly == RatPoly{-1, -3, 1});

    // x^2 (x^2 + 1)^3 (x^2 - 2)
    RatPoly h = RatPoly{0, 0, 1} * pow(RatPoly{1, 0, 1}, 3) * RatPoly{-2, 0, 1};
    auto hf = factor_poly(h);
    REQUIRE(hf.size() == 3);
    CHECK(hf[0] == Factor{RatPoly{0, 1}, 2});
    CHECK(expand(hf) == h);

    // x^4 + 4 = (x^2 - 2x + 2)(x^2 + 2x + 2) has no rational root
    auto k = factor_poly(RatPoly{4, 0, 0, 0, 1});
    REQUIRE(k.size() == 2);
    CHECK(k[0].poly.degree() == 2);
    CHECK(k[1].poly.degree() == 2);
}

TEST_CASE("factorization round-trips on random products") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> c(-4, 4);
    for (int trial = 0; trial < 60; ++trial) {
        RatPoly p{1};
        int pieces = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < pieces; ++i) {
            RatPoly q({Rational(c(rng)), Rational(c(rng)), Rational(1)});
            p = p * q;
        }
        auto f = factor_poly(p);
        CHECK(expand(f) == p.monic());
        for (const auto& fac : f) {
            CHECK(fac.poly.leading() == 1);
            if (fac.poly.degree() >= 2) {
                CHECK(rational_roots(fac.poly).empty());
                CHECK_FALSE(kronecker_split(fac.poly).has_value());
            }
        }
        CHECK(std::is_sorted(f.begin(), f.end(), [](const Factor& a, const Factor& b) {
            return a.poly.degree() < b.poly.degree();
        }));
    }
}

TEST_CASE("degree cap is enforced") {
    // x^10 - 2 is irreducible (Eisenstein) and has no rational roots.
    CHECK_THROWS_AS(factor_poly(RatPoly{-2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}, 8), DegreeCapExceeded);
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic(1) == RatPoly{-1, 1});
    CHECK(cyclotomic(4) == RatPoly{1, 0, 1});
    CHECK(cyclotomic(6) == RatPoly{1, -1, 1});
    CHECK(cyclotomic_index(RatPoly{1, 1, 1}) == 3);
    CHECK_FALSE(cyclotomic_index(RatPoly{1, -3, 1}).has_value());
    // x^n - 1 is the product of cyclotomic polynomials over divisors of n.
    for (int n : {6, 8, 12}) {
        RatPoly prod{1};
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) prod = prod * cyclotomic(d);
        CHECK(prod == RatPoly::monomial(1, n) - RatPoly{1});
    }
}

TEST_CASE("squarefree decomposition") {
    RatPoly p = RatPoly{-1, 1} * pow(RatPoly{1, 1}, 2) * pow(RatPoly{1, 0, 1}, 3);
    auto parts = squarefree_decomposition(p);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0] == RatPoly{-1, 1});
    CHECK(parts[1] == RatPoly{1, 1});
    CHECK(parts[2] == RatPoly{1, 0, 1});
}

TEST_CASE("Sturm counts agree with known root sets") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> r(-8, 8);
    for (int trial = 0; trial < 80; ++trial) {
        std::vector<long> roots;
        int k = static_cast<int>(rng() % 5);
        while (static_cast<int>(roots.size()) < k) {
            long x = r(rng);
            if (std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
        }
        std::sort(roots.begin(), roots.end());
        // x^2 + 1 adds two non-real roots that must not be counted.
        RatPoly p = from_roots(roots) * RatPoly{1, 0, 1};
        SturmChain chain(p);
        CHECK(chain.count_real() == k);
        long a = r(rng), b = a + static_cast<long>(rng() % 9);
        int expected = static_cast<int>(std::count_if(roots.begin(), roots.end(), [&](long x) { return a < x && x <= b; }));
        CHECK(chain.count(Rational(a), Rational(b)) == expected);

        auto ivs = isolate_real_roots(p);
        REQUIRE(ivs.size() == roots.size());
        for (std::size_t i = 0; i < ivs.size(); ++i) {
            CHECK(ivs[i].lo <= roots[i]);
            CHECK(roots[i] <= ivs[i].hi);
        }
    }
}

TEST_CASE("isolation and refinement of irrational roots") {
    RatPoly p{-2, 0, 1};
    auto ivs = isolate_real_roots(p);
    REQUIRE(ivs.size() == 2);
    auto iv = refine_root(p, ivs[1], Rational(1, 1000000));
    CHECK(iv.width() <= Rational(1, 1000000));
    CHECK(iv.lo * iv.lo < 2);
    CHECK(iv.hi * iv.hi > 2);
    CHECK(SturmChain(p).count(iv.lo, iv.hi) == 1);
    CHECK(cauchy_bound(p) > 1);

    auto e = eval_interval(p.coeffs(), RatInterval{Rational(1), Rational(2)});
    CHECK(e.lo <= -1);
    CHECK(e.hi >= 2);
}
