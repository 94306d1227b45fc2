#include "balpair/equivalence.hpp"
#include "balpair/errors.hpp"
#include "balpair/spectrum.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace balpair;
using namespace balpair::testing;

namespace {

Word w(const Substitution& phi, const char* text) { return phi.parse_word(text); }

std::vector<Rational> random_lengths(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<long> num(1, 9), den(1, 4);
    std::vector<Rational> l(n);
    for (auto& x : l) x = frac(num(rng), den(rng));
    return l;
}

}  // namespace

TEST_CASE("letter equivalence classes") {
    auto nc = letter_equiv_classes(*corpus("exnoncon"));
    CHECK(nc.classes == std::vector<std::vector<Letter>>{{0}, {1, 2, 3}});
    CHECK(nc.class_of == std::vector<int>{0, 1, 1, 1});
    CHECK(letter_equiv_classes(*corpus("ex1")).classes.size() == 2);
    CHECK(letter_equiv_classes(*corpus("const-len")).classes == std::vector<std::vector<Letter>>{{0, 1}});
}

TEST_CASE("length specs") {
    CHECK(LengthSpec::parse("ones") == LengthSpec::ones());
    CHECK(LengthSpec::parse("lambda") == LengthSpec::perron());
    auto c = LengthSpec::parse("1/2,1,3");
    CHECK(c.custom == std::vector<Rational>{Rational(1, 2), 1, 3});
    for (const char* text : {"ones", "lambda", "4,2,5,4", "1/2,1,3"}) CHECK(LengthSpec::parse(text).label() == text);
    CHECK_THROWS_AS(LengthSpec::parse("1,0"), InvalidLength);
    CHECK_THROWS_AS(LengthSpec::parse("1,-2"), InvalidLength);
    CHECK_THROWS_AS(LengthSpec::parse(""), InvalidLength);
    auto phi = corpus("ex1");
    CHECK_THROWS_AS(resolve_length_vector(*phi, LengthSpec::parse("1,2,3")), InvalidLength);
}

TEST_CASE("Perron lengths of the exnoncon substitution are (1, g, g, g)") {
    auto phi = corpus("exnoncon");
    auto pd = perron_data(*phi);
    // lambda = g^2 with g the golden ratio, so g = lambda - 1.
    CHECK(pd.field->min_poly() == RatPoly{1, -3, 1});
    FieldScalar one(pd.field, Rational(1));
    FieldScalar g = FieldScalar::generator(pd.field) - one;
    CHECK(pd.left == std::vector<FieldScalar>{one, g, g, g});
    CHECK(g * g == g + one);
}

TEST_CASE("perron data rejects non-primitive substitutions") {
    CHECK_THROWS_AS(perron_data(parse_substitution("a -> ab\nb -> b\n")), NotPrimitive);
}

TEST_CASE("plain and letter relations") {
    auto phi = corpus("exnoncon");
    auto plain = Relation::plain(phi);
    auto letters = Relation::letter_classes(phi);
    CHECK(word_equiv(plain, w(*phi, "1234"), w(*phi, "4321")));
    CHECK_FALSE(word_equiv(plain, w(*phi, "12"), w(*phi, "13")));
    CHECK(word_equiv(letters, w(*phi, "12"), w(*phi, "13")));
    CHECK(word_equiv(letters, w(*phi, "3412"), w(*phi, "1222")));
    CHECK_FALSE(word_equiv(letters, w(*phi, "12"), w(*phi, "23")));
    CHECK(plain.label() == "plain");
    CHECK(letters.label() == "letters");
    CHECK_THROWS_AS(word_equiv(plain, Word{0, 7}, Word{0, 1}), AlphabetMismatch);
}

TEST_CASE("reducible three-letter example") {
    auto phi = corpus("reducible3");
    auto lam = Relation::generalized(phi, LengthSpec::perron());
    auto ones = Relation::generalized(phi, LengthSpec::ones());
    auto skew = Relation::generalized(phi, LengthSpec::parse("1,1,2"));
    CHECK(word_equiv(lam, w(*phi, "11"), w(*phi, "23")));
    CHECK(word_equiv(ones, w(*phi, "11"), w(*phi, "23")));
    CHECK_FALSE(word_equiv(skew, w(*phi, "11"), w(*phi, "23")));
    CHECK(lam.label() == "general:lambda");
    CHECK(skew.label() == "general:1,1,2");
}

TEST_CASE("rewritten Morse-Thue lengths") {
    auto phi = corpus("mt-rewrite");
    auto lam = Relation::generalized(phi, LengthSpec::perron());
    CHECK(word_equiv(lam, w(*phi, "124"), w(*phi, "33")));
    CHECK(length_of(lam, w(*phi, "124")).rational_value() == Rational(8, 3));  // L = (1, 2/3, 4/3, 1)
    CHECK(in_pf_kernel(*phi, std::vector<std::int64_t>{1, 1, -2, 1}));
}

TEST_CASE("rewritten Pisot lengths are orthogonal to (1,1,-2,1)") {
    auto phi = corpus("pisot-rewrite");
    auto rel = Relation::generalized(phi, LengthSpec::parse("4,2,5,4"));
    std::vector<std::int64_t> z{1, 1, -2, 1};
    CHECK(rel.length_sign(z) == 0);
    auto printed = Relation::generalized(phi, LengthSpec::parse("3,2,5,4"));
    CHECK(printed.length_sign(z) != 0);
}

TEST_CASE("length sign is exact") {
    auto phi = corpus("ex1");
    auto lam = Relation::generalized(phi, LengthSpec::perron());
    // L = (1, g - 1) with g the golden ratio squared root of x^2 - 3x + 1.
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<std::int64_t> d(-1000000, 1000000);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<std::int64_t> z{d(rng), d(rng)};
        FieldScalar len = lam.lengths()[0] * FieldScalar(lam.lengths()[0].field(), Rational(static_cast<long>(z[0]))) +
                          lam.lengths()[1] * FieldScalar(lam.lengths()[0].field(), Rational(static_cast<long>(z[1])));
        CHECK(lam.length_sign(z) == len.sign());
    }
    // Fibonacci neighbours make the length very close to zero.
    std::vector<std::int64_t> close{-832040, 1346269};
    FieldScalar exact = lam.lengths()[0] * FieldScalar(lam.lengths()[0].field(), Rational(-832040L)) +
                        lam.lengths()[1] * FieldScalar(lam.lengths()[0].field(), Rational(1346269L));
    CHECK(lam.length_sign(close) == exact.sign());
}

TEST_CASE("relation is an equivalence compatible with concatenation and substitution") {
    std::mt19937_64 rng(59);
    for (const auto& stem : corpus_stems()) {
        auto phi = corpus(stem);
        std::vector<Relation> rels{Relation::plain(phi), Relation::generalized(phi, LengthSpec::perron()),
                                   Relation::generalized(phi, LengthSpec::ones())};
        for (const auto& rel : rels) {
            for (int trial = 0; trial < 60; ++trial) {
                Word a = random_word(rng, phi->size(), 6);
                Word b = a;
                std::shuffle(b.begin(), b.end(), rng);
                CHECK(word_equiv(rel, a, a));
                CHECK(word_equiv(rel, a, b) == word_equiv(rel, b, a));
                // Permutations always share a population vector.
                CHECK(word_equiv(rel, a, b));
                Word x = random_word(rng, phi->size(), 4);
                Word ax = a, bx = b;
                ax.insert(ax.end(), x.begin(), x.end());
                bx.insert(bx.end(), x.begin(), x.end());
                CHECK(word_equiv(rel, ax, bx));

                Word c = random_word(rng, phi->size(), 6);
                if (word_equiv(rel, a, c)) {
                    CHECK(word_equiv(rel, balpair::apply(*phi, a), balpair::apply(*phi, c)));
                    CHECK(length_of(rel, a) == length_of(rel, c));
                }
            }
        }
    }
}

TEST_CASE("equivalence under any L implies equivalence under the Perron lengths") {
    std::mt19937_64 rng(61);
    for (const auto& stem : corpus_stems()) {
        auto phi = corpus(stem);
        auto lam = Relation::generalized(phi, LengthSpec::perron());
        for (int k = 0; k < 3; ++k) {
            auto rel = Relation::generalized(phi, LengthSpec::from_values(random_lengths(rng, phi->size())));
            for (int trial = 0; trial < 200; ++trial) {
                Word a = random_word(rng, phi->size(), 8);
                Word b = random_word(rng, phi->size(), 8);
                if (trial % 2) {
                    b = a;
                    std::shuffle(b.begin(), b.end(), rng);
                }
                if (word_equiv(rel, a, b)) CHECK(word_equiv(lam, a, b));
            }
        }
        auto ones = Relation::generalized(phi, LengthSpec::ones());
        for (const auto& row : ones.kernel_rows()) CHECK(row.size() == phi->size());
    }
}

TEST_CASE("kernel rows of the generalized relation") {
    auto phi = corpus("reducible3");
    IntMatrix a = phi->matrix();
    auto rows = orbit_kernel_rows(a, {1, 1, 1});
    CHECK(rows.size() == 2);
    // The span is A-invariant from the left: every L A^n lies in it.
    auto rel = Relation::generalized(phi, LengthSpec::ones());
    CHECK(rel.kernel_rows() == rows);
    CHECK(Relation::generalized(phi, LengthSpec::parse("1,1,2")).kernel_rows().size() == 3);
}
