#include "balpair/errors.hpp"
#include "balpair/substitution.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace balpair;
using namespace balpair::testing;

TEST_CASE("parsing a rule file") {
    auto phi = parse_substitution("# comment\n1 -> 112\n\n2->12  # trailing\n");
    CHECK(phi.size() == 2);
    CHECK(phi.tokens() == std::vector<std::string>{"1", "2"});
    CHECK(phi.image(0) == Word{0, 0, 1});
    CHECK(phi.matrix() == IntMatrix{{2, 1}, {1, 1}});
    CHECK(phi.format(phi.image(0)) == "112");
    CHECK(phi.parse_word("1212") == Word{0, 1, 0, 1});
}

TEST_CASE("multi-character tokens") {
    auto phi = parse_substitution("ab -> ab cd\ncd -> ab\n");
    CHECK(phi.tokens() == std::vector<std::string>{"ab", "cd"});
    CHECK(phi.image(0) == Word{0, 1});
    CHECK(phi.format(Word{0, 1}) == "ab cd");
    CHECK(phi.parse_word("ab cd ab") == Word{0, 1, 0});
}

TEST_CASE("parse errors carry the line number") {
    auto line_of = [](const char* text) -> std::size_t {
        try {
            parse_substitution(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("1 -> 12\n2 -> 13\n") == 2);
    CHECK(line_of("1 -> 12\n2 12\n") == 2);
    CHECK(line_of("1 -> \n") == 1);
    CHECK(line_of("1 -> 1\n1 -> 2\n") == 2);
    CHECK_THROWS_AS(parse_substitution(""), ParseError);
    auto phi = parse_substitution("1->12\n2->1\n");
    CHECK_THROWS_AS(phi.parse_word("13"), ParseError);
}

TEST_CASE("rule text round-trips") {
    for (const auto& stem : corpus_stems()) {
        auto phi = corpus(stem);
        CHECK(parse_substitution(phi->to_text()) == *phi);
    }
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        auto phi = random_primitive(rng, 4, 4);
        CHECK(parse_substitution(phi->to_text()) == *phi);
    }
}

TEST_CASE("population vectors follow the transition matrix") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        auto phi = random_primitive(rng, 4, 4);
        Word w = random_word(rng, phi->size(), 10);
        auto pw = population_vector(w, phi->size());
        auto image = population_vector(balpair::apply(*phi, w), phi->size());
        std::vector<Integer> expected = phi->matrix().apply(std::vector<Integer>(pw.begin(), pw.end()));
        for (std::size_t i = 0; i < phi->size(); ++i) CHECK(Integer(static_cast<long>(image[i])) == expected[i]);
        CHECK(balpair::apply(*phi, w, 3) == balpair::apply(phi->power(3), w));
        CHECK(phi->power(2).matrix() == phi->matrix() * phi->matrix());
    }
}

TEST_CASE("primitivity and constant length") {
    CHECK(is_primitive(*corpus("ex1")));
    CHECK(is_constant_length(*corpus("const-len")));
    CHECK_FALSE(is_constant_length(*corpus("ex1")));
    CHECK_FALSE(is_primitive(parse_substitution("a -> ab\nb -> b\n")));
    CHECK(transition_matrix(*corpus("ex1")) == corpus("ex1")->matrix());
}

TEST_CASE("fixed point stream") {
    auto phi = corpus("ex1");
    FixedPointStream u(*phi);
    CHECK(u.power() == 1);
    CHECK(u.seed() == 0);
    Word p = u.prefix(30);
    Word image = balpair::apply(*phi, p);
    CHECK(Word(image.begin(), image.begin() + 30) == p);
    CHECK(phi->format(u.prefix(8)) == "11211212");
    CHECK(u.at(100) == u.prefix(101).back());

    // The first-letter map a -> b -> a needs the square.
    auto swap = parse_substitution("a -> ba\nb -> ab\n");
    FixedPointStream v(swap);
    CHECK(v.power() == 2);
    Word q = v.prefix(16);
    Word q2 = balpair::apply(swap, q, 2);
    CHECK(Word(q2.begin(), q2.begin() + 16) == q);

    CHECK_THROWS_AS(FixedPointStream(parse_substitution("a -> b\nb -> a\n")), NoExpandingFixedPoint);
}

TEST_CASE("admissible prefixes") {
    auto phi = corpus("ex1");
    FixedPointStream u(*phi);
    auto all = admissible_prefixes(u, 5, false);
    CHECK(all.size() == 5);
    auto ret = admissible_prefixes(u, 8, true);
    REQUIRE_FALSE(ret.empty());
    CHECK(phi->format(ret.front()) == "1");
    for (const auto& w : ret) {
        CHECK(u.prefix(w.size()) == w);
        CHECK(u.at(w.size()) == u.at(0));
    }
    for (std::size_t i = 1; i < ret.size(); ++i) CHECK(ret[i - 1].size() < ret[i].size());
}
