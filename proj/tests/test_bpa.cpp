#include "balpair/bpa.hpp"
#include "balpair/errors.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace balpair;
using namespace balpair::testing;

namespace {

BalancedPair pair_of(const Substitution& phi, const char* top, const char* bottom) {
    return {phi.parse_word(top), phi.parse_word(bottom)};
}

std::set<std::string> formatted(const Substitution& phi, const PairSet& s) {
    std::set<std::string> out;
    for (const auto& p : s.pairs()) out.insert(p.format(phi));
    return out;
}

}  // namespace

TEST_CASE("balanced pair basics") {
    auto phi = corpus("ex1");
    auto c = pair_of(*phi, "1", "1");
    CHECK(c.is_coincidence());
    CHECK_FALSE(pair_of(*phi, "12", "12").is_coincidence());
    auto p = pair_of(*phi, "12", "21");
    CHECK(p.format(*phi) == "12/21");
    CHECK(p.size() == 2);
    CHECK(p.id() != pair_of(*phi, "21", "12").id());
    CHECK(p.id() == pair_of(*phi, "12", "21").id());

    PairSet s;
    CHECK(s.insert(p, 1) == std::pair<std::size_t, bool>{0, true});
    CHECK(s.insert(c, 2) == std::pair<std::size_t, bool>{1, true});
    CHECK(s.insert(p, 3) == std::pair<std::size_t, bool>{0, false});
    CHECK(s.generation(0) == 1);
    CHECK(s.count_up_to(1) == 1);
    CHECK(s.count_up_to(2) == 2);
    CHECK(s.contains(c));
    CHECK_FALSE(s.find(pair_of(*phi, "2", "2")).has_value());
}

TEST_CASE("reduce_pair splits at balanced cut points") {
    auto phi = corpus("ex1");
    auto rel = Relation::plain(phi);
    auto parts = reduce_pair(rel, phi->parse_word("112"), phi->parse_word("121"));
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].format(*phi) == "1/1");
    CHECK(parts[1].format(*phi) == "12/21");

    auto kids = children(rel, pair_of(*phi, "12", "21"));
    std::vector<std::string> got;
    for (const auto& k : kids) got.push_back(k.format(*phi));
    CHECK(got == std::vector<std::string>{"1/1", "12/21", "1/1", "2/2"});

    auto [t, b] = substitute_pair(*phi, pair_of(*phi, "12", "21"));
    CHECK(phi->format(t) == "11212");
    CHECK(phi->format(b) == "12112");

    CHECK_THROWS_AS(reduce_pair(rel, phi->parse_word("1"), phi->parse_word("2")), NotBalanced);
    CHECK_THROWS_AS(reduce_pair(rel, phi->parse_word("1122"), phi->parse_word("2211"), 3), ScanOverflow);
}

TEST_CASE("reduce_pair under letter classes") {
    auto phi = corpus("exnoncon");
    auto rel = Relation::letter_classes(phi);
    auto parts = reduce_pair(rel, phi->parse_word("31412"), phi->parse_word("41231"));
    std::vector<std::string> got;
    for (const auto& k : parts) got.push_back(k.format(*phi));
    CHECK(got == std::vector<std::string>{"3/4", "1/1", "4/2", "12/31"});
}

TEST_CASE("ex1 under plain equivalence terminates at the second iteration") {
    auto phi = corpus("ex1");
    auto rel = Relation::plain(phi);
    auto out = run_bpa(rel, phi->parse_word("1"));
    REQUIRE(out.terminated);
    CHECK(formatted(*phi, out.pairs) == std::set<std::string>{"1/1", "12/21", "2/2"});
    CHECK(out.closure_iteration == 2);
    CHECK_FALSE(out.exceeded.has_value());
    REQUIRE(out.graph.has_value());
    auto info = coincidence_analysis(out.pairs, *out.graph);
    for (const auto& i : info) CHECK(i.leads_to_coincidence);
    CHECK(std::count_if(info.begin(), info.end(), [](const CoincidenceInfo& i) { return i.is_coincidence; }) == 2);

    auto g = pair_graph(rel, out.pairs);
    CHECK(g.vertex_count() == 3);
    auto idx = *out.pairs.find(pair_of(*phi, "12", "21"));
    int total = 0;
    for (const auto& e : g.out[idx]) total += e.multiplicity;
    CHECK(total == 4);
    CHECK(g.out[idx].size() == 3);
}

TEST_CASE("initial pairs and prefix validation") {
    auto phi = corpus("ex1");
    auto rel = Relation::plain(phi);
    FixedPointStream u(*phi);
    auto split = initial_pairs(rel, u, phi->parse_word("1"), Budgets{});
    CHECK(split.pairs.size() >= 2);
    CHECK(split.window == Budgets{}.stability_window(split.pairs.size()));
    for (std::size_t i = 0; i < split.pairs.size(); ++i) CHECK(split.pairs.generation(i) == 1);
    CHECK_THROWS_AS(initial_pairs(rel, u, phi->parse_word("2"), Budgets{}), InvalidPrefix);
}

TEST_CASE("pair_graph rejects sets that are not closed") {
    auto phi = corpus("ex1");
    auto rel = Relation::plain(phi);
    PairSet s;
    s.insert(pair_of(*phi, "12", "21"), 1);
    CHECK_THROWS_AS(pair_graph(rel, s), NotClosed);
}

TEST_CASE("budgets") {
    Budgets b;
    CHECK(b.stability_window(10) == 500);
    CHECK(b.stability_window(1000) == 3000);
    b.max_pairs = 0;
    CHECK_THROWS_AS(b.validate(), InvalidLength);

    auto phi = corpus("const-len");
    Budgets small;
    small.max_iterations = 4;
    auto out = run_bpa(Relation::plain(phi), phi->parse_word("1"), small);
    CHECK_FALSE(out.terminated);
    REQUIRE(out.exceeded.has_value());
    CHECK(*out.exceeded == BudgetKind::max_iterations);
    CHECK_FALSE(out.detail.empty());
    CHECK_FALSE(out.graph.has_value());
}

TEST_CASE("non-termination shows growing pairs") {
    auto phi = corpus("const-len");
    auto out = run_bpa(Relation::plain(phi), phi->parse_word("1"));
    CHECK_FALSE(out.terminated);
    REQUIRE(out.max_length_trace.size() >= 6);
    for (std::size_t i = 1; i < out.max_length_trace.size(); ++i)
        CHECK(out.max_length_trace[i] > out.max_length_trace[i - 1]);
    REQUIRE_FALSE(out.longest.empty());
    // Longest pairs have the shape 1x2/2x1.
    const auto& top = out.longest.front();
    CHECK(top.top.front() == 0);
    CHECK(top.top.back() == 1);
    CHECK(top.bottom.front() == 1);
    CHECK(top.bottom.back() == 0);

    auto letters = run_bpa(Relation::letter_classes(phi), phi->parse_word("1"));
    REQUIRE(letters.terminated);
    CHECK(formatted(*phi, letters.pairs) == std::set<std::string>{"1/1", "1/2", "2/1", "2/2"});
}

TEST_CASE("coincidence density") {
    auto phi = corpus("ex1");
    auto rel = Relation::plain(phi);
    FixedPointStream u(*phi);
    auto d0 = coincidence_density(rel, u, phi->parse_word("1"), 0, 2000);
    auto d3 = coincidence_density(rel, u, phi->parse_word("1"), 3, 2000);
    CHECK(d0.shift == 1);
    CHECK(d3.shift == balpair::apply(*phi, phi->parse_word("1"), 3).size());
    CHECK(d0.horizon >= 2000);
    CHECK(d0.ratio > 0);
    CHECK(d0.ratio <= 1);
    CHECK(d3.ratio > 0);
}

TEST_CASE("engine invariants on random primitive substitutions") {
    std::mt19937_64 rng(71);
    Budgets b;
    b.max_iterations = 25;
    b.max_pairs = 400;
    b.max_word_length = 200;
    b.max_scan_length = 50000;
    int terminated = 0;
    for (int trial = 0; trial < 120; ++trial) {
        auto phi = random_primitive(rng, 4, 4);
        FixedPointStream u(*phi);
        auto fixing = std::make_shared<const Substitution>(u.fixing_substitution());
        auto rel = Relation::plain(fixing);
        auto w = u.prefix(1 + rng() % 3);
        auto out = run_bpa(rel, u, w, b);
        for (const auto& p : out.pairs.pairs()) {
            CHECK(word_equiv(rel, p.top, p.bottom));
            if (p.size() <= 10) CHECK_FALSE(has_balanced_prefix(rel, p));
        }
        if (out.terminated) {
            ++terminated;
            for (const auto& p : out.pairs.pairs()) {
                auto [t, bt] = substitute_pair(*fixing, p);
                auto kids = children(rel, p);
                CHECK(concat(kids, true) == t);
                CHECK(concat(kids, false) == bt);
                for (const auto& k : kids) CHECK(out.pairs.contains(k));
            }
        }
        auto again = run_bpa(rel, u, w, b);
        CHECK(again.pairs.pairs() == out.pairs.pairs());
        CHECK(again.terminated == out.terminated);
        CHECK(again.max_length_trace == out.max_length_trace);
    }
    CHECK(terminated > 0);
}
