#pragma once

#include "balpair/bpa.hpp"
#include "balpair/equivalence.hpp"
#include "balpair/substitution.hpp"

#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef BALPAIR_CORPUS_DIR
#error "BALPAIR_CORPUS_DIR must point at tests/corpus"
#endif

namespace balpair::testing {

using SubPtr = std::shared_ptr<const Substitution>;

/// Reduced fraction; the two-argument gmp constructor does not reduce.
inline Rational frac(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string corpus_path(const std::string& file) { return std::string(BALPAIR_CORPUS_DIR) + "/" + file; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline SubPtr corpus(const std::string& stem) {
    return std::make_shared<const Substitution>(parse_substitution(read_file(corpus_path(stem + ".sub"))));
}

inline SubPtr make_sub(const std::string& text) { return std::make_shared<const Substitution>(parse_substitution(text)); }

inline const std::vector<std::string>& corpus_stems() {
    static const std::vector<std::string> stems = {"const-len", "ex1", "exnoncon", "mt-rewrite", "pisot-rewrite",
                                                   "reducible3"};
    return stems;
}

inline Word random_word(std::mt19937_64& rng, std::size_t alphabet, std::size_t max_len, std::size_t min_len = 1) {
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<int> letter(0, static_cast<int>(alphabet) - 1);
    Word w(len(rng));
    for (auto& a : w) a = static_cast<Letter>(letter(rng));
    return w;
}

/// Random primitive substitution on 1..max_letters letters with images of length 1..max_rule.
inline SubPtr random_primitive(std::mt19937_64& rng, std::size_t max_letters, std::size_t max_rule) {
    std::uniform_int_distribution<std::size_t> size(1, max_letters);
    for (;;) {
        std::size_t n = size(rng);
        std::vector<std::string> tokens;
        for (std::size_t i = 0; i < n; ++i) tokens.push_back(std::string(1, static_cast<char>('a' + i)));
        std::vector<Word> rules;
        for (std::size_t i = 0; i < n; ++i) rules.push_back(random_word(rng, n, max_rule));
        auto phi = std::make_shared<const Substitution>(tokens, rules);
        if (!is_primitive(*phi)) continue;
        // Primitive with a single letter still needs an expanding image.
        if (n == 1 && rules[0].size() < 2) continue;
        return phi;
    }
}

inline Word concat(const std::vector<BalancedPair>& parts, bool top) {
    Word out;
    for (const auto& p : parts) {
        const Word& side = top ? p.top : p.bottom;
        out.insert(out.end(), side.begin(), side.end());
    }
    return out;
}

/// True when some proper prefix pair of `p` is itself balanced.
inline bool has_balanced_prefix(const Relation& rel, const BalancedPair& p) {
    for (std::size_t i = 1; i <= p.top.size(); ++i) {
        for (std::size_t j = 1; j <= p.bottom.size(); ++j) {
            if (i == p.top.size() && j == p.bottom.size()) continue;
            Word a(p.top.begin(), p.top.begin() + static_cast<std::ptrdiff_t>(i));
            Word b(p.bottom.begin(), p.bottom.begin() + static_cast<std::ptrdiff_t>(j));
            if (word_equiv(rel, a, b)) return true;
        }
    }
    return false;
}

}  // namespace balpair::testing
