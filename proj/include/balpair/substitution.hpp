#pragma once

#include "balpair/matrix.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace balpair {

/// Zero-based position of a letter in its alphabet.
using Letter = std::uint16_t;
/// Finite word. Empty words only occur as intermediate splitting remainders.
using Word = std::vector<Letter>;
/// Letter counts of a word, indexed by Letter.
using PopulationVector = std::vector<std::int64_t>;

class Substitution {
public:
    /// `tokens[i]` is the display name of letter i; `rules[i]` its image.
    /// Throws ParseError (line 0) when an image is empty or names an unknown letter.
    Substitution(std::vector<std::string> tokens, std::vector<Word> rules);

    std::size_t size() const noexcept { return tokens_.size(); }
    const std::vector<std::string>& tokens() const noexcept { return tokens_; }
    const std::string& token(Letter a) const { return tokens_.at(a); }
    const Word& image(Letter a) const { return rules_.at(a); }
    const std::vector<Word>& rules() const noexcept { return rules_; }

    /// a_ij = number of letters i in the image of letter j.
    const IntMatrix& matrix() const noexcept { return matrix_; }

    /// Composite substitution phi^k.
    Substitution power(unsigned k) const;

    /// Display form, e.g. "112" or "x y" when some token is longer than one character.
    std::string format(const Word& w) const;
    /// Inverse of format(); throws ParseError on unknown tokens.
    Word parse_word(std::string_view text) const;

    /// Rule-file text that parse_substitution() reads back to an equal substitution.
    std::string to_text() const;

    friend bool operator==(const Substitution& a, const Substitution& b) {
        return a.tokens_ == b.tokens_ && a.rules_ == b.rules_;
    }

private:
    std::vector<std::string> tokens_;
    std::vector<Word> rules_;
    IntMatrix matrix_;
};

/// Reads the rule file format: one `lhs -> rhs` per line, `#` comments.
/// A right-hand side containing whitespace is split into tokens, otherwise
/// into characters. The alphabet is ordered by first appearance of a
/// left-hand side.
Substitution parse_substitution(std::string_view text);

Word apply(const Substitution& phi, const Word& w, unsigned k = 1);
PopulationVector population_vector(const Word& w, std::size_t alphabet_size);
/// Same as phi.matrix(); kept as a free function for symmetry with the other operations.
const IntMatrix& transition_matrix(const Substitution& phi);

/// True iff some power A^m with m <= (n-1)^2 + 1 is strictly positive.
bool is_primitive(const Substitution& phi);
bool is_constant_length(const Substitution& phi);

/// Right-infinite fixed word of phi^k, generated lazily by repeatedly
/// substituting the known prefix.
class FixedPointStream {
public:
    /// Finds the smallest k and the first seed (in alphabet order) on a cycle of
    /// the first-letter map with |phi^k(seed)| >= 2. Throws NoExpandingFixedPoint.
    explicit FixedPointStream(const Substitution& phi);

    unsigned power() const noexcept { return power_; }
    Letter seed() const noexcept { return seed_; }
    /// phi^k, the substitution that fixes the stream.
    const Substitution& fixing_substitution() const noexcept { return *fixing_; }

    Letter at(std::size_t i);
    /// u_0 ... u_{len-1}
    Word prefix(std::size_t len);
    /// Grows the buffer to hold at least `len` letters.
    void ensure(std::size_t len);
    const Word& buffer() const noexcept { return buf_; }

private:
    std::shared_ptr<const Substitution> fixing_;
    unsigned power_ = 1;
    Letter seed_ = 0;
    Word buf_;
};

/// Prefixes u_0..u_m with m + 1 <= max_len, shortest first. With
/// `require_return` only those followed by u_{m+1} == u_0 are kept.
std::vector<Word> admissible_prefixes(FixedPointStream& u, std::size_t max_len, bool require_return);

}  // namespace balpair
