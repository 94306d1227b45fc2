#include "balpair/substitution.hpp"

#include "balpair/errors.hpp"
#include "balpair/spectrum.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

namespace balpair {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view strip(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(s[i])) ++i;
        std::size_t j = i;
        while (j < s.size() && !is_space(s[j])) ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

/// Splits into UTF-8 code points.
std::vector<std::string> split_chars(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        auto b = static_cast<unsigned char>(s[i]);
        std::size_t len = b < 0x80 ? 1 : (b >> 5) == 0x6 ? 2 : (b >> 4) == 0xE ? 3 : (b >> 3) == 0x1E ? 4 : 1;
        len = std::min(len, s.size() - i);
        out.emplace_back(s.substr(i, len));
        i += len;
    }
    return out;
}

std::vector<std::string> tokenize_word(std::string_view s) {
    s = strip(s);
    bool has_space = std::any_of(s.begin(), s.end(), is_space);
    return has_space ? split_ws(s) : split_chars(s);
}

bool single_code_point(const std::string& t) { return split_chars(t).size() == 1; }

}  // namespace

Substitution::Substitution(std::vector<std::string> tokens, std::vector<Word> rules)
    : tokens_(std::move(tokens)), rules_(std::move(rules)) {
    const std::size_t n = tokens_.size();
    if (n == 0) throw ParseError(0, "empty alphabet");
    if (rules_.size() != n) throw ParseError(0, "rule count does not match alphabet size");
    std::vector<std::string> sorted = tokens_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ParseError(0, "duplicate letter token");
    matrix_ = IntMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        if (rules_[j].empty()) throw ParseError(0, "empty image for letter '" + tokens_[j] + "'");
        for (Letter a : rules_[j]) {
            if (a >= n) throw ParseError(0, "image letter out of range");
            matrix_(a, j) += 1;
        }
    }
}

Substitution Substitution::power(unsigned k) const {
    std::vector<Word> r(size());
    for (std::size_t a = 0; a < size(); ++a) r[a] = balpair::apply(*this, Word{static_cast<Letter>(a)}, k);
    return Substitution(tokens_, std::move(r));
}

std::string Substitution::format(const Word& w) const {
    bool compact = std::all_of(tokens_.begin(), tokens_.end(), single_code_point);
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!compact && i > 0) out += ' ';
        out += tokens_.at(w[i]);
    }
    return out;
}

Word Substitution::parse_word(std::string_view text) const {
    Word w;
    for (const auto& t : tokenize_word(text)) {
        auto it = std::find(tokens_.begin(), tokens_.end(), t);
        if (it == tokens_.end()) throw ParseError(0, "unknown letter '" + t + "'");
        w.push_back(static_cast<Letter>(it - tokens_.begin()));
    }
    return w;
}

std::string Substitution::to_text() const {
    std::string out;
    for (std::size_t a = 0; a < size(); ++a) {
        Word img = rules_[a];
        out += tokens_[a] + " -> " + format(img) + "\n";
    }
    return out;
}

Substitution parse_substitution(std::string_view text) {
    struct RawRule {
        std::size_t line;
        std::string lhs;
        std::string rhs;
    };
    std::vector<RawRule> raw;
    std::map<std::string, std::size_t> index;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        auto arrow = line.find("->");
        if (arrow == std::string_view::npos) throw ParseError(line_no, "expected 'lhs -> rhs'");
        std::string_view lhs = strip(line.substr(0, arrow));
        std::string_view rhs = strip(line.substr(arrow + 2));
        if (lhs.empty()) throw ParseError(line_no, "missing left-hand side");
        if (std::any_of(lhs.begin(), lhs.end(), is_space)) throw ParseError(line_no, "left-hand side must be one letter");
        if (rhs.find("->") != std::string_view::npos) throw ParseError(line_no, "more than one '->'");
        if (rhs.empty()) throw ParseError(line_no, "empty image for letter '" + std::string(lhs) + "'");
        std::string key(lhs);
        if (index.count(key)) throw ParseError(line_no, "duplicate rule for letter '" + key + "'");
        index[key] = raw.size();
        raw.push_back({line_no, key, std::string(rhs)});
    }
    if (raw.empty()) throw ParseError(line_no, "no rules");
    std::vector<std::string> tokens;
    std::vector<Word> rules;
    for (const auto& r : raw) tokens.push_back(r.lhs);
    for (const auto& r : raw) {
        std::vector<std::string> toks = tokenize_word(r.rhs);
        bool all_known = std::all_of(toks.begin(), toks.end(), [&](const std::string& t) { return index.count(t) > 0; });
        // "a -> bc" with a multi-character letter "bc" and no letters "b", "c".
        if (!all_known && toks.size() > 1 && index.count(r.rhs)) toks = {r.rhs};
        Word w;
        for (const auto& t : toks) {
            auto it = index.find(t);
            if (it == index.end()) throw ParseError(r.line, "unknown letter '" + t + "' on right-hand side");
            w.push_back(static_cast<Letter>(it->second));
        }
        rules.push_back(std::move(w));
    }
    return Substitution(std::move(tokens), std::move(rules));
}

Word apply(const Substitution& phi, const Word& w, unsigned k) {
    Word cur = w;
    for (unsigned step = 0; step < k; ++step) {
        Word next;
        std::size_t len = 0;
        for (Letter a : cur) len += phi.image(a).size();
        next.reserve(len);
        for (Letter a : cur) {
            const Word& img = phi.image(a);
            next.insert(next.end(), img.begin(), img.end());
        }
        cur = std::move(next);
    }
    return cur;
}

PopulationVector population_vector(const Word& w, std::size_t alphabet_size) {
    PopulationVector p(alphabet_size, 0);
    for (Letter a : w) {
        if (a >= alphabet_size) throw AlphabetMismatch("letter index outside alphabet");
        ++p[a];
    }
    return p;
}

const IntMatrix& transition_matrix(const Substitution& phi) { return phi.matrix(); }

bool is_primitive(const Substitution& phi) { return is_primitive_matrix(phi.matrix()); }

bool is_constant_length(const Substitution& phi) {
    const auto len = phi.image(0).size();
    for (const auto& r : phi.rules())
        if (r.size() != len) return false;
    return true;
}

FixedPointStream::FixedPointStream(const Substitution& phi) {
    const std::size_t n = phi.size();
    std::optional<std::pair<unsigned, Letter>> best;
    for (std::size_t a = 0; a < n; ++a) {
        // Letter a lies on a cycle of the first-letter map iff iterating returns to a within n steps.
        Letter cur = static_cast<Letter>(a);
        unsigned k = 0;
        do {
            cur = phi.image(cur).front();
            ++k;
        } while (cur != a && k <= n);
        if (cur != a) continue;
        if (best && best->first <= k) continue;
        if (balpair::apply(phi, Word{static_cast<Letter>(a)}, k).size() < 2) continue;
        best = std::make_pair(k, static_cast<Letter>(a));
    }
    if (!best) throw NoExpandingFixedPoint();
    power_ = best->first;
    seed_ = best->second;
    fixing_ = std::make_shared<const Substitution>(power_ == 1 ? phi : phi.power(power_));
    buf_ = Word{seed_};
}

void FixedPointStream::ensure(std::size_t len) {
    while (buf_.size() < len) buf_ = balpair::apply(*fixing_, buf_);
}

Letter FixedPointStream::at(std::size_t i) {
    ensure(i + 1);
    return buf_[i];
}

Word FixedPointStream::prefix(std::size_t len) {
    ensure(len);
    return Word(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(len));
}

std::vector<Word> admissible_prefixes(FixedPointStream& u, std::size_t max_len, bool require_return) {
    u.ensure(max_len + 1);
    std::vector<Word> out;
    for (std::size_t len = 1; len <= max_len; ++len) {
        if (require_return && u.at(len) != u.at(0)) continue;
        out.push_back(u.prefix(len));
    }
    return out;
}

}  // namespace balpair
