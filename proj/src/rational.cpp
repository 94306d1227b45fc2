#include "balpair/rational.hpp"

#include "balpair/errors.hpp"

#include <cctype>

namespace balpair {

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool is_integer_text(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Integer parse_integer(std::string_view s) {
    if (s[0] == '+') s.remove_prefix(1);
    return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    if (!is_integer_text(num)) throw InvalidLength("malformed rational '" + std::string(text) + "'");
    if (slash == std::string_view::npos) return Rational(parse_integer(num));
    std::string_view den = text.substr(slash + 1);
    if (!is_integer_text(den)) throw InvalidLength("malformed rational '" + std::string(text) + "'");
    Integer d = parse_integer(den);
    if (d == 0) throw InvalidLength("zero denominator in '" + std::string(text) + "'");
    Rational q(parse_integer(num), d);
    q.canonicalize();
    return q;
}

std::string to_decimal(const Rational& q, int digits) {
    if (digits < 0) digits = 0;
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    // Round half away from zero.
    Integer num = abs(q.get_num()) * scale * 2 + q.get_den();
    Integer scaled = num / (q.get_den() * 2);
    std::string s = scaled.get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    std::string out = s.substr(0, s.size() - static_cast<std::size_t>(digits));
    if (digits > 0) out += "." + s.substr(s.size() - static_cast<std::size_t>(digits));
    if (sgn(q) < 0 && scaled != 0) out.insert(0, "-");
    return out;
}

double to_double(const Rational& q) { return q.get_d(); }

Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace balpair
