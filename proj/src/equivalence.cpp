#include "balpair/equivalence.hpp"

#include "balpair/errors.hpp"
#include "balpair/spectrum.hpp"

#include <cmath>
#include <map>

namespace balpair {

namespace {

std::int64_t to_int64(const Integer& z) {
    if (!z.fits_slong_p()) throw InvariantViolation("integer does not fit in 64 bits: " + z.get_str());
    return z.get_si();
}

/// Row-reduced echelon basis of the span of `rows`, each scaled to a primitive integer vector.
std::vector<std::vector<std::int64_t>> reduced_integer_rows(std::vector<std::vector<Rational>> rows, std::size_t n) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && sgn(rows[piv][col]) == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        Rational inv = 1 / rows[rank][col];
        for (auto& q : rows[rank]) q *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || sgn(rows[r][col]) == 0) continue;
            Rational f = rows[r][col];
            for (std::size_t c = 0; c < n; ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    rows.resize(rank);
    std::vector<std::vector<std::int64_t>> out;
    out.reserve(rank);
    for (const auto& row : rows) {
        Integer den = 1, g = 0;
        for (const auto& q : row) den = lcm(den, q.get_den());
        std::vector<Integer> ints;
        for (const auto& q : row) {
            Integer v = q.get_num() * (den / q.get_den());
            g = gcd(g, v);
            ints.push_back(v);
        }
        std::vector<std::int64_t> r;
        for (auto& v : ints) r.push_back(to_int64(v / g));
        out.push_back(std::move(r));
    }
    return out;
}

void check_alphabet(std::span<const std::int64_t> z, std::size_t n) {
    if (z.size() != n) throw AlphabetMismatch("population vector has " + std::to_string(z.size()) +
                                              " entries, alphabet has " + std::to_string(n));
}

std::vector<std::int64_t> difference(const Word& u, const Word& v, std::size_t n) {
    PopulationVector pu = population_vector(u, n), pv = population_vector(v, n);
    std::vector<std::int64_t> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = pu[i] - pv[i];
    return z;
}

}  // namespace

LengthSpec LengthSpec::from_values(std::vector<Rational> v) {
    if (v.empty()) throw InvalidLength("empty length vector");
    for (auto& q : v) {
        // Caller-built fractions may be unreduced; equality relies on the canonical form.
        q.canonicalize();
        if (sgn(q) <= 0) throw InvalidLength("length entries must be strictly positive, got " + balpair::to_string(q));
    }
    return {Kind::custom, std::move(v)};
}

LengthSpec LengthSpec::parse(std::string_view text) {
    if (text == "ones") return ones();
    if (text == "lambda") return perron();
    std::vector<Rational> v;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        v.push_back(parse_rational(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return from_values(std::move(v));
}

std::string LengthSpec::label() const {
    switch (kind) {
        case Kind::ones: return "ones";
        case Kind::perron: return "lambda";
        case Kind::custom: break;
    }
    std::string s;
    for (std::size_t i = 0; i < custom.size(); ++i) {
        if (i) s += ",";
        s += balpair::to_string(custom[i]);
    }
    return s;
}

PerronData perron_data(const Substitution& phi) {
    if (!is_primitive(phi)) throw NotPrimitive();
    PerronData d;
    d.field = perron_field(phi.matrix());
    d.left = left_pf_eigenvector(phi.matrix(), d.field);
    for (const auto& x : d.left)
        if (x.sign() <= 0) throw InvariantViolation("left Perron-Frobenius eigenvector is not strictly positive");
    return d;
}

const char* to_string(RelationMode m) {
    switch (m) {
        case RelationMode::plain: return "plain";
        case RelationMode::letter_classes: return "letters";
        case RelationMode::generalized: return "general";
    }
    return "?";
}

std::vector<std::vector<std::int64_t>> orbit_kernel_rows(const IntMatrix& a, const std::vector<Rational>& l) {
    const std::size_t n = a.rows();
    if (l.size() != n) throw AlphabetMismatch("length vector has " + std::to_string(l.size()) +
                                              " entries, alphabet has " + std::to_string(n));
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> cur = l;
    for (std::size_t m = 0; m < n; ++m) {
        rows.push_back(cur);
        std::vector<Rational> next(n, Rational(0));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) next[j] += cur[i] * Rational(a(i, j));
        cur = std::move(next);
    }
    return reduced_integer_rows(std::move(rows), n);
}

std::vector<FieldScalar> resolve_length_vector(const Substitution& phi, const LengthSpec& spec,
                                               const PerronData* perron) {
    const std::size_t n = phi.size();
    switch (spec.kind) {
        case LengthSpec::Kind::ones:
            return std::vector<FieldScalar>(n, FieldScalar(NumberField::rationals(), Rational(1)));
        case LengthSpec::Kind::perron:
            return perron ? perron->left : perron_data(phi).left;
        case LengthSpec::Kind::custom: break;
    }
    if (spec.custom.size() != n)
        throw InvalidLength("length vector has " + std::to_string(spec.custom.size()) + " entries, alphabet has " +
                            std::to_string(n));
    std::vector<FieldScalar> out;
    for (const auto& q : spec.custom) {
        if (sgn(q) <= 0) throw InvalidLength("length entries must be strictly positive");
        out.emplace_back(NumberField::rationals(), q);
    }
    return out;
}

void Relation::set_lengths(std::vector<FieldScalar> lengths) {
    lengths_ = std::move(lengths);
    const std::size_t n = lengths_.size();
    rational_lengths_ = true;
    for (const auto& x : lengths_) rational_lengths_ = rational_lengths_ && x.is_rational();
    approx_lengths_.clear();
    for (const auto& x : lengths_) approx_lengths_.push_back(static_cast<long double>(x.approx()));
    int_lengths_.clear();
    length_coeff_rows_.clear();
    if (rational_lengths_) {
        Integer den = 1;
        for (const auto& x : lengths_) den = lcm(den, x.rational_value().get_den());
        for (const auto& x : lengths_) {
            Rational q = x.rational_value() * Rational(den);
            int_lengths_.push_back(to_int64(q.get_num()));
        }
        return;
    }
    const int d = lengths_[0].field()->degree();
    Integer den = 1;
    for (const auto& x : lengths_)
        for (const auto& c : x.coeffs()) den = lcm(den, c.get_den());
    length_coeff_rows_.assign(static_cast<std::size_t>(d), std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (int r = 0; r < d; ++r) {
            Rational q = lengths_[i].coeffs()[static_cast<std::size_t>(r)] * Rational(den);
            length_coeff_rows_[static_cast<std::size_t>(r)][i] = to_int64(q.get_num());
        }
}

Relation Relation::plain(std::shared_ptr<const Substitution> phi) {
    Relation rel;
    const std::size_t n = phi->size();
    rel.mode_ = RelationMode::plain;
    rel.phi_ = std::move(phi);
    rel.spec_ = LengthSpec::ones();
    rel.partition_.class_of.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        rel.partition_.class_of[i] = static_cast<int>(i);
        rel.partition_.classes.push_back({static_cast<Letter>(i)});
        std::vector<std::int64_t> row(n, 0);
        row[i] = 1;
        rel.rows_.push_back(std::move(row));
    }
    rel.set_lengths(resolve_length_vector(*rel.phi_, rel.spec_));
    return rel;
}

Relation Relation::letter_classes(std::shared_ptr<const Substitution> phi) {
    Relation rel;
    const std::size_t n = phi->size();
    rel.mode_ = RelationMode::letter_classes;
    rel.phi_ = std::move(phi);
    rel.spec_ = LengthSpec::ones();
    rel.partition_ = letter_equiv_classes(*rel.phi_);
    for (const auto& cls : rel.partition_.classes) {
        std::vector<std::int64_t> row(n, 0);
        for (Letter a : cls) row[a] = 1;
        rel.rows_.push_back(std::move(row));
    }
    rel.set_lengths(resolve_length_vector(*rel.phi_, rel.spec_));
    return rel;
}

Relation Relation::generalized(std::shared_ptr<const Substitution> phi, const LengthSpec& spec,
                               const PerronData* perron) {
    Relation rel;
    rel.mode_ = RelationMode::generalized;
    rel.phi_ = std::move(phi);
    rel.spec_ = spec;
    rel.partition_ = letter_equiv_classes(*rel.phi_);
    rel.set_lengths(resolve_length_vector(*rel.phi_, spec, perron));
    const std::size_t n = rel.phi_->size();
    if (rel.rational_lengths_) {
        std::vector<Rational> l;
        for (const auto& x : rel.lengths_) l.push_back(x.rational_value());
        // For an eigenvector, L A^m is proportional to L and the orbit collapses to one row.
        rel.rows_ = orbit_kernel_rows(rel.phi_->matrix(), l);
    } else {
        std::vector<std::vector<Rational>> rows;
        for (const auto& r : rel.length_coeff_rows_) {
            std::vector<Rational> q;
            for (auto v : r) q.emplace_back(v);
            rows.push_back(std::move(q));
        }
        rel.rows_ = reduced_integer_rows(std::move(rows), n);
    }
    return rel;
}

bool Relation::equivalent(std::span<const std::int64_t> z) const {
    check_alphabet(z, lengths_.size());
    for (const auto& row : rows_) {
        __int128 s = 0;
        for (std::size_t i = 0; i < z.size(); ++i) s += static_cast<__int128>(row[i]) * z[i];
        if (s != 0) return false;
    }
    return true;
}

int Relation::length_sign(std::span<const std::int64_t> z) const {
    check_alphabet(z, lengths_.size());
    if (rational_lengths_) {
        __int128 s = 0;
        for (std::size_t i = 0; i < z.size(); ++i) s += static_cast<__int128>(int_lengths_[i]) * z[i];
        return (s > 0) - (s < 0);
    }
    long double s = 0, mag = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        long double t = approx_lengths_[i] * static_cast<long double>(z[i]);
        s += t;
        mag += std::fabs(t);
    }
    // Each approximation carries relative error below 2^-52; summation adds 2^-63 per term.
    if (std::fabs(s) > mag * 1e-13L) return s > 0 ? 1 : -1;
    std::vector<Rational> coeffs;
    bool zero = true;
    for (const auto& row : length_coeff_rows_) {
        __int128 c = 0;
        for (std::size_t i = 0; i < z.size(); ++i) c += static_cast<__int128>(row[i]) * z[i];
        zero = zero && c == 0;
        coeffs.emplace_back(Integer(static_cast<long>(c)));
    }
    if (zero) return 0;
    return FieldScalar(lengths_[0].field(), std::move(coeffs)).sign();
}

FieldScalar Relation::length(const Word& w) const {
    PopulationVector p = population_vector(w, lengths_.size());
    FieldScalar s(lengths_[0].field(), Rational(0));
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i]) s += lengths_[i] * FieldScalar(lengths_[i].field(), Rational(static_cast<long>(p[i])));
    return s;
}

std::string Relation::label() const {
    if (mode_ == RelationMode::generalized) return "general:" + spec_.label();
    return to_string(mode_);
}

LetterPartition letter_equiv_classes(const Substitution& phi) {
    const std::size_t n = phi.size();
    auto rows = orbit_kernel_rows(phi.matrix(), std::vector<Rational>(n, Rational(1)));
    LetterPartition part;
    part.class_of.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (part.class_of[i] >= 0) continue;
        int id = static_cast<int>(part.classes.size());
        part.classes.push_back({static_cast<Letter>(i)});
        part.class_of[i] = id;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (part.class_of[j] >= 0) continue;
            bool same = true;
            for (const auto& r : rows) same = same && r[i] == r[j];
            if (same) {
                part.class_of[j] = id;
                part.classes[static_cast<std::size_t>(id)].push_back(static_cast<Letter>(j));
            }
        }
    }
    return part;
}

bool word_equiv(const Relation& rel, const Word& u, const Word& v) {
    return rel.equivalent(difference(u, v, rel.substitution().size()));
}

FieldScalar length_of(const Relation& rel, const Word& w) { return rel.length(w); }

bool in_pf_kernel(const PerronData& perron, std::span<const std::int64_t> z) {
    check_alphabet(z, perron.left.size());
    FieldScalar s(perron.field, Rational(0));
    for (std::size_t i = 0; i < z.size(); ++i)
        if (z[i]) s += perron.left[i] * FieldScalar(perron.field, Rational(static_cast<long>(z[i])));
    return s.is_zero();
}

bool in_pf_kernel(const Substitution& phi, std::span<const std::int64_t> z) {
    return in_pf_kernel(perron_data(phi), z);
}

}  // namespace balpair
