#pragma once

#include "balpair/number_field.hpp"
#include "balpair/substitution.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace balpair {

/// Which length vector a generalized relation uses.
struct LengthSpec {
    enum class Kind { ones, perron, custom };
    Kind kind = Kind::ones;
    std::vector<Rational> custom;  ///< strictly positive, only for Kind::custom

    static LengthSpec ones() { return {Kind::ones, {}}; }
    static LengthSpec perron() { return {Kind::perron, {}}; }
    static LengthSpec from_values(std::vector<Rational> v);
    /// "ones" | "lambda" | comma-separated positive rationals ("4,2,5,4", "1/2,1,3").
    static LengthSpec parse(std::string_view text);

    /// Inverse of parse().
    std::string label() const;
    friend bool operator==(const LengthSpec&, const LengthSpec&) = default;
};

/// Perron-Frobenius eigenvalue field and left eigenvector of a primitive substitution.
struct PerronData {
    FieldPtr field;
    std::vector<FieldScalar> left;  ///< L_lambda, first entry 1
};

PerronData perron_data(const Substitution& phi);

/// Partition of the alphabet; class ids are numbered by first member.
struct LetterPartition {
    std::vector<int> class_of;
    std::vector<std::vector<Letter>> classes;
    friend bool operator==(const LetterPartition&, const LetterPartition&) = default;
};

enum class RelationMode { plain, letter_classes, generalized };
const char* to_string(RelationMode m);

/// A balance notion on words. Every mode reduces to an integer matrix K:
/// u ~ v iff K (p(u) - p(v)) == 0. Every mode also carries a strictly
/// positive length vector (all ones for plain and letter classes) whose
/// exact comparisons drive pair splitting.
class Relation {
public:
    static Relation plain(std::shared_ptr<const Substitution> phi);
    static Relation letter_classes(std::shared_ptr<const Substitution> phi);
    /// `perron` may be supplied to avoid recomputing L_lambda.
    static Relation generalized(std::shared_ptr<const Substitution> phi, const LengthSpec& spec,
                                const PerronData* perron = nullptr);

    RelationMode mode() const noexcept { return mode_; }
    const Substitution& substitution() const noexcept { return *phi_; }
    const std::shared_ptr<const Substitution>& substitution_ptr() const noexcept { return phi_; }
    const LengthSpec& length_spec() const noexcept { return spec_; }
    const std::vector<FieldScalar>& lengths() const noexcept { return lengths_; }
    const LetterPartition& partition() const noexcept { return partition_; }
    const std::vector<std::vector<std::int64_t>>& kernel_rows() const noexcept { return rows_; }
    bool uses_perron_lengths() const noexcept { return mode_ == RelationMode::generalized && spec_.kind == LengthSpec::Kind::perron; }

    /// K z == 0 for a population difference z.
    bool equivalent(std::span<const std::int64_t> z) const;
    /// Exact sign of L . z.
    int length_sign(std::span<const std::int64_t> z) const;
    FieldScalar length(const Word& w) const;

    /// "plain", "letters", or "general:<spec>".
    std::string label() const;

private:
    Relation() = default;
    void set_lengths(std::vector<FieldScalar> lengths);

    RelationMode mode_ = RelationMode::plain;
    std::shared_ptr<const Substitution> phi_;
    LengthSpec spec_;
    LetterPartition partition_;
    std::vector<std::vector<std::int64_t>> rows_;
    std::vector<FieldScalar> lengths_;
    bool rational_lengths_ = true;
    std::vector<std::int64_t> int_lengths_;  ///< lengths times a common denominator
    std::vector<long double> approx_lengths_;
    std::vector<std::vector<std::int64_t>> length_coeff_rows_;  ///< coefficients of L in the power basis, scaled
};

/// i ~ j iff 1^T A^m (e_i - e_j) == 0 for m = 0..n-1.
LetterPartition letter_equiv_classes(const Substitution& phi);

std::vector<FieldScalar> resolve_length_vector(const Substitution& phi, const LengthSpec& spec,
                                               const PerronData* perron = nullptr);

/// Throws AlphabetMismatch when a word uses letters outside the relation's alphabet.
bool word_equiv(const Relation& rel, const Word& u, const Word& v);
FieldScalar length_of(const Relation& rel, const Word& w);

/// L_lambda . z == 0 exactly.
bool in_pf_kernel(const PerronData& perron, std::span<const std::int64_t> z);
bool in_pf_kernel(const Substitution& phi, std::span<const std::int64_t> z);

/// Rows spanning {L A^m : m < n}, reduced and scaled to primitive integer vectors.
std::vector<std::vector<std::int64_t>> orbit_kernel_rows(const IntMatrix& a, const std::vector<Rational>& l);

}  // namespace balpair
