#pragma once

#include "balpair/factor.hpp"
#include "balpair/matrix.hpp"
#include "balpair/number_field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace balpair {

/// Monic characteristic polynomial det(xI - A), computed with the
/// Faddeev-LeVerrier recurrence over the integers (each division is exact).
RatPoly char_poly(const IntMatrix& a);

/// p(A) by Horner's rule. Cayley-Hamilton says char_poly(A)(A) == 0.
IntMatrix eval_matrix_poly(const RatPoly& p, const IntMatrix& a);

/// True iff some power A^m with m <= (n-1)^2 + 1 is strictly positive (Wielandt bound).
bool is_primitive_matrix(const IntMatrix& a);

/// Q(lambda) for the Perron-Frobenius eigenvalue of a primitive matrix:
/// the irreducible factor of the characteristic polynomial owning the
/// largest real root, with a Sturm-checked isolating interval.
FieldPtr perron_field(const IntMatrix& a, int degree_cap = kDefaultDegreeCap);
FieldPtr perron_field(const std::vector<Factor>& factors);

/// Left eigenvector L with L A = lambda L, normalized so that L[0] == 1.
std::vector<FieldScalar> left_pf_eigenvector(const IntMatrix& a, const FieldPtr& field);

/// Smallest positive integer vector proportional to `v`, when every entry is rational.
std::optional<std::vector<Integer>> integer_form(const std::vector<FieldScalar>& v);

enum class RootClass { zero, small, unit, large, perron };
const char* to_string(RootClass c);

struct RootInfo {
    RootClass cls;
    std::string approx;  ///< "re" or "re+imi", 12 significant digits
};

struct FactorReport {
    RatPoly poly;
    int multiplicity = 1;
    std::optional<int> cyclotomic;  ///< k when poly is the k-th cyclotomic polynomial
    std::vector<RootInfo> roots;    ///< one entry per distinct root
};

struct EigenReport {
    RatPoly char_poly;
    std::vector<FactorReport> factors;
    /// Root counts with multiplicity, indexed by RootClass.
    int counts[5] = {0, 0, 0, 0, 0};
    bool primitive = false;
    /// Every non-PF eigenvalue has modulus strictly between 0 and 1.
    bool pisot_type_literal = false;
    /// Variant that also admits eigenvalue 0.
    bool pisot_type_allow_zero = false;
    bool charpoly_irreducible = false;
    bool constant_length = false;
    /// Non-PF roots of modulus >= 1, and roots of modulus < 1, with multiplicity.
    int script_l_dim = 0;
    int script_s_dim = 0;
    int precision_bits = 0;  ///< highest rung of the precision ladder that was needed

    int count(RootClass c) const { return counts[static_cast<int>(c)]; }
};

inline constexpr int kDefaultMaxPrecisionBits = 1024;

/// Classifies every eigenvalue of A by modulus. Zero roots come from the
/// x factor; unit roots are certified algebraically (cyclotomic factors);
/// the rest are located by Aberth iteration with Weierstrass inclusion
/// discs at 64, 256, then 1024 bits (4096 when `max_bits` allows).
/// Throws Undecidable when a disc still straddles the unit circle.
EigenReport classify_spectrum(const IntMatrix& a, int max_bits = kDefaultMaxPrecisionBits,
                              int degree_cap = kDefaultDegreeCap);

}  // namespace balpair
