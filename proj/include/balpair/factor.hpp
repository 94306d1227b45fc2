#pragma once

#include "balpair/poly.hpp"

#include <optional>
#include <vector>

namespace balpair {

struct Factor {
    RatPoly poly;  ///< monic, irreducible over Q
    int multiplicity = 1;
    friend bool operator==(const Factor&, const Factor&) = default;
};

inline constexpr int kDefaultDegreeCap = 8;

/// Full factorization over Q into monic irreducibles.
///
/// Works in three passes: a squarefree decomposition, deflation of every
/// rational root, then Kronecker's method on whatever is left. A leftover
/// factor with no rational roots and degree above `degree_cap` raises
/// DegreeCapExceeded. The result is sorted by degree, then by coefficients.
std::vector<Factor> factor_poly(const RatPoly& p, int degree_cap = kDefaultDegreeCap);

/// Yun's algorithm. Entry i holds the product of irreducibles of multiplicity i+1.
std::vector<RatPoly> squarefree_decomposition(const RatPoly& p);

/// Distinct rational roots in increasing order.
std::vector<Rational> rational_roots(const RatPoly& p);

/// A proper monic factor of `p` when one exists, searched by Kronecker's
/// method. `p` must have no rational roots.
std::optional<RatPoly> kronecker_split(const RatPoly& p);

/// The k-th cyclotomic polynomial.
RatPoly cyclotomic(int k);

/// k such that f == cyclotomic(k), if any.
std::optional<int> cyclotomic_index(const RatPoly& f);

/// Product of factors raised to their multiplicities.
RatPoly expand(const std::vector<Factor>& factors);

}  // namespace balpair
