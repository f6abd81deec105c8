#pragma once

// Univariate root finding: eigenvalues of the balanced companion matrix,
// Newton polishing, and refinement of clustered (multiple) roots.

#include <span>
#include <vector>

#include "leeyang/domains.hpp"
#include "leeyang/poly.hpp"

namespace leeyang {

/// All roots of sum_k coeffs[k] t^k, repeated by multiplicity.
///
/// Requires degree >= 1 and |leading| >= 1e-12 * max|coeff|; throws
/// DomainError otherwise (the caller deflates). Eigenvalue clusters that pass
/// a backward-error test for an m-fold root are replaced by a single point
/// (the root of the (m-1)-th derivative) repeated m times.
std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs);

/// Roots of a polynomial with nvars == 1.
std::vector<Complex> univariate_roots(const MultiPoly& f);

/// Removes leading coefficients with |c| <= rel * max|c|.
std::vector<Complex> deflate_leading(std::span<const Complex> coeffs, double rel = 1e-12);

/// Horner evaluation of ascending coefficients.
Complex horner(std::span<const Complex> coeffs, Complex t);

enum class BoundaryPolicy {
  kBoundaryOutside,  // roots within tolerance of the boundary are not inside
  kBoundaryInside,
};

/// True iff no root of f lies in the open domain d. nvars must be 1.
bool is_stable_exact_univariate(const MultiPoly& f, const CircularDomain& d, double boundary_tol = 1e-9,
                                BoundaryPolicy policy = BoundaryPolicy::kBoundaryOutside);

}  // namespace leeyang
