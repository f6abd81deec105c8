#pragma once

// Ising partition functions in fugacity form, the edge-operator pipeline,
// Heilmann-Lieb matching polynomials and the circle-theorem product.

#include <optional>
#include <span>
#include <vector>

#include "leeyang/oracle.hpp"
#include "leeyang/poly.hpp"

namespace leeyang {

inline constexpr int kMaxSpins = 20;

struct SpinSystem {
  int n = 0;
  std::vector<std::vector<double>> J;  // n x n, symmetric

  SpinSystem() = default;
  /// Throws DimensionError / DomainError unless J is n x n, finite and
  /// symmetric within 1e-12.
  SpinSystem(int n, std::vector<std::vector<double>> J);
  static SpinSystem zero(int n);

  bool ferromagnetic() const;
};

struct WeightedGraph {
  struct Edge {
    int i = 0;
    int j = 0;
    double lambda = 1.0;
  };

  int n = 0;
  std::vector<Edge> edges;

  WeightedGraph() = default;
  /// Throws on self-loops, out-of-range endpoints or negative weights.
  WeightedGraph(int n, std::vector<Edge> edges);
};

/// exp(sum over all ordered pairs (i, j) of J_ij s_i s_j).
double mu_weight(const SpinSystem& s, std::span<const int> sigma);

/// sum_sigma mu(sigma) prod_i x_i^{sigma_i + 1}; exponents lie in {0, 2}.
MultiPoly partition_fugacity(const SpinSystem& s);

/// partition_fugacity with every x_i = x: degree 2n, even powers only.
MultiPoly diagonal_partition(const SpinSystem& s);

/// Roots of diagonal_partition, computed in y = x^2 and lifted to +-sqrt(y).
std::vector<Complex> diagonal_roots(const SpinSystem& s);

struct LeeYangReport {
  bool ferromagnetic = false;
  std::vector<Complex> roots;
  double max_deviation = 0.0;  // max | |root| - 1 |
  double tol = 0.0;
  bool pass = false;
};

LeeYangReport lee_yang_check(const SpinSystem& s, double tol = 1e-8);

/// prod_i [(1 + h_i/k)^k + (1 - h_i/k)^k], followed by the edge operator
/// cosh(J_ij) + sinh(J_ij) d^2/(dh_i dh_j) for every ordered pair (i, j)
/// with J_ij != 0. Requires a ferromagnetic system.
MultiPoly edge_operator_pipeline(const SpinSystem& s, int k);

/// MAP[prod_e (1 + lambda_e z_i z_j)], multiplying with truncation at (1, .., 1).
MultiPoly multi_affine_edge_product(const WeightedGraph& g);
/// sum over matchings M of prod_{e in M} lambda_e prod_{v covered by M} z_v.
MultiPoly matchings_polynomial(const WeightedGraph& g);
/// multi_affine_edge_product after asserting agreement with
/// matchings_polynomial (1e-12 relative); throws Error on disagreement.
MultiPoly heilmann_lieb_poly(const WeightedGraph& g);

struct HeilmannLiebReport {
  MultiPoly poly{1};
  std::optional<StabilityVerdict> verdict;  // on the right half-plane^n
  std::vector<Complex> diagonal_roots;      // roots in z of poly(z, .., z)
  double max_real_part = 0.0;
  double tol = 0.0;
  bool pass = false;
};

HeilmannLiebReport heilmann_lieb_check(const WeightedGraph& g, double tol = 1e-8, const OracleConfig& cfg = {});

/// a[i][j] for i < j is read; a_ji is taken as conj(a_ij). Throws
/// DomainError if some |a_ij| > 1.
struct CircleTheoremResult {
  MultiPoly hadamard_product{1};
  MultiPoly closed_form{1};
  double max_difference = 0.0;
};

CircleTheoremResult circle_theorem_forms(const std::vector<std::vector<Complex>>& a);
/// Hadamard iterate of the f_ij after asserting coefficientwise agreement
/// with sum_S z^S prod_{i in S, j not in S} a_ij within 1e-10.
MultiPoly circle_theorem_product(const std::vector<std::vector<Complex>>& a);

struct CircleTheoremReport {
  CircleTheoremResult forms;
  StabilityVerdict verdict;  // on the unit disc^n
  bool pass = false;
};

CircleTheoremReport circle_theorem_check(const std::vector<std::vector<Complex>>& a, const OracleConfig& cfg = {});

}  // namespace leeyang
