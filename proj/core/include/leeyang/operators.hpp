#pragma once

// Linear operators on truncated polynomial spaces C_kappa[z_1..z_n], stored
// extensionally as their action on monomials, with algebraic and truncated
// transcendental symbols and evidence-based preserver classification.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "leeyang/domains.hpp"
#include "leeyang/oracle.hpp"
#include "leeyang/poly.hpp"

namespace leeyang {

class LinearOperator {
 public:
  using ActionTable = std::map<ExponentVector, MultiPoly>;

  /// Monomials missing from `action` map to zero. Every image must live in
  /// `nvars_out` variables and every key must satisfy alpha <= kappa_in.
  LinearOperator(ExponentVector kappa_in, int nvars_out, ActionTable action, std::string name = {});

  /// Tabulates `image` on every alpha <= kappa_in.
  static LinearOperator tabulate(const ExponentVector& kappa_in, int nvars_out,
                                 const std::function<MultiPoly(const ExponentVector&)>& image,
                                 std::string name = {});

  const ExponentVector& kappa_in() const { return kappa_in_; }
  int nvars_in() const { return static_cast<int>(kappa_in_.size()); }
  int nvars_out() const { return nvars_out_; }
  const ActionTable& action() const { return action_; }
  const std::string& name() const { return name_; }

  /// T(z^alpha); zero polynomial when alpha is absent.
  MultiPoly image(const ExponentVector& alpha) const;

 private:
  ExponentVector kappa_in_;
  int nvars_out_;
  ActionTable action_;
  std::string name_;
};

/// Linear extension of the action table. Throws DomainError if f is not in
/// C_{kappa_in}.
MultiPoly apply(const LinearOperator& t, const MultiPoly& f);

struct RankInfo {
  bool rank_le_one = false;
  std::optional<MultiPoly> common_image;  // P with T(f) = alpha(f) P
};

/// Range of dimension <= 1: all nonzero images pairwise proportional within
/// `tol` on normalized coefficient vectors.
RankInfo rank_at_most_one(const LinearOperator& t, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Symbols. Results have nvars_out + nvars_in variables ordered (z, w).

/// T[(z + w)^kappa], kappa = kappa_in.
MultiPoly algebraic_symbol_halfplane(const LinearOperator& t);
/// T[(1 + z w)^kappa].
MultiPoly algebraic_symbol_disc(const LinearOperator& t);
/// T[prod_i ((a_i z_i + b_i)(c_i w_i + d_i) + (a_i w_i + b_i)(c_i z_i + d_i))^kappa_i].
MultiPoly algebraic_symbol_general(const LinearOperator& t, std::span<const MoebiusMap> maps);

enum class SeriesSign {
  kMinus,  // T[e^{-z.w}], for H_0
  kPlus,   // T[e^{z.w}], for H_{pi/2}
};

/// Partial sum over |alpha| <= order of sign^{|alpha|} T(z^alpha) w^alpha / alpha!.
/// Throws DomainError if order exceeds kappa_in in some variable.
MultiPoly transcendental_symbol_truncated(const LinearOperator& t, SeriesSign sign, int order);

// ---------------------------------------------------------------------------
// Built-in operators

LinearOperator builtin_identity(const ExponentVector& kappa);
/// d/dz_var.
LinearOperator builtin_partial(int var, const ExponentVector& kappa);
/// f(z) -> f(factor * z) in every variable.
LinearOperator builtin_scaling(Complex factor, const ExponentVector& kappa);
/// f -> alpha(f) P with alpha(z^a) = functional[a].
LinearOperator builtin_rank_one(const ExponentVector& kappa, const std::map<ExponentVector, Complex>& functional,
                                const MultiPoly& p);

/// a + b z_i + c z_j + d z_i z_j -> a + d z_i (0-based i != j, kappa_i = kappa_j = 1).
LinearOperator builtin_asano(int i, int j, const ExponentVector& kappa);
/// Keeps the multi-affine part.
LinearOperator builtin_map_operator(const ExponentVector& kappa);
/// cosh(J) + sinh(J) d^2/(dz_i dz_j); i == j gives d^2/dz_i^2.
LinearOperator builtin_lee_yang_edge(int i, int j, double coupling, const ExponentVector& kappa);
/// f -> f . g (Hadamard-Schur); g must be multi-affine, kappa = (1, .., 1).
LinearOperator builtin_hadamard_schur(const MultiPoly& g);
/// On 2n variables (u, v): u^alpha v^beta -> d^alpha/dv^alpha (v^beta).
LinearOperator builtin_lieb_sokal_operator(int n, int cap);

/// Direct (table-free) application of cosh(J) f + sinh(J) d^2 f/(dz_i dz_j).
MultiPoly apply_lee_yang_edge(const MultiPoly& f, int i, int j, double coupling);

/// R(u, v) = sum P_k(u) Q_k(v) and S(z) = sum P_k(d/dz) Q_k(z).
struct LiebSokalPair {
  MultiPoly r;
  MultiPoly s;
};
LiebSokalPair builtin_lieb_sokal(std::span<const MultiPoly> p_list, std::span<const MultiPoly> q_list);

// ---------------------------------------------------------------------------
// Classification evidence

enum class SymbolKind { kAlgebraicHalfPlane, kAlgebraicDisc, kAlgebraicGeneral, kTranscendentalTruncation };

std::string to_string(SymbolKind k);

struct SymbolReport {
  MultiPoly symbol{1};
  SymbolKind kind = SymbolKind::kAlgebraicGeneral;
  int order = 0;  // truncation order; transcendental kind only
  std::optional<StabilityVerdict> verdict;  // on Omega x Omega; absent when the symbol is 0
  bool rank_le_one = false;
  std::optional<MultiPoly> common_image;
  std::optional<StabilityVerdict> image_verdict;  // branch (a): P on Omega
  bool evidence_positive = false;
};

/// Picks the symbol for Omega: (z+w)^kappa when every C_i is the same H_theta,
/// (1+zw)^kappa for unit discs or unit-disc exteriors, otherwise the general
/// symbol with `maps` (or the catalog maps C_i -> H_0 when `maps` is empty).
/// Evidence-positive iff the symbol has no zero found on Omega x Omega, or
/// T has rank <= 1 with a common image that has no zero found on Omega.
SymbolReport classify_preserver_evidence(const LinearOperator& t, const DomainProduct& omega,
                                         std::span<const MoebiusMap> maps = {}, const OracleConfig& cfg = {});

/// For operators defined on all of C[z]: classification on the truncation
/// ladder kappa = (k, .., k), k in `rungs`.
std::vector<SymbolReport> classify_ladder(const std::function<LinearOperator(const ExponentVector&)>& family,
                                          const DomainProduct& omega, std::span<const int> rungs,
                                          const OracleConfig& cfg = {});

}  // namespace leeyang
