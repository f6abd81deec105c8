#pragma once

// Semi-decision procedure for stability on products of circular domains.
//
// Non-stability is certified by an interior zero whose residual and boundary
// margin are checked after polishing. Stability is never certified: the
// oracle reports how hard it looked (NoZeroFound).

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "leeyang/domains.hpp"
#include "leeyang/poly.hpp"

namespace leeyang {

struct OracleConfig {
  int slices_per_variable = 200;
  std::uint64_t seed = 0;
  double residual_tol = 1e-9;
  double boundary_margin = 1e-7;
  int max_newton_iters = 50;
  SamplerConfig sampler{};
};

struct Counterexample {
  std::vector<Complex> point;
  double residual = 0.0;         // |f(point)|
  double scale = 0.0;            // sum |c_alpha| |point^alpha|
  double boundary_margin = 0.0;  // min over coordinates of distance to boundary
};

struct NoZeroFound {
  int slices_per_variable = 0;
  long total_samples = 0;
  double min_abs_seen = 0.0;  // min |f| / scale over sampled interior points
};

struct StabilityVerdict {
  std::variant<Counterexample, NoZeroFound> kind;

  bool found_zero() const { return std::holds_alternative<Counterexample>(kind); }
  const Counterexample& counterexample() const { return std::get<Counterexample>(kind); }
  const NoZeroFound& evidence() const { return std::get<NoZeroFound>(kind); }
};

/// Slices along each coordinate axis through random interior points, finds
/// the univariate roots, and certifies any root strictly inside its domain.
/// Throws DomainError for the zero polynomial.
StabilityVerdict find_zero(const MultiPoly& f, const DomainProduct& omega, const OracleConfig& cfg = {});

/// Re-evaluates a witness: residual within tolerance and margin > 0.
bool verify_counterexample(const MultiPoly& f, const DomainProduct& omega, const Counterexample& cx,
                           double residual_tol = 1e-9);

/// Membership evidence for N_kappa(C_1, .., C_n): stable on the product and of
/// full degree kappa_j in every variable whose domain is non-convex.
struct MembershipVerdict {
  bool member = false;  // true = evidence only; false = certified
  std::string reason;
  std::optional<StabilityVerdict> stability;
};

MembershipVerdict in_N_kappa(const MultiPoly& f, const DomainProduct& omega, const ExponentVector& kappa,
                             const OracleConfig& cfg = {});

}  // namespace leeyang
