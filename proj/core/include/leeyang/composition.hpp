#pragma once

// Composition of 2n-variable forms in (z, w), the apolarity bracket, and
// Grace-type non-vanishing checks with randomized campaigns.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "leeyang/domains.hpp"
#include "leeyang/oracle.hpp"
#include "leeyang/poly.hpp"
#include "leeyang/rng.hpp"

namespace leeyang {

/// Both sides of a composition identity. Results are in 2n variables (z, w).
struct CompositionForms {
  MultiPoly coefficient_form{1};
  MultiPoly derivative_form{1};
  double max_relative_difference = 0.0;
};

/// f = sum_a binom(k,a) P_a(w) z^a, g = sum_a binom(k,a) Q_a(z) w^a, returning
/// sum_a binom(k,a) P_a(w) Q_{k-a}(z) and (1/k!) sum_a d^a_z f(0,w) d^{k-a}_w g(z,0).
CompositionForms composition_forms_halfplane(const MultiPoly& f, const MultiPoly& g, const ExponentVector& kappa);
/// sum_a binom(k,a) P_a(w) Q_a(z) and (1/k!) sum_a (k-a)!/a! d^a_z f(0,w) d^a_w g(z,0).
CompositionForms composition_forms_disc(const MultiPoly& f, const MultiPoly& g, const ExponentVector& kappa);

inline constexpr double kCompositionCrossCheckTol = 1e-9;

/// Coefficient form, after asserting agreement with the derivative form.
/// Throws DomainError on form violations and Error if the two forms disagree.
MultiPoly compose_halfplane(const MultiPoly& f, const MultiPoly& g, const ExponentVector& kappa);
MultiPoly compose_disc(const MultiPoly& f, const MultiPoly& g, const ExponentVector& kappa);

// ---------------------------------------------------------------------------
// Apolarity

enum class BracketSign {
  kGlobal,   // (-1)^{|kappa|} in front of the whole sum
  kPerTerm,  // (-1)^{|alpha|} on each term (classical univariate apolarity)
};

enum class BracketWeights {
  kDerivatives,        // f^(a)(0) g^(k-a)(0)
  kPlainCoefficients,  // f_a g_{k-a}, no factorial weights
};

struct BracketConfig {
  BracketSign sign = BracketSign::kGlobal;
  BracketWeights weights = BracketWeights::kDerivatives;
};

struct BracketValue {
  Complex value = 0.0;
  double scale = 0.0;  // sum of the absolute values of the terms
};

/// Throws DomainError if f or g exceeds kappa.
BracketValue apolarity_bracket_detail(const MultiPoly& f, const MultiPoly& g, const ExponentVector& kappa,
                                      const BracketConfig& cfg = {});
Complex apolarity_bracket(const MultiPoly& f, const MultiPoly& g, const ExponentVector& kappa,
                          const BracketConfig& cfg = {});

/// Which polynomial the "degree = kappa_j on disc coordinates" condition of
/// hypothesis (ii) constrains.
enum class DegreeReading { kOnG, kOnF };

struct GraceConfig {
  BracketConfig bracket{};
  DegreeReading degree_reading = DegreeReading::kOnG;
  OracleConfig oracle{};
  double vanishing_threshold = 1e-10;  // relative to BracketValue::scale
};

struct GraceReport {
  BracketValue bracket;
  double abs_bracket = 0.0;
  bool hypotheses_verified = false;
  bool conclusion_applicable = false;
  bool violation = false;  // hypotheses verified, conclusion applicable, bracket vanishes
  std::vector<std::string> notes;
};

/// `domains` must be discs or disc exteriors, one per variable.
GraceReport grace_check_disc(const MultiPoly& f, const MultiPoly& g, std::span<const CircularDomain> domains,
                             const ExponentVector& kappa, const GraceConfig& cfg = {});

/// kappa <= alpha + beta for some alpha in supp(f), beta in supp(g), with
/// supports taken after relative pruning.
bool support_condition(const MultiPoly& f, const MultiPoly& g, const ExponentVector& kappa);
bool half_planes_intersect(const CircularDomain& c1, const CircularDomain& c2);

/// f is C1^n-stable, g is C2^n-stable.
GraceReport grace_check_halfplane(const MultiPoly& f, const MultiPoly& g, const CircularDomain& c1,
                                  const CircularDomain& c2, const ExponentVector& kappa,
                                  const GraceConfig& cfg = {});

// ---------------------------------------------------------------------------
// Random constructions

/// Product of linear forms sum_{i in S} a_i z_i + c with a_i > 0, Im c > 0,
/// of degree exactly kappa_i in z_i. Strictly H_0^n-stable.
MultiPoly random_upper_stable(const ExponentVector& kappa, Rng& rng);

/// Phi_kappa of random_upper_stable through the catalog maps: strictly stable
/// on `omega`, with degree exactly kappa_i on disc-exterior coordinates.
MultiPoly random_stable(const DomainProduct& omega, const ExponentVector& kappa, Rng& rng);

struct GraceCampaignReport {
  std::string name;
  std::uint64_t seed = 0;
  int trials = 0;
  int hypotheses_verified = 0;
  int conclusion_applicable = 0;
  int violations = 0;
  double min_relative_bracket = 0.0;  // min |bracket| / scale over applicable trials
  std::vector<std::uint64_t> violation_seeds;
  // Per-term sign bracket on the same pairs (classical reading).
  int classical_violations = 0;
  double classical_min_relative_bracket = 0.0;
};

/// Trials with n in {1, 2}, kappa in [1, 2]^n and random discs or exteriors.
/// Trial t uses seed derive_seed(seed, t, 0).
GraceCampaignReport grace_campaign_disc(int trials, std::uint64_t seed, const GraceConfig& cfg = {});
/// Same for random pairs of intersecting half-planes.
GraceCampaignReport grace_campaign_halfplane(int trials, std::uint64_t seed, const GraceConfig& cfg = {});

}  // namespace leeyang
