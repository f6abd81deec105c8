#include "leeyang/composition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "leeyang/error.hpp"

namespace leeyang {

namespace {

void check_forms(const MultiPoly& f, const MultiPoly& g, const ExponentVector& kappa) {
  const int n = static_cast<int>(kappa.size());
  if (f.nvars() != 2 * n || g.nvars() != 2 * n) throw DimensionError("composition needs 2n-variable forms");
  for (int i = 0; i < n; ++i) {
    const int k = kappa[static_cast<std::size_t>(i)];
    if (f.degree(i) > k) throw DomainError("f exceeds kappa in z" + std::to_string(i + 1));
    if (g.degree(n + i) > k) throw DomainError("g exceeds kappa in w" + std::to_string(i + 1));
  }
}

double relative_difference(const MultiPoly& a, const MultiPoly& b) {
  const double big = std::max(a.max_abs_coefficient(), b.max_abs_coefficient());
  if (big == 0.0) return 0.0;
  double worst = 0.0;
  for (const auto& [e, c] : a.terms()) worst = std::max(worst, std::abs(c - b.coefficient(e)));
  for (const auto& [e, c] : b.terms()) worst = std::max(worst, std::abs(c - a.coefficient(e)));
  return worst / big;
}

// d^alpha_z f at z = 0 (polynomial in w) and d^beta_w g at w = 0 (polynomial in z).
MultiPoly z_derivative_at_zero(const MultiPoly& f, const ExponentVector& alpha) {
  const std::size_t n = alpha.size();
  const std::vector<Complex> zeros(n, 0.0);
  return restrict_block(partial_derive(f, alpha.concat(ExponentVector(n))), 0, zeros);
}

MultiPoly w_derivative_at_zero(const MultiPoly& g, const ExponentVector& beta) {
  const std::size_t n = beta.size();
  const std::vector<Complex> zeros(n, 0.0);
  return restrict_block(partial_derive(g, ExponentVector(n).concat(beta)), static_cast<int>(n), zeros);
}

void add_into(MultiPoly::TermMap& acc, const MultiPoly& p, Complex scale) {
  for (const auto& [e, c] : p.terms()) acc[e] += scale * c;
}

MultiPoly finish(int nvars, MultiPoly::TermMap acc) {
  MultiPoly r(nvars, std::move(acc));
  r.prune();
  return r;
}

CompositionForms composition_forms(const MultiPoly& f, const MultiPoly& g, const ExponentVector& kappa,
                                   bool disc) {
  check_forms(f, g, kappa);
  const int n = static_cast<int>(kappa.size());
  const auto fs = coefficient_slices(f, n);
  const auto gs = coefficient_slices_trailing(g, n);
  const double kfact = kappa.factorial();
  MultiPoly::TermMap coef;
  MultiPoly::TermMap deriv;
  for (const auto& alpha : box(kappa)) {
    const double b = static_cast<double>(multi_binomial(kappa, alpha));
    const ExponentVector partner = disc ? alpha : kappa - alpha;
    // Full slices carry the binomial: F_a = binom P_a, G_b = binom Q_b.
    add_into(coef, tensor(gs.at(partner), fs.at(alpha)), 1.0 / b);

    const MultiPoly df = z_derivative_at_zero(f, alpha);
    const MultiPoly dg = w_derivative_at_zero(g, partner);
    const double weight = disc ? (kappa - alpha).factorial() / alpha.factorial() / kfact : 1.0 / kfact;
    add_into(deriv, tensor(dg, df), weight);
  }
  CompositionForms out;
  out.coefficient_form = finish(2 * n, std::move(coef));
  out.derivative_form = finish(2 * n, std::move(deriv));
  out.max_relative_difference = relative_difference(out.coefficient_form, out.derivative_form);
  return out;
}

MultiPoly checked(CompositionForms forms) {
  if (!(forms.max_relative_difference <= kCompositionCrossCheckTol)) {
    throw Error("composition cross-check failed: coefficient and derivative forms differ by " +
                std::to_string(forms.max_relative_difference));
  }
  return std::move(forms.coefficient_form);
}

}  // namespace

CompositionForms composition_forms_halfplane(const MultiPoly& f, const MultiPoly& g, const ExponentVector& kappa) {
  return composition_forms(f, g, kappa, false);
}

CompositionForms composition_forms_disc(const MultiPoly& f, const MultiPoly& g, const ExponentVector& kappa) {
  return composition_forms(f, g, kappa, true);
}

MultiPoly compose_halfplane(const MultiPoly& f, const MultiPoly& g, const ExponentVector& kappa) {
  return checked(composition_forms_halfplane(f, g, kappa));
}

MultiPoly compose_disc(const MultiPoly& f, const MultiPoly& g, const ExponentVector& kappa) {
  return checked(composition_forms_disc(f, g, kappa));
}

// ---------------------------------------------------------------------------
// Apolarity

BracketValue apolarity_bracket_detail(const MultiPoly& f, const MultiPoly& g, const ExponentVector& kappa,
                                      const BracketConfig& cfg) {
  if (f.nvars() != static_cast<int>(kappa.size()) || g.nvars() != f.nvars()) {
    throw DimensionError("bracket needs f, g and kappa of equal length");
  }
  if (!f.fits_within(kappa) || !g.fits_within(kappa)) throw DomainError("bracket arguments exceed kappa");
  BracketValue out;
  for (const auto& alpha : box(kappa)) {
    const ExponentVector beta = kappa - alpha;
    Complex term = f.coefficient(alpha) * g.coefficient(beta);
    if (term == Complex(0.0)) continue;
    if (cfg.weights == BracketWeights::kDerivatives) term *= alpha.factorial() * beta.factorial();
    if (cfg.sign == BracketSign::kPerTerm && alpha.total() % 2 == 1) term = -term;
    out.value += term;
    out.scale += std::abs(term);
  }
  if (cfg.sign == BracketSign::kGlobal && kappa.total() % 2 == 1) out.value = -out.value;
  return out;
}

Complex apolarity_bracket(const MultiPoly& f, const MultiPoly& g, const ExponentVector& kappa,
                          const BracketConfig& cfg) {
  return apolarity_bracket_detail(f, g, kappa, cfg).value;
}

namespace {

bool vanishes(const BracketValue& b, double threshold) { return std::abs(b.value) <= threshold * b.scale; }

bool stable_on(const MultiPoly& p, const DomainProduct& omega, const OracleConfig& cfg) {
  return !find_zero(p, omega, cfg).found_zero();
}

}  // namespace

GraceReport grace_check_disc(const MultiPoly& f, const MultiPoly& g, std::span<const CircularDomain> domains,
                             const ExponentVector& kappa, const GraceConfig& cfg) {
  const int n = static_cast<int>(kappa.size());
  if (static_cast<int>(domains.size()) != n) throw DimensionError("need one domain per variable");
  for (const auto& d : domains) {
    if (d.kind() == CircularDomain::Kind::kHalfPlane) throw DomainError("disc check needs discs or disc exteriors");
  }
  GraceReport rep;
  rep.bracket = apolarity_bracket_detail(f, g, kappa, cfg.bracket);
  rep.abs_bracket = std::abs(rep.bracket.value);
  rep.conclusion_applicable = true;

  if (f.is_zero() || g.is_zero()) {
    rep.notes.push_back("zero polynomial");
    return rep;
  }
  bool ok = true;
  const MultiPoly& constrained = cfg.degree_reading == DegreeReading::kOnG ? g : f;
  for (int j = 0; j < n; ++j) {
    const auto jj = static_cast<std::size_t>(j);
    const bool exterior = domains[jj].kind() == CircularDomain::Kind::kDiscExterior;
    if (exterior && f.degree(j) != kappa[jj]) {
      ok = false;
      rep.notes.push_back("(i) deg f in z" + std::to_string(j + 1) + " is below kappa on an exterior coordinate");
    }
    if (!exterior && constrained.degree(j) != kappa[jj]) {
      ok = false;
      rep.notes.push_back(std::string("(ii) deg ") + (cfg.degree_reading == DegreeReading::kOnG ? "g" : "f") +
                          " in z" + std::to_string(j + 1) + " is below kappa on a disc coordinate");
    }
  }
  const DomainProduct omega(std::vector<CircularDomain>(domains.begin(), domains.end()));
  std::vector<CircularDomain> comp;
  for (const auto& d : domains) comp.push_back(d.complement());
  if (!stable_on(f, omega, cfg.oracle)) {
    ok = false;
    rep.notes.push_back("(i) f has a zero in the domain product");
  }
  if (!stable_on(g, DomainProduct(std::move(comp)), cfg.oracle)) {
    ok = false;
    rep.notes.push_back("(ii) g has a zero in the complement product");
  }
  rep.hypotheses_verified = ok;
  rep.violation = ok && vanishes(rep.bracket, cfg.vanishing_threshold);
  return rep;
}

bool support_condition(const MultiPoly& f, const MultiPoly& g, const ExponentVector& kappa) {
  MultiPoly fp = f;
  MultiPoly gp = g;
  fp.prune();
  gp.prune();
  for (const auto& [a, ca] : fp.terms()) {
    for (const auto& [b, cb] : gp.terms()) {
      if (kappa.fits_within(a + b)) return true;
    }
  }
  return false;
}

bool half_planes_intersect(const CircularDomain& c1, const CircularDomain& c2) {
  const auto* h1 = std::get_if<HalfPlane>(&c1.shape());
  const auto* h2 = std::get_if<HalfPlane>(&c2.shape());
  if (h1 == nullptr || h2 == nullptr) throw DomainError("half_planes_intersect needs two half-planes");
  const double delta = h2->theta - h1->theta;
  if (std::abs(std::sin(delta)) > 1e-12 || std::cos(delta) > 0.0) return true;
  // Antiparallel: {Im(e^{it} z) > Im(e^{it} o1)} and {Im(e^{it} z) < Im(e^{it} o2)}.
  const Complex rot = std::polar(1.0, h1->theta);
  return (rot * h1->offset).imag() < (rot * h2->offset).imag();
}

GraceReport grace_check_halfplane(const MultiPoly& f, const MultiPoly& g, const CircularDomain& c1,
                                  const CircularDomain& c2, const ExponentVector& kappa, const GraceConfig& cfg) {
  const int n = static_cast<int>(kappa.size());
  GraceReport rep;
  rep.bracket = apolarity_bracket_detail(f, g, kappa, cfg.bracket);
  rep.abs_bracket = std::abs(rep.bracket.value);
  const bool meet = half_planes_intersect(c1, c2);
  const bool support = support_condition(f, g, kappa);
  if (!meet) rep.notes.push_back("half-planes do not intersect");
  if (!support) rep.notes.push_back("support condition fails");
  rep.conclusion_applicable = meet && support;

  if (f.is_zero() || g.is_zero()) {
    rep.notes.push_back("zero polynomial");
    return rep;
  }
  bool ok = true;
  if (!stable_on(f, DomainProduct::uniform(c1, n), cfg.oracle)) {
    ok = false;
    rep.notes.push_back("f has a zero in C1^n");
  }
  if (!stable_on(g, DomainProduct::uniform(c2, n), cfg.oracle)) {
    ok = false;
    rep.notes.push_back("g has a zero in C2^n");
  }
  rep.hypotheses_verified = ok;
  rep.violation = ok && rep.conclusion_applicable && vanishes(rep.bracket, cfg.vanishing_threshold);
  return rep;
}

// ---------------------------------------------------------------------------
// Random constructions

MultiPoly random_upper_stable(const ExponentVector& kappa, Rng& rng) {
  const int n = static_cast<int>(kappa.size());
  ExponentVector left = kappa;
  MultiPoly h = MultiPoly::constant(n, 1.0);
  while (left.total() > 0) {
    std::vector<int> chosen;
    for (int i = 0; i < n; ++i) {
      if (left[static_cast<std::size_t>(i)] > 0 && uniform01(rng) < 0.5) chosen.push_back(i);
    }
    if (chosen.empty()) {
      std::vector<int> open;
      for (int i = 0; i < n; ++i) {
        if (left[static_cast<std::size_t>(i)] > 0) open.push_back(i);
      }
      chosen.push_back(open[static_cast<std::size_t>(rng() % open.size())]);
    }
    MultiPoly::TermMap t;
    t[ExponentVector(static_cast<std::size_t>(n))] = Complex(uniform(rng, -2.0, 2.0), uniform(rng, 0.1, 2.0));
    for (int i : chosen) {
      t[ExponentVector::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(i))] = uniform(rng, 0.25, 2.0);
      left[static_cast<std::size_t>(i)] -= 1;
    }
    h = mul(h, MultiPoly(n, std::move(t)));
  }
  return h;
}

MultiPoly random_stable(const DomainProduct& omega, const ExponentVector& kappa, Rng& rng) {
  if (omega.size() != static_cast<int>(kappa.size())) throw DimensionError("domain product length != kappa");
  const MultiPoly h = random_upper_stable(kappa, rng);
  std::vector<MoebiusMap> maps;
  for (const auto& d : omega.domains) maps.push_back(map_to_upper_half_plane(d));
  return phi_kappa(h, maps, kappa);
}

namespace {

ExponentVector random_kappa(Rng& rng) {
  const std::size_t n = 1 + rng() % 2;
  ExponentVector k(n);
  for (std::size_t i = 0; i < n; ++i) k[i] = 1 + static_cast<int>(rng() % 2);
  return k;
}

void tally(GraceCampaignReport& rep, const GraceReport& check, const BracketValue& classical,
           std::uint64_t trial_seed, double threshold) {
  ++rep.trials;
  if (!check.hypotheses_verified) return;
  ++rep.hypotheses_verified;
  if (!check.conclusion_applicable) return;
  ++rep.conclusion_applicable;
  const double rel = check.bracket.scale > 0.0 ? check.abs_bracket / check.bracket.scale : 0.0;
  rep.min_relative_bracket = std::min(rep.min_relative_bracket, rel);
  if (check.violation) {
    ++rep.violations;
    rep.violation_seeds.push_back(trial_seed);
  }
  const double crel = classical.scale > 0.0 ? std::abs(classical.value) / classical.scale : 0.0;
  rep.classical_min_relative_bracket = std::min(rep.classical_min_relative_bracket, crel);
  if (vanishes(classical, threshold)) ++rep.classical_violations;
}

GraceCampaignReport new_report(std::string name, std::uint64_t seed) {
  GraceCampaignReport rep;
  rep.name = std::move(name);
  rep.seed = seed;
  rep.min_relative_bracket = std::numeric_limits<double>::infinity();
  rep.classical_min_relative_bracket = std::numeric_limits<double>::infinity();
  return rep;
}

void close_report(GraceCampaignReport& rep) {
  if (!std::isfinite(rep.min_relative_bracket)) rep.min_relative_bracket = 0.0;
  if (!std::isfinite(rep.classical_min_relative_bracket)) rep.classical_min_relative_bracket = 0.0;
}

BracketConfig classical_of(const BracketConfig& b) { return {BracketSign::kPerTerm, b.weights}; }

}  // namespace

GraceCampaignReport grace_campaign_disc(int trials, std::uint64_t seed, const GraceConfig& cfg) {
  auto rep = new_report("grace-disc", seed);
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t ts = derive_seed(seed, static_cast<std::uint64_t>(t), 0);
    Rng rng(ts);
    const ExponentVector kappa = random_kappa(rng);
    std::vector<CircularDomain> ds;
    std::vector<CircularDomain> comp;
    for (std::size_t i = 0; i < kappa.size(); ++i) {
      const Complex center(uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5));
      const double radius = uniform(rng, 0.5, 2.0);
      if (uniform01(rng) < 0.5) {
        ds.emplace_back(Disc{center, radius});
      } else {
        ds.emplace_back(DiscExterior{center, radius});
      }
      comp.push_back(ds.back().complement());
    }
    const MultiPoly f = random_stable(DomainProduct(ds), kappa, rng);
    const MultiPoly g = random_stable(DomainProduct(comp), kappa, rng);
    const GraceReport check = grace_check_disc(f, g, ds, kappa, cfg);
    const BracketValue classical = apolarity_bracket_detail(f, g, kappa, classical_of(cfg.bracket));
    tally(rep, check, classical, ts, cfg.vanishing_threshold);
  }
  close_report(rep);
  return rep;
}

GraceCampaignReport grace_campaign_halfplane(int trials, std::uint64_t seed, const GraceConfig& cfg) {
  auto rep = new_report("grace-halfplane", seed);
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t ts = derive_seed(seed, static_cast<std::uint64_t>(t), 0);
    Rng rng(ts);
    const ExponentVector kappa = random_kappa(rng);
    const int n = static_cast<int>(kappa.size());
    CircularDomain c1 = CircularDomain::upper_half_plane();
    CircularDomain c2 = CircularDomain::upper_half_plane();
    do {
      c1 = HalfPlane{uniform(rng, 0.0, 2.0 * std::numbers::pi), Complex(uniform(rng, -1, 1), uniform(rng, -1, 1))};
      c2 = HalfPlane{uniform(rng, 0.0, 2.0 * std::numbers::pi), Complex(uniform(rng, -1, 1), uniform(rng, -1, 1))};
    } while (!half_planes_intersect(c1, c2));
    const MultiPoly f = random_stable(DomainProduct::uniform(c1, n), kappa, rng);
    const MultiPoly g = random_stable(DomainProduct::uniform(c2, n), kappa, rng);
    const GraceReport check = grace_check_halfplane(f, g, c1, c2, kappa, cfg);
    const BracketValue classical = apolarity_bracket_detail(f, g, kappa, classical_of(cfg.bracket));
    tally(rep, check, classical, ts, cfg.vanishing_threshold);
  }
  close_report(rep);
  return rep;
}

}  // namespace leeyang
