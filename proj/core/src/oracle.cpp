#include "leeyang/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "leeyang/error.hpp"
#include "leeyang/rng.hpp"
#include "leeyang/roots.hpp"

namespace leeyang {

namespace {

class Searcher {
 public:
  Searcher(const MultiPoly& f, const DomainProduct& omega, const OracleConfig& cfg)
      : f_(f), omega_(omega), cfg_(cfg) {
    for (int k = 0; k < f.nvars(); ++k) {
      gradient_.push_back(partial_derive(f, ExponentVector::unit(static_cast<std::size_t>(f.nvars()),
                                                                 static_cast<std::size_t>(k))));
    }
  }

  // Gauss-Newton (minimum-norm step) in all coordinates, staying inside the
  // margin; then certify residual and margin.
  std::optional<Counterexample> certify(std::vector<Complex> p) const {
    if (omega_.boundary_margin(p) < cfg_.boundary_margin) return std::nullopt;
    double best_res = std::abs(f_.evaluate(p));
    for (int it = 0; it < cfg_.max_newton_iters && best_res > 0.0; ++it) {
      const Complex value = f_.evaluate(p);
      std::vector<Complex> grad(p.size());
      double norm2 = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) {
        grad[k] = gradient_[k].evaluate(p);
        norm2 += std::norm(grad[k]);
      }
      if (norm2 == 0.0) break;
      std::vector<Complex> next(p);
      for (std::size_t k = 0; k < p.size(); ++k) next[k] -= value * std::conj(grad[k]) / norm2;
      if (omega_.boundary_margin(next) < cfg_.boundary_margin) break;
      const double res = std::abs(f_.evaluate(next));
      if (!(res < best_res)) break;
      p = std::move(next);
      best_res = res;
    }
    Counterexample cx;
    cx.residual = std::abs(f_.evaluate(p));
    cx.scale = f_.evaluation_scale(p);
    cx.boundary_margin = omega_.boundary_margin(p);
    cx.point = std::move(p);
    if (cx.residual <= cfg_.residual_tol * cx.scale && cx.boundary_margin >= cfg_.boundary_margin) return cx;
    return std::nullopt;
  }

  StabilityVerdict univariate() const {
    const auto coeffs = univariate_slice(f_, 0, std::vector<Complex>{0.0});
    const auto deflated = deflate_leading(coeffs);
    if (deflated.size() >= 2) {
      for (Complex r : polynomial_roots(deflated)) {
        if (omega_[0].boundary_distance(r) < cfg_.boundary_margin) continue;
        if (auto cx = certify({r})) return {*cx};
      }
    }
    return {NoZeroFound{1, 1, 0.0}};
  }

  StabilityVerdict slices() const {
    const int n = f_.nvars();
    NoZeroFound stats{cfg_.slices_per_variable, 0, std::numeric_limits<double>::infinity()};
    std::vector<Complex> p(static_cast<std::size_t>(n));
    for (int var = 0; var < n; ++var) {
      if (f_.degree(var) < 1) continue;
      const auto v = static_cast<std::size_t>(var);
      for (int s = 0; s < cfg_.slices_per_variable; ++s) {
        Rng rng(derive_seed(cfg_.seed, v, static_cast<std::uint64_t>(s)));
        for (std::size_t j = 0; j < p.size(); ++j) {
          p[j] = sample_interior(omega_[j], rng, cfg_.boundary_margin, cfg_.sampler);
        }
        ++stats.total_samples;
        const double sc = f_.evaluation_scale(p);
        if (sc > 0.0) stats.min_abs_seen = std::min(stats.min_abs_seen, std::abs(f_.evaluate(p)) / sc);

        const auto coeffs = univariate_slice(f_, var, p);
        const Complex sampled = p[v];
        p[v] = 1.0;
        const double slice_scale = f_.evaluation_scale(p);
        double big = 0.0;
        for (Complex c : coeffs) big = std::max(big, std::abs(c));
        if (big <= 1e-13 * slice_scale) {
          // f vanishes identically on this line.
          p[v] = sampled;
          if (auto cx = certify(p)) return {*cx};
          continue;
        }
        const auto deflated = deflate_leading(coeffs);
        if (deflated.size() < 2) continue;
        for (Complex r : polynomial_roots(deflated)) {
          if (omega_[v].boundary_distance(r) < cfg_.boundary_margin) continue;
          p[v] = r;
          if (auto cx = certify(p)) return {*cx};
        }
      }
    }
    if (!std::isfinite(stats.min_abs_seen)) stats.min_abs_seen = 0.0;
    return {stats};
  }

 private:
  const MultiPoly& f_;
  const DomainProduct& omega_;
  const OracleConfig& cfg_;
  std::vector<MultiPoly> gradient_;
};

}  // namespace

StabilityVerdict find_zero(const MultiPoly& f, const DomainProduct& omega, const OracleConfig& cfg) {
  if (f.is_zero()) throw DomainError("the zero polynomial vanishes everywhere");
  if (omega.size() != f.nvars()) throw DimensionError("domain product length != nvars");
  if (cfg.slices_per_variable <= 0 || !(cfg.residual_tol > 0.0) || !(cfg.boundary_margin > 0.0) ||
      cfg.max_newton_iters <= 0) {
    throw DomainError("oracle configuration values must be positive");
  }
  Searcher search(f, omega, cfg);
  if (f.nvars() == 1) return search.univariate();
  return search.slices();
}

bool verify_counterexample(const MultiPoly& f, const DomainProduct& omega, const Counterexample& cx,
                           double residual_tol) {
  if (static_cast<int>(cx.point.size()) != f.nvars()) return false;
  const double residual = std::abs(f.evaluate(cx.point));
  const double scale = f.evaluation_scale(cx.point);
  return residual <= residual_tol * scale && omega.boundary_margin(cx.point) > 0.0;
}

MembershipVerdict in_N_kappa(const MultiPoly& f, const DomainProduct& omega, const ExponentVector& kappa,
                             const OracleConfig& cfg) {
  if (omega.size() != f.nvars()) throw DimensionError("domain product length != nvars");
  if (!f.fits_within(kappa)) throw DomainError("polynomial exceeds kappa");
  MembershipVerdict v;
  if (f.is_zero()) {
    v.reason = "zero polynomial";
    return v;
  }
  for (int j = 0; j < f.nvars(); ++j) {
    const auto jj = static_cast<std::size_t>(j);
    if (!omega[jj].is_convex() && f.degree(j) != kappa[jj]) {
      v.reason = "degree in z" + std::to_string(j + 1) + " is " + std::to_string(f.degree(j)) +
                 " but the domain is non-convex and kappa requires " + std::to_string(kappa[jj]);
      return v;
    }
  }
  v.stability = find_zero(f, omega, cfg);
  v.member = !v.stability->found_zero();
  v.reason = v.member ? "no zero found" : "zero found inside the domain product";
  return v;
}

}  // namespace leeyang
