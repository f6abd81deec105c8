#include "leeyang/roots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "leeyang/error.hpp"

namespace leeyang {

namespace {

using Matrix = Eigen::MatrixXcd;

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Parlett-Reinsch balancing with power-of-two scaling, norms taken over the
// whole row/column (the companion diagonal is mostly zero).
void balance(Matrix& m) {
  const auto n = m.rows();
  constexpr double gamma = 0.9;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double row = m.row(i).cwiseAbs().sum();
      const double col = m.col(i).cwiseAbs().sum();
      if (row == 0.0 || col == 0.0) continue;
      int exponent = 0;
      std::frexp(row / col, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double scaled_col = std::ldexp(col, exponent);
      const double scaled_row = std::ldexp(row, -exponent);
      if (scaled_col + scaled_row < gamma * (col + row)) {
        changed = true;
        m.row(i) *= std::ldexp(1.0, -exponent);
        m.col(i) *= std::ldexp(1.0, exponent);
      }
    }
  }
}

std::vector<Complex> derivative(std::span<const Complex> c) {
  std::vector<Complex> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<double>(k));
  return d;
}

double abs_scale(std::span<const Complex> c, Complex t) {
  double acc = 0.0;
  const double r = std::abs(t);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

// Newton on p starting from t; keeps the iterate with the smallest |p|.
Complex polish(std::span<const Complex> p, std::span<const Complex> dp, Complex t, int iters = 8) {
  Complex best = t;
  double best_res = std::abs(horner(p, t));
  for (int k = 0; k < iters && best_res > 0.0; ++k) {
    const Complex slope = horner(dp, best);
    if (slope == Complex(0.0)) break;
    const Complex next = best - horner(p, best) / slope;
    const double res = std::abs(horner(p, next));
    if (!(res < best_res)) break;
    best = next;
    best_res = res;
  }
  return best;
}

// Newton to convergence on a polynomial with a simple root near t.
bool newton_converge(std::span<const Complex> p, Complex& t) {
  if (p.size() < 2) return false;
  const auto dp = derivative(p);
  for (int k = 0; k < 100; ++k) {
    const Complex slope = horner(dp, t);
    if (slope == Complex(0.0)) return false;
    const Complex step = horner(p, t) / slope;
    t -= step;
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) return false;
    if (std::abs(step) <= 4.0 * kEps * std::max(1.0, std::abs(t))) return true;
  }
  return false;
}

class ClusterRefiner {
 public:
  ClusterRefiner(std::span<const Complex> coeffs, std::vector<Complex> roots)
      : roots_(std::move(roots)) {
    derivs_.emplace_back(coeffs.begin(), coeffs.end());
    while (derivs_.back().size() > 1) derivs_.push_back(derivative(derivs_.back()));
  }

  std::vector<Complex> run() {
    std::vector<std::size_t> all(roots_.size());
    std::iota(all.begin(), all.end(), 0);
    process(all, 0.1);
    return out_;
  }

 private:
  static constexpr double kMinRadius = 1e-7;
  static constexpr double kBackwardTol = 1e-10;

  std::vector<std::vector<std::size_t>> components(const std::vector<std::size_t>& idx, double rho) const {
    std::vector<int> label(idx.size(), -1);
    std::vector<std::vector<std::size_t>> comps;
    for (std::size_t s = 0; s < idx.size(); ++s) {
      if (label[s] >= 0) continue;
      label[s] = static_cast<int>(comps.size());
      comps.push_back({idx[s]});
      for (std::size_t q = 0; q < comps.back().size(); ++q) {
        const Complex r = roots_[comps.back()[q]];
        for (std::size_t t = 0; t < idx.size(); ++t) {
          if (label[t] >= 0) continue;
          const Complex u = roots_[idx[t]];
          const double lim = rho * std::max({1.0, std::abs(r), std::abs(u)});
          if (std::abs(r - u) <= lim) {
            label[t] = label[s];
            comps.back().push_back(idx[t]);
          }
        }
      }
    }
    return comps;
  }

  bool is_multiple_root(Complex t, std::size_t m) const {
    for (std::size_t j = 0; j < m; ++j) {
      const auto& p = derivs_[j];
      if (std::abs(horner(p, t)) > kBackwardTol * abs_scale(p, t)) return false;
    }
    return true;
  }

  void process(const std::vector<std::size_t>& idx, double rho) {
    for (const auto& comp : components(idx, rho)) {
      const std::size_t m = comp.size();
      if (m == 1) {
        out_.push_back(roots_[comp[0]]);
        continue;
      }
      Complex center = 0.0;
      for (auto k : comp) center += roots_[k];
      center /= static_cast<double>(m);
      Complex t = center;
      if (m < derivs_.size() && newton_converge(derivs_[m - 1], t) &&
          std::abs(t - center) <= rho * std::max(1.0, std::abs(center)) && is_multiple_root(t, m)) {
        out_.insert(out_.end(), m, t);
      } else if (rho > kMinRadius) {
        process(comp, rho / 10.0);
      } else {
        for (auto k : comp) out_.push_back(roots_[k]);
      }
    }
  }

  std::vector<Complex> roots_;
  std::vector<std::vector<Complex>> derivs_;
  std::vector<Complex> out_;
};

}  // namespace

Complex horner(std::span<const Complex> coeffs, Complex t) {
  Complex acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::vector<Complex> deflate_leading(std::span<const Complex> coeffs, double rel) {
  double big = 0.0;
  for (Complex c : coeffs) big = std::max(big, std::abs(c));
  std::size_t n = coeffs.size();
  while (n > 0 && std::abs(coeffs[n - 1]) <= rel * big) --n;
  return {coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(n)};
}

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs) {
  if (coeffs.size() < 2) throw DomainError("root finding needs degree >= 1");
  double big = 0.0;
  for (Complex c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw DomainError("non-finite coefficient");
    big = std::max(big, std::abs(c));
  }
  const Complex lead = coeffs.back();
  if (std::abs(lead) < 1e-12 * big || lead == Complex(0.0)) {
    throw DomainError("leading coefficient is numerically zero; deflate first");
  }

  // Exact zero roots.
  std::size_t zeros = 0;
  while (coeffs[zeros] == Complex(0.0)) ++zeros;
  std::span<const Complex> p = coeffs.subspan(zeros);
  std::vector<Complex> roots(zeros, Complex(0.0));

  const auto degree = static_cast<Eigen::Index>(p.size()) - 1;
  std::vector<Complex> found;
  if (degree == 1) {
    found.push_back(-p[0] / p[1]);
  } else if (degree > 1) {
    Matrix companion = Matrix::Zero(degree, degree);
    for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < degree; ++i) companion(i, degree - 1) = -p[static_cast<std::size_t>(i)] / lead;
    balance(companion);
    Eigen::ComplexEigenSolver<Matrix> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw Error("companion eigenvalue iteration did not converge");
    const auto dp = derivative(p);
    for (Eigen::Index i = 0; i < degree; ++i) found.push_back(polish(p, dp, solver.eigenvalues()(i)));
    found = ClusterRefiner(p, std::move(found)).run();
  }
  roots.insert(roots.end(), found.begin(), found.end());
  return roots;
}

std::vector<Complex> univariate_roots(const MultiPoly& f) {
  if (f.nvars() != 1) throw DimensionError("univariate_roots needs a polynomial in one variable");
  std::vector<Complex> c(static_cast<std::size_t>(std::max(f.degree(0), 0)) + 1, 0.0);
  for (const auto& [e, v] : f.terms()) c[static_cast<std::size_t>(e[0])] = v;
  return polynomial_roots(c);
}

bool is_stable_exact_univariate(const MultiPoly& f, const CircularDomain& d, double boundary_tol,
                                BoundaryPolicy policy) {
  if (f.nvars() != 1) throw DimensionError("exact univariate check needs nvars == 1");
  if (f.is_zero()) throw DomainError("the zero polynomial has no stability status");
  if (f.degree(0) == 0) return true;
  for (Complex r : univariate_roots(f)) {
    const double dist = d.boundary_distance(r);
    const bool inside = policy == BoundaryPolicy::kBoundaryOutside ? dist > boundary_tol : dist > -boundary_tol;
    if (inside) return false;
  }
  return true;
}

}  // namespace leeyang
