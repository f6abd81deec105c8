#include "leeyang/statmech.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "leeyang/error.hpp"
#include "leeyang/operators.hpp"
#include "leeyang/roots.hpp"

namespace leeyang {

SpinSystem::SpinSystem(int n_, std::vector<std::vector<double>> J_) : n(n_), J(std::move(J_)) {
  if (n < 1) throw DimensionError("spin system needs n >= 1");
  if (static_cast<int>(J.size()) != n) throw DimensionError("J must have n rows");
  for (const auto& row : J) {
    if (static_cast<int>(row.size()) != n) throw DimensionError("J must be n x n");
    for (double v : row) {
      if (!std::isfinite(v)) throw DomainError("coupling constants must be finite");
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (std::abs(J[i][j] - J[j][i]) > 1e-12) throw DomainError("J must be symmetric");
    }
  }
}

SpinSystem SpinSystem::zero(int n) {
  return SpinSystem(n, std::vector<std::vector<double>>(static_cast<std::size_t>(n),
                                                        std::vector<double>(static_cast<std::size_t>(n), 0.0)));
}

bool SpinSystem::ferromagnetic() const {
  for (const auto& row : J) {
    for (double v : row) {
      if (v < 0.0) return false;
    }
  }
  return true;
}

WeightedGraph::WeightedGraph(int n_, std::vector<Edge> edges_) : n(n_), edges(std::move(edges_)) {
  if (n < 1 || n > limits::kMaxVars) throw DimensionError("graph vertex count out of range");
  for (const auto& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n) throw DimensionError("edge endpoint out of range");
    if (e.i == e.j) throw DomainError("self-loops are not allowed");
    if (!(e.lambda >= 0.0) || !std::isfinite(e.lambda)) throw DomainError("edge weights must be non-negative");
  }
}

namespace {

void require_enumerable(const SpinSystem& s) {
  if (s.n > kMaxSpins) throw CapacityError("spin enumeration is limited to n <= 20");
}

// Spin configuration for bit pattern `bits`: bit i set means sigma_i = +1.
std::vector<int> spins(int n, std::uint32_t bits) {
  std::vector<int> sigma(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) sigma[static_cast<std::size_t>(i)] = (bits >> i) & 1U ? 1 : -1;
  return sigma;
}

// Roots of sum_m c_m t^{2m} through y = t^2.
std::vector<Complex> even_roots(std::vector<Complex> c_in_y) {
  const auto c = deflate_leading(c_in_y, 0.0);
  if (c.size() < 2) return {};
  std::vector<Complex> out;
  for (Complex y : polynomial_roots(c)) {
    const Complex r = std::sqrt(y);
    out.push_back(r);
    out.push_back(-r);
  }
  return out;
}

}  // namespace

double mu_weight(const SpinSystem& s, std::span<const int> sigma) {
  if (static_cast<int>(sigma.size()) != s.n) throw DimensionError("spin vector length != n");
  for (int v : sigma) {
    if (v != 1 && v != -1) throw DomainError("spins must be +1 or -1");
  }
  double e = 0.0;
  for (int i = 0; i < s.n; ++i) {
    for (int j = 0; j < s.n; ++j) e += s.J[i][j] * sigma[i] * sigma[j];
  }
  return std::exp(e);
}

MultiPoly partition_fugacity(const SpinSystem& s) {
  require_enumerable(s);
  MultiPoly::TermMap t;
  const std::uint32_t count = 1U << s.n;
  if (count > limits::kMaxTerms) throw CapacityError("fugacity polynomial exceeds the term cap");
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    const auto sigma = spins(s.n, bits);
    ExponentVector e(static_cast<std::size_t>(s.n));
    for (int i = 0; i < s.n; ++i) e[static_cast<std::size_t>(i)] = sigma[static_cast<std::size_t>(i)] + 1;
    t.emplace(std::move(e), mu_weight(s, sigma));
  }
  return MultiPoly(s.n, std::move(t));
}

namespace {

// Coefficients in y = x^2: c_m = sum over sigma with m up-spins of mu(sigma).
std::vector<Complex> diagonal_in_y(const SpinSystem& s) {
  require_enumerable(s);
  std::vector<double> c(static_cast<std::size_t>(s.n) + 1, 0.0);
  const std::uint32_t count = 1U << s.n;
  for (std::uint32_t bits = 0; bits < count; ++bits) {
    c[static_cast<std::size_t>(std::popcount(bits))] += mu_weight(s, spins(s.n, bits));
  }
  return {c.begin(), c.end()};
}

}  // namespace

MultiPoly diagonal_partition(const SpinSystem& s) {
  const auto cy = diagonal_in_y(s);
  std::vector<Complex> cx(2 * cy.size() - 1, 0.0);
  for (std::size_t m = 0; m < cy.size(); ++m) cx[2 * m] = cy[m];
  return from_coefficients(cx);
}

std::vector<Complex> diagonal_roots(const SpinSystem& s) { return even_roots(diagonal_in_y(s)); }

LeeYangReport lee_yang_check(const SpinSystem& s, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  LeeYangReport rep;
  rep.ferromagnetic = s.ferromagnetic();
  rep.tol = tol;
  rep.roots = diagonal_roots(s);
  for (Complex r : rep.roots) rep.max_deviation = std::max(rep.max_deviation, std::abs(std::abs(r) - 1.0));
  rep.pass = rep.max_deviation <= tol;
  return rep;
}

MultiPoly edge_operator_pipeline(const SpinSystem& s, int k) {
  if (k < 1) throw DomainError("truncation order must be positive");
  if (k > limits::kMaxDegree) throw CapacityError("truncation order exceeds the degree cap");
  if (!s.ferromagnetic()) throw DomainError("edge pipeline needs a ferromagnetic system");
  const double kd = static_cast<double>(k);
  const std::vector<Complex> plus{1.0, 1.0 / kd};
  const std::vector<Complex> minus{1.0, -1.0 / kd};
  const MultiPoly cosh_trunc =
      add(pow(from_coefficients(plus), k, Pruning::kExactOnly), pow(from_coefficients(minus), k, Pruning::kExactOnly),
          Pruning::kExactOnly);
  MultiPoly z = MultiPoly::constant(s.n, 1.0);
  for (int i = 0; i < s.n; ++i) z = mul(z, cosh_trunc.embed(s.n, i), Pruning::kExactOnly);
  for (int i = 0; i < s.n; ++i) {
    for (int j = 0; j < s.n; ++j) {
      if (s.J[i][j] != 0.0) z = apply_lee_yang_edge(z, i, j, s.J[i][j]);
    }
  }
  return z;
}

MultiPoly multi_affine_edge_product(const WeightedGraph& g) {
  const auto n = static_cast<std::size_t>(g.n);
  const ExponentVector ones = ExponentVector::filled(n, 1);
  MultiPoly f = MultiPoly::constant(g.n, 1.0);
  for (const auto& e : g.edges) {
    ExponentVector pair(n);
    pair[static_cast<std::size_t>(e.i)] = 1;
    pair[static_cast<std::size_t>(e.j)] = 1;
    MultiPoly::TermMap t;
    t[ExponentVector(n)] = 1.0;
    t[pair] = e.lambda;
    f = mul_truncated(f, MultiPoly(g.n, std::move(t)), ones, Pruning::kExactOnly);
  }
  return f;
}

namespace {

void enumerate_matchings(const WeightedGraph& g, const std::vector<std::vector<std::pair<int, double>>>& adj,
                         int v, std::vector<char>& used, ExponentVector& cover, double weight,
                         MultiPoly::TermMap& out) {
  while (v < g.n && used[static_cast<std::size_t>(v)]) ++v;
  if (v >= g.n) {
    out[cover] += weight;
    return;
  }
  used[static_cast<std::size_t>(v)] = 1;
  enumerate_matchings(g, adj, v + 1, used, cover, weight, out);
  for (const auto& [u, lambda] : adj[static_cast<std::size_t>(v)]) {
    if (used[static_cast<std::size_t>(u)]) continue;
    used[static_cast<std::size_t>(u)] = 1;
    cover[static_cast<std::size_t>(v)] = 1;
    cover[static_cast<std::size_t>(u)] = 1;
    enumerate_matchings(g, adj, v + 1, used, cover, weight * lambda, out);
    cover[static_cast<std::size_t>(v)] = 0;
    cover[static_cast<std::size_t>(u)] = 0;
    used[static_cast<std::size_t>(u)] = 0;
  }
  used[static_cast<std::size_t>(v)] = 0;
}

}  // namespace

MultiPoly matchings_polynomial(const WeightedGraph& g) {
  const auto n = static_cast<std::size_t>(g.n);
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& e : g.edges) {
    const int lo = std::min(e.i, e.j);
    const int hi = std::max(e.i, e.j);
    adj[static_cast<std::size_t>(lo)].emplace_back(hi, e.lambda);
  }
  std::vector<char> used(n, 0);
  ExponentVector cover(n);
  MultiPoly::TermMap out;
  enumerate_matchings(g, adj, 0, used, cover, 1.0, out);
  return MultiPoly(g.n, std::move(out));
}

MultiPoly heilmann_lieb_poly(const WeightedGraph& g) {
  MultiPoly f = multi_affine_edge_product(g);
  const MultiPoly oracle = matchings_polynomial(g);
  const double big = std::max(f.max_abs_coefficient(), oracle.max_abs_coefficient());
  double worst = 0.0;
  for (const auto& [e, c] : f.terms()) worst = std::max(worst, std::abs(c - oracle.coefficient(e)));
  for (const auto& [e, c] : oracle.terms()) worst = std::max(worst, std::abs(c - f.coefficient(e)));
  if (worst > 1e-12 * big) throw Error("MAP of the edge product disagrees with the matchings enumeration");
  return f;
}

HeilmannLiebReport heilmann_lieb_check(const WeightedGraph& g, double tol, const OracleConfig& cfg) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  HeilmannLiebReport rep;
  rep.tol = tol;
  rep.poly = heilmann_lieb_poly(g);
  rep.verdict = find_zero(rep.poly, DomainProduct::uniform(CircularDomain::half_plane(std::numbers::pi / 2), g.n),
                          cfg);
  std::vector<Complex> cy(static_cast<std::size_t>(g.n) / 2 + 1, 0.0);
  for (const auto& [e, c] : rep.poly.terms()) cy[static_cast<std::size_t>(e.total() / 2)] += c;
  rep.diagonal_roots = even_roots(cy);
  for (Complex r : rep.diagonal_roots) rep.max_real_part = std::max(rep.max_real_part, std::abs(r.real()));
  rep.pass = !rep.verdict->found_zero() && rep.max_real_part <= tol;
  return rep;
}

namespace {

std::size_t check_matrix(const std::vector<std::vector<Complex>>& a) {
  const std::size_t n = a.size();
  if (n < 1 || n > static_cast<std::size_t>(kMaxSpins)) throw DimensionError("circle theorem needs 1 <= n <= 20");
  for (const auto& row : a) {
    if (row.size() != n) throw DimensionError("coupling matrix must be n x n");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(std::abs(a[i][j]) <= 1.0 + 1e-12)) throw DomainError("circle theorem needs |a_ij| <= 1");
    }
  }
  return n;
}

}  // namespace

CircleTheoremResult circle_theorem_forms(const std::vector<std::vector<Complex>>& a) {
  const std::size_t n = check_matrix(a);
  const int nv = static_cast<int>(n);
  MultiPoly all_ones = MultiPoly::constant(nv, 1.0);
  for (int k = 0; k < nv; ++k) {
    all_ones = mul(all_ones, add(MultiPoly::constant(nv, 1.0), MultiPoly::variable(nv, k)), Pruning::kExactOnly);
  }

  CircleTheoremResult out;
  MultiPoly acc = all_ones;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // f_ij = (1 + a z_i + conj(a) z_j + z_i z_j) prod_{k != i, j} (1 + z_k)
      MultiPoly f(nv);
      for (const auto& [e, c] : all_ones.terms()) {
        Complex w = 1.0;
        if (e[i] == 1 && e[j] == 0) w = a[i][j];
        if (e[i] == 0 && e[j] == 1) w = std::conj(a[i][j]);
        f = add(f, MultiPoly::monomial(e, w * c), Pruning::kExactOnly);
      }
      acc = apply(builtin_hadamard_schur(f), acc);
    }
  }
  out.hadamard_product = acc;

  MultiPoly::TermMap rhs;
  for (std::uint32_t bits = 0; bits < (1U << n); ++bits) {
    Complex c = 1.0;
    ExponentVector e(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!((bits >> i) & 1U)) continue;
      e[i] = 1;
      for (std::size_t j = 0; j < n; ++j) {
        if ((bits >> j) & 1U) continue;
        c *= i < j ? a[i][j] : std::conj(a[j][i]);
      }
    }
    rhs.emplace(std::move(e), c);
  }
  out.closed_form = MultiPoly(nv, std::move(rhs));

  for (const auto& [e, c] : out.hadamard_product.terms()) {
    out.max_difference = std::max(out.max_difference, std::abs(c - out.closed_form.coefficient(e)));
  }
  for (const auto& [e, c] : out.closed_form.terms()) {
    out.max_difference = std::max(out.max_difference, std::abs(c - out.hadamard_product.coefficient(e)));
  }
  return out;
}

MultiPoly circle_theorem_product(const std::vector<std::vector<Complex>>& a) {
  auto forms = circle_theorem_forms(a);
  if (forms.max_difference > 1e-10) throw Error("Hadamard iterate disagrees with the closed form");
  return std::move(forms.hadamard_product);
}

CircleTheoremReport circle_theorem_check(const std::vector<std::vector<Complex>>& a, const OracleConfig& cfg) {
  CircleTheoremReport rep{circle_theorem_forms(a), StabilityVerdict{NoZeroFound{}}, false};
  if (rep.forms.hadamard_product.is_zero()) return rep;
  rep.verdict = find_zero(rep.forms.hadamard_product,
                          DomainProduct::uniform(CircularDomain::unit_disc(), rep.forms.hadamard_product.nvars()),
                          cfg);
  rep.pass = rep.forms.max_difference <= 1e-10 && !rep.verdict.found_zero();
  return rep;
}

}  // namespace leeyang
