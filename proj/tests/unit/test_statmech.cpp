#include <doctest.h>

#include <cmath>

#include "leeyang/error.hpp"
#include "leeyang/roots.hpp"
#include "leeyang/statmech.hpp"
#include "oracles.hpp"

using namespace leeyang;
using oracle::poly;

namespace {
const Complex I{0.0, 1.0};
const double kE = std::exp(1.0);

SpinSystem pair_system(double j) { return SpinSystem(2, {{0.0, j}, {j, 0.0}}); }

SpinSystem random_ferromagnet(int n, Rng& rng, double jmax = 2.0) {
  std::vector<std::vector<double>> J(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) J[i][j] = J[j][i] = uniform(rng, 0.0, jmax);
  return SpinSystem(n, J);
}

double max_error(const MultiPoly& z, const SpinSystem& s, const std::vector<std::vector<Complex>>& points) {
  double worst = 0.0;
  for (const auto& h : points) {
    const Complex exact = oracle::spin_laplace(s.J, h);
    worst = std::max(worst, std::abs(z.evaluate(h) - exact) / std::abs(exact));
  }
  return worst;
}
}  // namespace

TEST_CASE("mu_weight examples") {
  const std::vector<int> up{1, 1}, mixed{1, -1};
  CHECK(mu_weight(SpinSystem::zero(2), up) == 1.0);
  CHECK(mu_weight(SpinSystem::zero(2), mixed) == 1.0);
  CHECK(std::abs(mu_weight(pair_system(0.5), up) - kE) < 1e-15);
  Rng rng(1);
  auto s = random_ferromagnet(6, rng);
  for (int t = 0; t < 20; ++t) {
    std::vector<int> sigma(6), neg(6);
    for (int i = 0; i < 6; ++i) {
      sigma[i] = (rng() & 1u) ? 1 : -1;
      neg[i] = -sigma[i];
    }
    CHECK(mu_weight(s, sigma) == doctest::Approx(mu_weight(s, neg)).epsilon(1e-14));
  }
  const std::vector<int> bad{1, 0};
  CHECK_THROWS_AS(mu_weight(s, std::vector<int>{1, 1}), DimensionError);
  CHECK_THROWS_AS(mu_weight(pair_system(1.0), bad), DomainError);
}

TEST_CASE("spin system validation") {
  CHECK_THROWS_AS(SpinSystem(2, {{0.0, 1.0}, {0.5, 0.0}}), DomainError);
  CHECK_THROWS_AS(SpinSystem(2, {{0.0, 1.0}}), DimensionError);
  CHECK(pair_system(1.0).ferromagnetic());
  CHECK_FALSE(pair_system(-1.0).ferromagnetic());
}

TEST_CASE("partition_fugacity examples") {
  CHECK(partition_fugacity(SpinSystem::zero(1)) == poly(1, {{{2}, 1.0}, {{0}, 1.0}}));
  const double jp = 0.3;
  auto z = partition_fugacity(pair_system(jp));
  const double a = std::exp(2 * jp), b = std::exp(-2 * jp);
  auto expected = poly(2, {{{2, 2}, a}, {{0, 0}, a}, {{2, 0}, b}, {{0, 2}, b}});
  CHECK(oracle::relative_distance(z, expected) < 1e-15);
}

TEST_CASE("fugacity polynomial equals the spin sum at complex fields") {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 5;
    auto s = random_ferromagnet(n, rng, 1.0);
    std::vector<Complex> h(static_cast<std::size_t>(n)), x(static_cast<std::size_t>(n));
    Complex prod = 1.0;
    for (int i = 0; i < n; ++i) {
      h[i] = oracle::random_complex(rng);
      x[i] = std::exp(h[i]);
      prod *= x[i];
    }
    const Complex lhs = partition_fugacity(s).evaluate(x);
    const Complex rhs = oracle::spin_laplace(s.J, h) * prod;
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
  }
}

TEST_CASE("diagonal_partition examples") {
  CHECK(diagonal_partition(SpinSystem::zero(1)) == poly(1, {{{2}, 1.0}, {{0}, 1.0}}));
  auto p = diagonal_partition(pair_system(0.5));
  CHECK(oracle::relative_distance(p, poly(1, {{{4}, kE}, {{2}, 2.0 / kE}, {{0}, kE}})) < 1e-15);
  auto r = diagonal_roots(pair_system(0.5));
  REQUIRE(r.size() == 4);
  // x^2 = e^{-2}(-1 +- i sqrt(e^4 - 1)).
  const Complex y1 = (Complex(-1.0, std::sqrt(std::pow(kE, 4) - 1.0))) / (kE * kE);
  for (Complex x : r) {
    CHECK(std::abs(std::abs(x) - 1.0) < 1e-14);
    const Complex y = x * x;
    CHECK(std::min(std::abs(y - y1), std::abs(y - std::conj(y1))) < 1e-14);
  }
}

TEST_CASE("diagonal roots agree with the full-degree companion solve") {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    auto s = random_ferromagnet(2 + t % 4, rng);
    auto coarse = univariate_roots(diagonal_partition(s));
    auto lifted = diagonal_roots(s);
    REQUIRE(coarse.size() == lifted.size());
    for (Complex c : coarse) {
      double best = 1e300;
      for (Complex l : lifted) best = std::min(best, std::abs(c - l));
      CHECK(best < 1e-7);
    }
  }
}

TEST_CASE("lee_yang_check: trivial, single spin, random ferromagnets") {
  auto z = lee_yang_check(SpinSystem::zero(5));
  CHECK(z.pass);
  CHECK(z.max_deviation < 1e-12);
  CHECK(lee_yang_check(SpinSystem::zero(1)).max_deviation < 1e-15);
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    auto r = lee_yang_check(random_ferromagnet(2 + t % 9, rng));
    CHECK(r.ferromagnetic);
    CHECK(r.roots.size() == static_cast<std::size_t>(2 * (2 + t % 9)));
    CHECK_MESSAGE(r.pass, "deviation " << r.max_deviation);
  }
}

TEST_CASE("antiferromagnetic control leaves the circle") {
  auto r = lee_yang_check(pair_system(-2.0));
  CHECK_FALSE(r.ferromagnetic);
  CHECK(r.max_deviation > 1e-3);
  CHECK_FALSE(r.pass);
}

TEST_CASE("fugacity polynomial of a ferromagnet has no zero with all |x_i| > 1") {
  Rng rng(5);
  for (int t = 0; t < 5; ++t) {
    auto s = random_ferromagnet(2 + t % 3, rng);
    OracleConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(t);
    CHECK_FALSE(find_zero(partition_fugacity(s), DomainProduct::uniform(CircularDomain::unit_disc_exterior(), s.n), cfg)
                    .found_zero());
  }
  // The antiferromagnet does have such zeros.
  auto anti = pair_system(-2.0);
  auto v = find_zero(partition_fugacity(anti), DomainProduct::uniform(CircularDomain::unit_disc_exterior(), 2));
  CHECK(v.found_zero());
}

TEST_CASE("edge pipeline examples") {
  const int k = 8;
  auto h = MultiPoly::variable(1, 0);
  auto trunc = pow(MultiPoly::constant(1, 1.0) + (1.0 / k) * h, k) + pow(MultiPoly::constant(1, 1.0) - (1.0 / k) * h, k);
  CHECK(oracle::relative_distance(edge_operator_pipeline(SpinSystem::zero(1), k), trunc) < 1e-15);
  auto two = edge_operator_pipeline(SpinSystem::zero(2), k);
  CHECK(oracle::relative_distance(two, trunc.embed(2, 0) * trunc.embed(2, 1)) < 1e-13);
  CHECK_THROWS_AS(edge_operator_pipeline(pair_system(-1.0), k), DomainError);
}

TEST_CASE("edge pipeline converges to the spin Laplace transform") {
  Rng rng(6);
  std::vector<std::vector<Complex>> points;
  for (int p = 0; p < 20; ++p) points.push_back({oracle::random_complex(rng), oracle::random_complex(rng)});
  const auto s = pair_system(1.0);
  const double e8 = max_error(edge_operator_pipeline(s, 8), s, points);
  const double e16 = max_error(edge_operator_pipeline(s, 16), s, points);
  CHECK(e16 <= e8);
  const auto free = SpinSystem::zero(2);
  CHECK(max_error(edge_operator_pipeline(free, 32), free, points) < max_error(edge_operator_pipeline(free, 4), free, points));
}

TEST_CASE("Heilmann-Lieb polynomial examples") {
  WeightedGraph path(3, {{0, 1, 2.0}, {1, 2, 5.0}});
  CHECK(heilmann_lieb_poly(path) == poly(3, {{{0, 0, 0}, 1.0}, {{1, 1, 0}, 2.0}, {{0, 1, 1}, 5.0}}));
  WeightedGraph tri(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  CHECK(heilmann_lieb_poly(tri) == poly(3, {{{0, 0, 0}, 1.0}, {{1, 1, 0}, 1.0}, {{0, 1, 1}, 1.0}, {{1, 0, 1}, 1.0}}));
  WeightedGraph edge(2, {{0, 1, 0.7}});
  CHECK(heilmann_lieb_poly(edge) == poly(2, {{{0, 0}, 1.0}, {{1, 1}, 0.7}}));
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 0, 1.0}}), DomainError);
  CHECK_THROWS(WeightedGraph(2, {{0, 1, -1.0}}));
}

TEST_CASE("Heilmann-Lieb polynomial matches edge-recursion matchings") {
  Rng rng(7);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 8;
    std::vector<WeightedGraph::Edge> edges;
    std::vector<oracle::Edge> plain;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (uniform01(rng) < 0.4) {
          const double lambda = std::floor(uniform(rng, 0.0, 4.0));
          edges.push_back({i, j, lambda});
          plain.push_back({i, j, lambda});
        }
    auto hl = heilmann_lieb_poly(WeightedGraph(n, edges));
    CHECK(hl == oracle::matchings_poly(n, plain));
    CHECK(matchings_polynomial(WeightedGraph(n, edges)) == oracle::matchings_poly(n, plain));
  }
}

TEST_CASE("heilmann_lieb_check examples") {
  auto r = heilmann_lieb_check(WeightedGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}}));
  CHECK(r.pass);
  REQUIRE(r.diagonal_roots.size() == 2);
  for (Complex z : r.diagonal_roots) {
    CHECK(std::abs(z.real()) < 1e-15);
    CHECK(std::abs(std::abs(z.imag()) - 1.0 / std::sqrt(2.0)) < 1e-14);
  }
  auto empty = heilmann_lieb_check(WeightedGraph(4, {}));
  CHECK(empty.pass);
  CHECK(empty.poly == MultiPoly::constant(4, 1.0));
  CHECK(empty.diagonal_roots.empty());
}

TEST_CASE("circle theorem examples") {
  const int n = 3;
  std::vector<std::vector<Complex>> ones(n, std::vector<Complex>(n, 1.0));
  MultiPoly expect = MultiPoly::constant(n, 1.0);
  for (int i = 0; i < n; ++i) expect = expect * (MultiPoly::constant(n, 1.0) + MultiPoly::variable(n, i));
  CHECK(oracle::relative_distance(circle_theorem_product(ones), expect) < 1e-15);
  std::vector<std::vector<Complex>> zero{{0.0, 0.0}, {0.0, 0.0}};
  CHECK(circle_theorem_product(zero) == poly(2, {{{0, 0}, 1.0}, {{1, 1}, 1.0}}));
  std::vector<std::vector<Complex>> big{{0.0, 1.5}, {1.5, 0.0}};
  CHECK_THROWS_AS(circle_theorem_product(big), DomainError);
}

TEST_CASE("circle theorem closed form matches a subset expansion and is disc-stable") {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + t % 4;
    std::vector<std::vector<Complex>> a(n, std::vector<Complex>(n, 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        a[i][j] = std::polar(uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 6.283185307179586));
        a[j][i] = std::conj(a[i][j]);
      }
    MultiPoly::TermMap terms;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      Complex c = 1.0;
      ExponentVector e(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        if (!(s >> i & 1u)) continue;
        e[i] = 1;
        for (int j = 0; j < n; ++j)
          if (!(s >> j & 1u)) c *= a[i][j];
      }
      terms[e] = c;
    }
    auto report = circle_theorem_check(a);
    CHECK(oracle::relative_distance(report.forms.closed_form, MultiPoly(n, terms)) < 1e-14);
    CHECK(report.forms.max_difference <= 1e-10);
    CHECK(report.pass);
  }
}
