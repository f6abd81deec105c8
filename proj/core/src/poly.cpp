#include "leeyang/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "leeyang/error.hpp"

namespace leeyang {

// ---------------------------------------------------------------------------
// ExponentVector

ExponentVector::ExponentVector(std::initializer_list<int> exps) : exps_(exps) {
  for (int e : exps_) {
    if (e < 0) throw DomainError("negative exponent");
  }
}

ExponentVector::ExponentVector(std::vector<int> exps) : exps_(std::move(exps)) {
  for (int e : exps_) {
    if (e < 0) throw DomainError("negative exponent");
  }
}

ExponentVector ExponentVector::unit(std::size_t n, std::size_t i, int power) {
  ExponentVector v(n);
  v.exps_.at(i) = power;
  return v;
}

ExponentVector ExponentVector::filled(std::size_t n, int value) {
  ExponentVector v(n);
  std::fill(v.exps_.begin(), v.exps_.end(), value);
  return v;
}

int ExponentVector::total() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

bool ExponentVector::fits_within(const ExponentVector& kappa) const {
  if (kappa.size() != size()) throw DimensionError("exponent length mismatch");
  for (std::size_t i = 0; i < size(); ++i) {
    if (exps_[i] > kappa.exps_[i]) return false;
  }
  return true;
}

bool ExponentVector::is_zero() const {
  return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
}

ExponentVector ExponentVector::operator+(const ExponentVector& other) const {
  if (other.size() != size()) throw DimensionError("exponent length mismatch");
  ExponentVector r(*this);
  for (std::size_t i = 0; i < size(); ++i) r.exps_[i] += other.exps_[i];
  return r;
}

ExponentVector ExponentVector::operator-(const ExponentVector& other) const {
  if (!other.fits_within(*this)) throw DomainError("exponent difference would be negative");
  ExponentVector r(*this);
  for (std::size_t i = 0; i < size(); ++i) r.exps_[i] -= other.exps_[i];
  return r;
}

ExponentVector ExponentVector::slice(std::size_t offset, std::size_t count) const {
  if (offset + count > size()) throw DimensionError("exponent slice out of range");
  return ExponentVector(std::vector<int>(exps_.begin() + static_cast<std::ptrdiff_t>(offset),
                                         exps_.begin() + static_cast<std::ptrdiff_t>(offset + count)));
}

ExponentVector ExponentVector::concat(const ExponentVector& tail) const {
  std::vector<int> v(exps_);
  v.insert(v.end(), tail.exps_.begin(), tail.exps_.end());
  return ExponentVector(std::move(v));
}

double ExponentVector::factorial() const {
  double r = 1.0;
  for (int e : exps_) {
    for (int k = 2; k <= e; ++k) r *= k;
  }
  return r;
}

std::vector<ExponentVector> box(const ExponentVector& kappa) {
  std::vector<ExponentVector> out;
  ExponentVector cur(kappa.size());
  while (true) {
    out.push_back(cur);
    // odometer increment, last index fastest
    std::size_t i = kappa.size();
    while (i > 0) {
      --i;
      if (cur[i] < kappa[i]) {
        ++cur[i];
        break;
      }
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (kappa.size() == 0) return out;
  }
}

__extension__ typedef unsigned __int128 Wide;

std::uint64_t multi_binomial(const ExponentVector& kappa, const ExponentVector& alpha) {
  if (!alpha.fits_within(kappa)) throw DomainError("multi_binomial requires alpha <= kappa");
  Wide acc = 1;
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    const int n = kappa[i];
    const int k = std::min(alpha[i], n - alpha[i]);
    Wide b = 1;
    for (int j = 1; j <= k; ++j) {
      b = b * static_cast<unsigned>(n - k + j) / static_cast<unsigned>(j);
    }
    acc *= b;
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      throw CapacityError("multi_binomial overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

// ---------------------------------------------------------------------------
// MultiPoly

MultiPoly::MultiPoly(int nvars) : nvars_(nvars) {
  if (nvars < 1) throw DimensionError("a polynomial needs at least one variable");
  if (nvars > limits::kMaxVars) {
    throw CapacityError("variable count " + std::to_string(nvars) + " exceeds cap");
  }
}

MultiPoly::MultiPoly(int nvars, TermMap terms) : MultiPoly(nvars) {
  for (auto& [alpha, c] : terms) {
    if (static_cast<int>(alpha.size()) != nvars) {
      throw DimensionError("term exponent length does not match nvars");
    }
    if (c != Complex(0.0)) terms_.emplace(alpha, c);
  }
  check_caps();
}

void MultiPoly::check_caps() const {
  if (terms_.size() > limits::kMaxTerms) throw CapacityError("term count exceeds cap");
  for (const auto& [alpha, c] : terms_) {
    for (int e : alpha) {
      if (e > limits::kMaxDegree) {
        throw CapacityError("per-variable degree " + std::to_string(e) + " exceeds cap");
      }
    }
  }
}

MultiPoly MultiPoly::constant(int nvars, Complex c) {
  MultiPoly p(nvars);
  if (c != Complex(0.0)) p.terms_.emplace(ExponentVector(static_cast<std::size_t>(nvars)), c);
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) throw DimensionError("variable index out of range");
  MultiPoly p(nvars);
  p.terms_.emplace(ExponentVector::unit(static_cast<std::size_t>(nvars), static_cast<std::size_t>(i)),
                   Complex(1.0));
  return p;
}

MultiPoly MultiPoly::monomial(const ExponentVector& alpha, Complex c) {
  MultiPoly p(static_cast<int>(alpha.size()));
  if (c != Complex(0.0)) p.terms_.emplace(alpha, c);
  p.check_caps();
  return p;
}

Complex MultiPoly::coefficient(const ExponentVector& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

int MultiPoly::degree(int var) const {
  if (var < 0 || var >= nvars_) throw DimensionError("variable index out of range");
  int d = -1;
  for (const auto& [alpha, c] : terms_) d = std::max(d, alpha[static_cast<std::size_t>(var)]);
  return d;
}

ExponentVector MultiPoly::degrees() const {
  ExponentVector d(static_cast<std::size_t>(nvars_));
  for (const auto& [alpha, c] : terms_) {
    for (std::size_t i = 0; i < alpha.size(); ++i) d[i] = std::max(d[i], alpha[i]);
  }
  return d;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [alpha, c] : terms_) d = std::max(d, alpha.total());
  return d;
}

double MultiPoly::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [alpha, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

std::vector<ExponentVector> MultiPoly::support() const {
  std::vector<ExponentVector> s;
  s.reserve(terms_.size());
  for (const auto& [alpha, c] : terms_) s.push_back(alpha);
  return s;
}

bool MultiPoly::fits_within(const ExponentVector& kappa) const {
  if (static_cast<int>(kappa.size()) != nvars_) throw DimensionError("kappa length mismatch");
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return t.first.fits_within(kappa); });
}

MultiPoly& MultiPoly::prune(double rel) {
  const double cut = rel * max_abs_coefficient();
  std::erase_if(terms_, [cut](const auto& t) {
    return t.second == Complex(0.0) || std::abs(t.second) < cut;
  });
  return *this;
}

namespace {

// powers[i][k] = point[i]^k for k up to the degree of variable i.
std::vector<std::vector<Complex>> power_table(const MultiPoly& f, std::span<const Complex> point) {
  const ExponentVector deg = f.degrees();
  std::vector<std::vector<Complex>> powers(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    powers[i].resize(static_cast<std::size_t>(std::max(deg[i], 0)) + 1);
    powers[i][0] = 1.0;
    for (std::size_t k = 1; k < powers[i].size(); ++k) powers[i][k] = powers[i][k - 1] * point[i];
  }
  return powers;
}

}  // namespace

Complex MultiPoly::evaluate(std::span<const Complex> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw DimensionError("point length != nvars");
  if (nvars_ == 1) {
    // Horner, highest exponent first (map order is ascending).
    Complex acc = 0.0;
    int prev = -1;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const int e = it->first[0];
      if (prev >= 0) {
        for (int k = e; k < prev; ++k) acc *= point[0];
      }
      acc += it->second;
      prev = e;
    }
    for (int k = 0; k < prev; ++k) acc *= point[0];
    return acc;
  }
  const auto powers = power_table(*this, point);
  Complex acc = 0.0;
  for (const auto& [alpha, c] : terms_) {
    Complex m = c;
    for (std::size_t i = 0; i < alpha.size(); ++i) m *= powers[i][static_cast<std::size_t>(alpha[i])];
    acc += m;
  }
  return acc;
}

double MultiPoly::evaluation_scale(std::span<const Complex> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw DimensionError("point length != nvars");
  double acc = 0.0;
  for (const auto& [alpha, c] : terms_) {
    double m = std::abs(c);
    for (std::size_t i = 0; i < alpha.size(); ++i) m *= std::pow(std::abs(point[i]), alpha[i]);
    acc += m;
  }
  return acc;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(*this);
  for (auto& [alpha, c] : r.terms_) c = -c;
  return r;
}

MultiPoly& MultiPoly::operator*=(Complex s) {
  if (s == Complex(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, c] : terms_) c *= s;
  return *this;
}

MultiPoly operator*(Complex s, const MultiPoly& f) {
  MultiPoly r(f);
  r *= s;
  return r;
}

MultiPoly MultiPoly::embed(int total, int offset) const {
  if (offset < 0 || offset + nvars_ > total) throw DimensionError("embedding out of range");
  MultiPoly r(total);
  for (const auto& [alpha, c] : terms_) {
    ExponentVector e(static_cast<std::size_t>(total));
    for (std::size_t i = 0; i < alpha.size(); ++i) e[static_cast<std::size_t>(offset) + i] = alpha[i];
    r.terms_.emplace(std::move(e), c);
  }
  return r;
}

namespace {

void require_same_nvars(const MultiPoly& f, const MultiPoly& g) {
  if (f.nvars() != g.nvars()) {
    throw DimensionError("variable-count mismatch: " + std::to_string(f.nvars()) + " vs " +
                         std::to_string(g.nvars()));
  }
}

MultiPoly finish(int nvars, MultiPoly::TermMap terms, Pruning p) {
  MultiPoly r(nvars, std::move(terms));
  if (p == Pruning::kRelative) r.prune();
  return r;
}

}  // namespace

MultiPoly add(const MultiPoly& f, const MultiPoly& g, Pruning p) {
  require_same_nvars(f, g);
  MultiPoly::TermMap t = f.terms();
  for (const auto& [alpha, c] : g.terms()) t[alpha] += c;
  return finish(f.nvars(), std::move(t), p);
}

MultiPoly sub(const MultiPoly& f, const MultiPoly& g, Pruning p) { return add(f, -g, p); }

MultiPoly mul(const MultiPoly& f, const MultiPoly& g, Pruning p) {
  require_same_nvars(f, g);
  MultiPoly::TermMap t;
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) t[a + b] += ca * cb;
  }
  return finish(f.nvars(), std::move(t), p);
}

MultiPoly mul_truncated(const MultiPoly& f, const MultiPoly& g, const ExponentVector& kappa, Pruning p) {
  require_same_nvars(f, g);
  if (static_cast<int>(kappa.size()) != f.nvars()) throw DimensionError("kappa length mismatch");
  MultiPoly::TermMap t;
  for (const auto& [a, ca] : f.terms()) {
    if (!a.fits_within(kappa)) continue;
    for (const auto& [b, cb] : g.terms()) {
      ExponentVector s = a + b;
      if (s.fits_within(kappa)) t[s] += ca * cb;
    }
  }
  return finish(f.nvars(), std::move(t), p);
}

MultiPoly pow(const MultiPoly& f, int k, Pruning p) {
  if (k < 0) throw DomainError("negative power");
  MultiPoly result = MultiPoly::constant(f.nvars(), 1.0);
  MultiPoly base = f;
  while (k > 0) {
    if (k & 1) result = mul(result, base, p);
    k >>= 1;
    if (k > 0) base = mul(base, base, p);
  }
  return result;
}

MultiPoly tensor(const MultiPoly& f, const MultiPoly& g) {
  const int n = f.nvars() + g.nvars();
  MultiPoly::TermMap t;
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) t.emplace(a.concat(b), ca * cb);
  }
  return MultiPoly(n, std::move(t));
}

MultiPoly partial_derive(const MultiPoly& f, const ExponentVector& alpha) {
  if (static_cast<int>(alpha.size()) != f.nvars()) throw DimensionError("alpha length mismatch");
  MultiPoly::TermMap t;
  for (const auto& [e, c] : f.terms()) {
    if (!alpha.fits_within(e)) continue;
    double factor = 1.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < alpha[i]; ++k) factor *= e[i] - k;
    }
    t.emplace(e - alpha, c * factor);
  }
  return MultiPoly(f.nvars(), std::move(t));
}

MultiPoly restrict(const MultiPoly& f, int var, Complex value) {
  const Complex v[] = {value};
  return restrict_block(f, var, v);
}

MultiPoly restrict_block(const MultiPoly& f, int offset, std::span<const Complex> values) {
  const int count = static_cast<int>(values.size());
  if (offset < 0 || offset + count > f.nvars()) throw DimensionError("restriction index out of range");
  if (count >= f.nvars()) throw DimensionError("restriction would leave no variables");
  const ExponentVector deg = f.degrees();
  std::vector<std::vector<Complex>> powers(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int d = std::max(deg[static_cast<std::size_t>(offset) + i], 0);
    powers[i].assign(static_cast<std::size_t>(d) + 1, 1.0);
    for (int k = 1; k <= d; ++k) powers[i][static_cast<std::size_t>(k)] = powers[i][static_cast<std::size_t>(k) - 1] * values[i];
  }
  MultiPoly::TermMap t;
  for (const auto& [e, c] : f.terms()) {
    Complex m = c;
    std::vector<int> rest;
    rest.reserve(e.size() - values.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      const auto o = static_cast<std::size_t>(offset);
      if (i >= o && i < o + values.size()) {
        m *= powers[i - o][static_cast<std::size_t>(e[i])];
      } else {
        rest.push_back(e[i]);
      }
    }
    t[ExponentVector(std::move(rest))] += m;
  }
  return MultiPoly(f.nvars() - count, std::move(t));
}

std::vector<Complex> univariate_slice(const MultiPoly& f, int var, std::span<const Complex> point) {
  if (static_cast<int>(point.size()) != f.nvars()) throw DimensionError("point length != nvars");
  if (var < 0 || var >= f.nvars()) throw DimensionError("variable index out of range");
  const auto powers = power_table(f, point);
  const auto v = static_cast<std::size_t>(var);
  std::vector<Complex> coeffs(static_cast<std::size_t>(std::max(f.degree(var), 0)) + 1, 0.0);
  for (const auto& [e, c] : f.terms()) {
    Complex m = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i != v) m *= powers[i][static_cast<std::size_t>(e[i])];
    }
    coeffs[static_cast<std::size_t>(e[v])] += m;
  }
  return coeffs;
}

MultiPoly from_coefficients(std::span<const Complex> coeffs) {
  MultiPoly::TermMap t;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] != Complex(0.0)) t.emplace(ExponentVector{static_cast<int>(k)}, coeffs[k]);
  }
  return MultiPoly(1, std::move(t));
}

// ---------------------------------------------------------------------------
// Coefficient slices

namespace {

CoefficientSlice slice_impl(const MultiPoly& f, int split, bool leading) {
  if (split < 1 || split >= f.nvars()) throw DimensionError("split must leave variables on both sides");
  CoefficientSlice s;
  s.split = split;
  s.nvars = f.nvars();
  s.keyed_by_leading = leading;
  const auto sp = static_cast<std::size_t>(split);
  const auto rest = static_cast<std::size_t>(f.nvars()) - sp;
  std::map<ExponentVector, MultiPoly::TermMap> grouped;
  for (const auto& [e, c] : f.terms()) {
    ExponentVector head = e.slice(0, sp);
    ExponentVector tail = e.slice(sp, rest);
    if (leading) {
      grouped[std::move(head)].emplace(std::move(tail), c);
    } else {
      grouped[std::move(tail)].emplace(std::move(head), c);
    }
  }
  const int value_vars = leading ? static_cast<int>(rest) : split;
  for (auto& [key, terms] : grouped) s.slices.emplace(key, MultiPoly(value_vars, std::move(terms)));
  return s;
}

}  // namespace

CoefficientSlice coefficient_slices(const MultiPoly& f, int split) { return slice_impl(f, split, true); }

CoefficientSlice coefficient_slices(const MultiPoly& f) {
  if (f.nvars() % 2 != 0) throw DimensionError("odd variable count needs an explicit split");
  return slice_impl(f, f.nvars() / 2, true);
}

CoefficientSlice coefficient_slices_trailing(const MultiPoly& f, int split) {
  return slice_impl(f, split, false);
}

MultiPoly CoefficientSlice::at(const ExponentVector& alpha) const {
  auto it = slices.find(alpha);
  if (it != slices.end()) return it->second;
  return MultiPoly(keyed_by_leading ? nvars - split : split);
}

MultiPoly CoefficientSlice::reassemble() const {
  MultiPoly::TermMap t;
  for (const auto& [key, poly] : slices) {
    for (const auto& [e, c] : poly.terms()) {
      t.emplace(keyed_by_leading ? key.concat(e) : e.concat(key), c);
    }
  }
  return MultiPoly(nvars, std::move(t));
}

}  // namespace leeyang
