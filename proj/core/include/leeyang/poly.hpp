#pragma once

// Sparse multivariate polynomials with complex double coefficients.
//
// A MultiPoly in n variables is a map from exponent vectors (multi-indices)
// to nonzero coefficients. Polynomials in 2n variables that carry a (z, w)
// split always order their variables as (z_1..z_n, w_1..w_n).

#include <compare>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

namespace leeyang {

using Complex = std::complex<double>;

namespace limits {
inline constexpr int kMaxVars = 48;  // 24 ambient variables, doubled for symbols
inline constexpr int kMaxDegree = 64;
inline constexpr std::size_t kMaxTerms = 1'000'000;
inline constexpr double kPruneRelative = 1e-14;
}  // namespace limits

/// Multi-index alpha in N^n.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::size_t n) : exps_(n, 0) {}
  ExponentVector(std::initializer_list<int> exps);
  explicit ExponentVector(std::vector<int> exps);

  static ExponentVector unit(std::size_t n, std::size_t i, int power = 1);
  static ExponentVector filled(std::size_t n, int value);

  std::size_t size() const { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  int& operator[](std::size_t i) { return exps_[i]; }
  auto begin() const { return exps_.begin(); }
  auto end() const { return exps_.end(); }
  const std::vector<int>& values() const { return exps_; }

  /// |alpha| = sum of entries.
  int total() const;
  /// Componentwise alpha <= kappa.
  bool fits_within(const ExponentVector& kappa) const;
  bool is_zero() const;

  ExponentVector operator+(const ExponentVector& other) const;
  /// Componentwise difference; requires other <= *this.
  ExponentVector operator-(const ExponentVector& other) const;

  /// First `count` entries starting at `offset`.
  ExponentVector slice(std::size_t offset, std::size_t count) const;
  ExponentVector concat(const ExponentVector& tail) const;

  /// alpha! = prod alpha_i!
  double factorial() const;

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
  // Lexicographic; used only as a map ordering.
  friend auto operator<=>(const ExponentVector& a, const ExponentVector& b) {
    return a.exps_ <=> b.exps_;
  }

 private:
  std::vector<int> exps_;
};

/// All alpha with 0 <= alpha <= kappa, in lexicographic order.
std::vector<ExponentVector> box(const ExponentVector& kappa);

/// prod_i binom(kappa_i, alpha_i); throws DomainError unless alpha <= kappa.
std::uint64_t multi_binomial(const ExponentVector& kappa, const ExponentVector& alpha);

enum class Pruning {
  kRelative,   // drop |c| < 1e-14 * max|c| as well as exact zeros
  kExactOnly,  // drop exact zeros only
};

class MultiPoly {
 public:
  using TermMap = std::map<ExponentVector, Complex>;

  explicit MultiPoly(int nvars = 1);
  /// Builds from a term map; drops exact zeros, validates keys and caps.
  MultiPoly(int nvars, TermMap terms);

  static MultiPoly constant(int nvars, Complex c);
  /// z_i (0-based).
  static MultiPoly variable(int nvars, int i);
  static MultiPoly monomial(const ExponentVector& alpha, Complex c = 1.0);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Complex coefficient(const ExponentVector& alpha) const;
  /// deg_{z_i}(f); -1 for the zero polynomial.
  int degree(int var) const;
  ExponentVector degrees() const;
  int total_degree() const;
  double max_abs_coefficient() const;
  std::vector<ExponentVector> support() const;
  bool fits_within(const ExponentVector& kappa) const;

  /// Drops coefficients below rel * max|c|.
  MultiPoly& prune(double rel = limits::kPruneRelative);

  Complex evaluate(std::span<const Complex> point) const;
  /// sum |c_alpha| |z^alpha|, the natural scale for residuals at `point`.
  double evaluation_scale(std::span<const Complex> point) const;

  MultiPoly operator-() const;
  MultiPoly& operator*=(Complex s);

  /// Reinterprets the polynomial in `total` variables, shifting its
  /// variables to positions offset..offset+nvars-1.
  MultiPoly embed(int total, int offset) const;

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

 private:
  void check_caps() const;

  int nvars_;
  TermMap terms_;
};

MultiPoly add(const MultiPoly& f, const MultiPoly& g, Pruning p = Pruning::kRelative);
MultiPoly sub(const MultiPoly& f, const MultiPoly& g, Pruning p = Pruning::kRelative);
MultiPoly mul(const MultiPoly& f, const MultiPoly& g, Pruning p = Pruning::kRelative);
/// Product with every term outside C_kappa discarded. Equals truncating
/// the full product, since exponents only grow under multiplication.
MultiPoly mul_truncated(const MultiPoly& f, const MultiPoly& g, const ExponentVector& kappa,
                        Pruning p = Pruning::kRelative);
MultiPoly pow(const MultiPoly& f, int k, Pruning p = Pruning::kRelative);

inline MultiPoly operator+(const MultiPoly& f, const MultiPoly& g) { return add(f, g); }
inline MultiPoly operator-(const MultiPoly& f, const MultiPoly& g) { return sub(f, g); }
inline MultiPoly operator*(const MultiPoly& f, const MultiPoly& g) { return mul(f, g); }
MultiPoly operator*(Complex s, const MultiPoly& f);
inline MultiPoly operator*(const MultiPoly& f, Complex s) { return s * f; }

/// f(z) * g(w) as a polynomial in f.nvars + g.nvars variables.
MultiPoly tensor(const MultiPoly& f, const MultiPoly& g);

/// d^alpha f / dz^alpha.
MultiPoly partial_derive(const MultiPoly& f, const ExponentVector& alpha);

/// Substitutes `value` for z_var; the result has nvars - 1 variables.
MultiPoly restrict(const MultiPoly& f, int var, Complex value);
/// Substitutes `values` for a contiguous block of variables.
MultiPoly restrict_block(const MultiPoly& f, int offset, std::span<const Complex> values);

/// Coefficients c_0..c_d of t -> f(p_1, .., p_{var-1}, t, p_{var+1}, ..);
/// point[var] is ignored.
std::vector<Complex> univariate_slice(const MultiPoly& f, int var, std::span<const Complex> point);
MultiPoly from_coefficients(std::span<const Complex> coeffs);

/// P_alpha for f = sum_alpha P_alpha(w) z^alpha, with z the first `split`
/// variables. Coefficients are stored in full (no binomial display factor).
struct CoefficientSlice {
  int split = 0;
  int nvars = 0;
  bool keyed_by_leading = true;
  std::map<ExponentVector, MultiPoly> slices;

  MultiPoly reassemble() const;
  /// Slice at alpha, or the zero polynomial.
  MultiPoly at(const ExponentVector& alpha) const;
};

/// Keyed by the exponent of the leading `split` variables (z), values in w.
CoefficientSlice coefficient_slices(const MultiPoly& f, int split);
/// Even variable count required; split = nvars / 2.
CoefficientSlice coefficient_slices(const MultiPoly& f);
/// Keyed by the exponent of the trailing variables (w), values in z.
CoefficientSlice coefficient_slices_trailing(const MultiPoly& f, int split);

}  // namespace leeyang
