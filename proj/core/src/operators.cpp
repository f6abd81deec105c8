#include "leeyang/operators.hpp"

#include <cmath>

#include "leeyang/error.hpp"

namespace leeyang {

// ---------------------------------------------------------------------------
// LinearOperator

LinearOperator::LinearOperator(ExponentVector kappa_in, int nvars_out, ActionTable action, std::string name)
    : kappa_in_(std::move(kappa_in)), nvars_out_(nvars_out), name_(std::move(name)) {
  if (kappa_in_.size() == 0) throw DimensionError("operator needs at least one input variable");
  if (nvars_out < 1 || nvars_out > limits::kMaxVars) throw DimensionError("invalid output variable count");
  for (auto& [alpha, img] : action) {
    if (alpha.size() != kappa_in_.size()) throw DimensionError("action key length != input variable count");
    if (!alpha.fits_within(kappa_in_)) throw DomainError("action key exceeds kappa_in");
    if (img.nvars() != nvars_out) throw DimensionError("image variable count != nvars_out");
    if (!img.is_zero()) action_.emplace(alpha, std::move(img));
  }
}

LinearOperator LinearOperator::tabulate(const ExponentVector& kappa_in, int nvars_out,
                                        const std::function<MultiPoly(const ExponentVector&)>& image,
                                        std::string name) {
  ActionTable table;
  for (const auto& alpha : box(kappa_in)) table.emplace(alpha, image(alpha));
  return LinearOperator(kappa_in, nvars_out, std::move(table), std::move(name));
}

MultiPoly LinearOperator::image(const ExponentVector& alpha) const {
  auto it = action_.find(alpha);
  if (it != action_.end()) return it->second;
  if (alpha.size() != kappa_in_.size()) throw DimensionError("monomial length != input variable count");
  return MultiPoly(nvars_out_);
}

MultiPoly apply(const LinearOperator& t, const MultiPoly& f) {
  if (f.nvars() != t.nvars_in()) throw DimensionError("operator input variable count mismatch");
  if (!f.fits_within(t.kappa_in())) throw DomainError("polynomial exceeds the operator's kappa");
  MultiPoly::TermMap acc;
  for (const auto& [alpha, c] : f.terms()) {
    auto it = t.action().find(alpha);
    if (it == t.action().end()) continue;
    for (const auto& [e, v] : it->second.terms()) acc[e] += c * v;
  }
  MultiPoly r(t.nvars_out(), std::move(acc));
  r.prune();
  return r;
}

RankInfo rank_at_most_one(const LinearOperator& t, double tol) {
  RankInfo info;
  const MultiPoly* first = nullptr;
  double first_norm2 = 0.0;
  for (const auto& [alpha, img] : t.action()) {
    if (img.is_zero()) continue;
    if (first == nullptr) {
      first = &img;
      for (const auto& [e, c] : img.terms()) first_norm2 += std::norm(c);
      continue;
    }
    // Project img onto span(first).
    Complex dot = 0.0;
    double norm2 = 0.0;
    for (const auto& [e, c] : img.terms()) {
      dot += std::conj(first->coefficient(e)) * c;
      norm2 += std::norm(c);
    }
    const Complex lambda = dot / first_norm2;
    double resid2 = 0.0;
    for (const auto& [e, c] : img.terms()) resid2 += std::norm(c - lambda * first->coefficient(e));
    for (const auto& [e, c] : first->terms()) {
      if (img.coefficient(e) == Complex(0.0)) resid2 += std::norm(lambda * c);
    }
    if (std::sqrt(resid2) > tol * std::sqrt(norm2)) return info;
  }
  info.rank_le_one = true;
  if (first != nullptr) info.common_image = *first;
  return info;
}

// ---------------------------------------------------------------------------
// Symbols

namespace {

void accumulate(MultiPoly::TermMap& acc, const MultiPoly& z_part, const ExponentVector& w_exp, Complex scale) {
  for (const auto& [e, c] : z_part.terms()) acc[e.concat(w_exp)] += scale * c;
}

MultiPoly finish_symbol(const LinearOperator& t, MultiPoly::TermMap acc, Pruning p) {
  MultiPoly r(t.nvars_out() + t.nvars_in(), std::move(acc));
  if (p == Pruning::kRelative) r.prune();
  return r;
}

}  // namespace

MultiPoly algebraic_symbol_halfplane(const LinearOperator& t) {
  const ExponentVector& kappa = t.kappa_in();
  MultiPoly::TermMap acc;
  for (const auto& alpha : box(kappa)) {
    const double b = static_cast<double>(multi_binomial(kappa, alpha));
    accumulate(acc, t.image(alpha), kappa - alpha, b);
  }
  return finish_symbol(t, std::move(acc), Pruning::kExactOnly);
}

MultiPoly algebraic_symbol_disc(const LinearOperator& t) {
  const ExponentVector& kappa = t.kappa_in();
  MultiPoly::TermMap acc;
  for (const auto& alpha : box(kappa)) {
    const double b = static_cast<double>(multi_binomial(kappa, alpha));
    accumulate(acc, t.image(alpha), alpha, b);
  }
  return finish_symbol(t, std::move(acc), Pruning::kExactOnly);
}

MultiPoly algebraic_symbol_general(const LinearOperator& t, std::span<const MoebiusMap> maps) {
  const int n = t.nvars_in();
  if (static_cast<int>(maps.size()) != n) throw DimensionError("need one Moebius map per input variable");
  // prod_i factor_i(z_i, w_i)^kappa_i in (z, w)
  MultiPoly product = MultiPoly::constant(2 * n, 1.0);
  for (int i = 0; i < n; ++i) {
    const auto& m = maps[static_cast<std::size_t>(i)];
    MultiPoly::TermMap f;
    f[ExponentVector{1, 1}] = 2.0 * m.a() * m.c();
    f[ExponentVector{1, 0}] = m.a() * m.d() + m.b() * m.c();
    f[ExponentVector{0, 1}] = m.a() * m.d() + m.b() * m.c();
    f[ExponentVector{0, 0}] = 2.0 * m.b() * m.d();
    const MultiPoly factor = pow(MultiPoly(2, std::move(f)), t.kappa_in()[static_cast<std::size_t>(i)]);
    MultiPoly::TermMap placed;
    for (const auto& [e, c] : factor.terms()) {
      ExponentVector big(static_cast<std::size_t>(2 * n));
      big[static_cast<std::size_t>(i)] = e[0];
      big[static_cast<std::size_t>(n + i)] = e[1];
      placed.emplace(std::move(big), c);
    }
    product = mul(product, MultiPoly(2 * n, std::move(placed)));
  }
  MultiPoly::TermMap acc;
  const auto nn = static_cast<std::size_t>(n);
  for (const auto& [e, c] : product.terms()) {
    accumulate(acc, t.image(e.slice(0, nn)), e.slice(nn, nn), c);
  }
  return finish_symbol(t, std::move(acc), Pruning::kRelative);
}

MultiPoly transcendental_symbol_truncated(const LinearOperator& t, SeriesSign sign, int order) {
  if (order < 0) throw DomainError("truncation order must be non-negative");
  for (int k : t.kappa_in()) {
    if (order > k) throw DomainError("truncation order exceeds the operator's defined range");
  }
  MultiPoly::TermMap acc;
  for (const auto& alpha : box(t.kappa_in())) {
    const int total = alpha.total();
    if (total > order) continue;
    const double s = (sign == SeriesSign::kMinus && total % 2 == 1) ? -1.0 : 1.0;
    accumulate(acc, t.image(alpha), alpha, s / alpha.factorial());
  }
  return finish_symbol(t, std::move(acc), Pruning::kExactOnly);
}

// ---------------------------------------------------------------------------
// Built-ins

LinearOperator builtin_identity(const ExponentVector& kappa) {
  return LinearOperator::tabulate(
      kappa, static_cast<int>(kappa.size()), [](const ExponentVector& a) { return MultiPoly::monomial(a); },
      "identity");
}

LinearOperator builtin_partial(int var, const ExponentVector& kappa) {
  const int n = static_cast<int>(kappa.size());
  if (var < 0 || var >= n) throw DimensionError("derivative variable out of range");
  const ExponentVector unit = ExponentVector::unit(kappa.size(), static_cast<std::size_t>(var));
  return LinearOperator::tabulate(
      kappa, n, [&](const ExponentVector& a) { return partial_derive(MultiPoly::monomial(a), unit); },
      "partial");
}

LinearOperator builtin_scaling(Complex factor, const ExponentVector& kappa) {
  return LinearOperator::tabulate(
      kappa, static_cast<int>(kappa.size()),
      [&](const ExponentVector& a) { return MultiPoly::monomial(a, std::pow(factor, a.total())); }, "scaling");
}

LinearOperator builtin_rank_one(const ExponentVector& kappa, const std::map<ExponentVector, Complex>& functional,
                                const MultiPoly& p) {
  return LinearOperator::tabulate(
      kappa, p.nvars(),
      [&](const ExponentVector& a) {
        auto it = functional.find(a);
        return it == functional.end() ? MultiPoly(p.nvars()) : it->second * p;
      },
      "rank_one");
}

LinearOperator builtin_asano(int i, int j, const ExponentVector& kappa) {
  const int n = static_cast<int>(kappa.size());
  if (n < 2) throw DomainError("Asano contraction needs at least two variables");
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw DimensionError("Asano indices out of range");
  const auto ii = static_cast<std::size_t>(i);
  const auto jj = static_cast<std::size_t>(j);
  if (kappa[ii] != 1 || kappa[jj] != 1) throw DomainError("Asano contraction needs kappa_i = kappa_j = 1");
  return LinearOperator::tabulate(
      kappa, n,
      [&](const ExponentVector& a) {
        if (a[ii] == 0 && a[jj] == 0) return MultiPoly::monomial(a);
        if (a[ii] == 1 && a[jj] == 1) {
          ExponentVector b = a;
          b[jj] = 0;
          return MultiPoly::monomial(b);
        }
        return MultiPoly(n);
      },
      "asano");
}

LinearOperator builtin_map_operator(const ExponentVector& kappa) {
  const int n = static_cast<int>(kappa.size());
  return LinearOperator::tabulate(
      kappa, n,
      [n](const ExponentVector& a) {
        for (int e : a) {
          if (e > 1) return MultiPoly(n);
        }
        return MultiPoly::monomial(a);
      },
      "map");
}

MultiPoly apply_lee_yang_edge(const MultiPoly& f, int i, int j, double coupling) {
  const int n = f.nvars();
  if (i < 0 || j < 0 || i >= n || j >= n) throw DimensionError("edge indices out of range");
  ExponentVector d(static_cast<std::size_t>(n));
  d[static_cast<std::size_t>(i)] += 1;
  d[static_cast<std::size_t>(j)] += 1;
  return add(std::cosh(coupling) * f, std::sinh(coupling) * partial_derive(f, d));
}

LinearOperator builtin_lee_yang_edge(int i, int j, double coupling, const ExponentVector& kappa) {
  const int n = static_cast<int>(kappa.size());
  if (i < 0 || j < 0 || i >= n || j >= n) throw DimensionError("edge indices out of range");
  return LinearOperator::tabulate(
      kappa, n,
      [&](const ExponentVector& a) { return apply_lee_yang_edge(MultiPoly::monomial(a), i, j, coupling); },
      "lee_yang_edge");
}

LinearOperator builtin_hadamard_schur(const MultiPoly& g) {
  const int n = g.nvars();
  const ExponentVector ones = ExponentVector::filled(static_cast<std::size_t>(n), 1);
  if (!g.fits_within(ones)) throw DomainError("Hadamard-Schur factor must be multi-affine");
  // f^(a)(0) g^(a)(0) z^a = (a!)^2 f_a g_a z^a, and a! = 1 for a <= (1..1).
  return LinearOperator::tabulate(
      ones, n, [&](const ExponentVector& a) { return MultiPoly::monomial(a, g.coefficient(a)); },
      "hadamard_schur");
}

LinearOperator builtin_lieb_sokal_operator(int n, int cap) {
  if (n < 1 || cap < 0) throw DomainError("invalid Lieb-Sokal operator size");
  const auto nn = static_cast<std::size_t>(n);
  return LinearOperator::tabulate(
      ExponentVector::filled(2 * nn, cap), 2 * n,
      [&](const ExponentVector& e) {
        const ExponentVector alpha = e.slice(0, nn);
        const ExponentVector beta = e.slice(nn, nn);
        if (!alpha.fits_within(beta)) return MultiPoly(2 * n);
        double c = 1.0;
        for (std::size_t k = 0; k < nn; ++k) {
          for (int m = 0; m < alpha[k]; ++m) c *= beta[k] - m;
        }
        return MultiPoly::monomial(ExponentVector(nn).concat(beta - alpha), c);
      },
      "lieb_sokal");
}

LiebSokalPair builtin_lieb_sokal(std::span<const MultiPoly> p_list, std::span<const MultiPoly> q_list) {
  if (p_list.size() != q_list.size() || p_list.empty()) {
    throw DimensionError("Lieb-Sokal needs equally many P and Q polynomials");
  }
  const int n = p_list[0].nvars();
  MultiPoly r(2 * n);
  MultiPoly s(n);
  for (std::size_t k = 0; k < p_list.size(); ++k) {
    if (p_list[k].nvars() != n || q_list[k].nvars() != n) throw DimensionError("variable-count mismatch");
    r = add(r, tensor(p_list[k], q_list[k]), Pruning::kExactOnly);
    for (const auto& [alpha, c] : p_list[k].terms()) {
      s = add(s, c * partial_derive(q_list[k], alpha), Pruning::kExactOnly);
    }
  }
  return {std::move(r), std::move(s)};
}

// ---------------------------------------------------------------------------
// Classification

std::string to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::kAlgebraicHalfPlane:
      return "algebraic-halfplane";
    case SymbolKind::kAlgebraicDisc:
      return "algebraic-disc";
    case SymbolKind::kAlgebraicGeneral:
      return "algebraic-general";
    case SymbolKind::kTranscendentalTruncation:
      return "transcendental-truncation";
  }
  return "unknown";
}

namespace {

SymbolKind pick_kind(const DomainProduct& omega) {
  const auto& first = omega[0];
  bool same = true;
  for (const auto& d : omega.domains) same = same && d == first;
  if (!same) return SymbolKind::kAlgebraicGeneral;
  if (const auto* h = std::get_if<HalfPlane>(&first.shape())) {
    if (h->offset == Complex(0.0)) return SymbolKind::kAlgebraicHalfPlane;
  }
  if (first == CircularDomain::unit_disc() || first == CircularDomain::unit_disc_exterior()) {
    return SymbolKind::kAlgebraicDisc;
  }
  return SymbolKind::kAlgebraicGeneral;
}

}  // namespace

SymbolReport classify_preserver_evidence(const LinearOperator& t, const DomainProduct& omega,
                                         std::span<const MoebiusMap> maps, const OracleConfig& cfg) {
  if (t.nvars_in() != t.nvars_out()) throw DimensionError("classification needs nvars_in == nvars_out");
  if (omega.size() != t.nvars_in()) throw DimensionError("domain product length != operator variables");
  SymbolReport rep;
  if (!maps.empty()) {
    rep.kind = SymbolKind::kAlgebraicGeneral;
    rep.symbol = algebraic_symbol_general(t, maps);
  } else {
    rep.kind = pick_kind(omega);
    switch (rep.kind) {
      case SymbolKind::kAlgebraicHalfPlane:
        rep.symbol = algebraic_symbol_halfplane(t);
        break;
      case SymbolKind::kAlgebraicDisc:
        rep.symbol = algebraic_symbol_disc(t);
        break;
      default: {
        std::vector<MoebiusMap> catalog;
        for (const auto& d : omega.domains) catalog.push_back(map_to_upper_half_plane(d));
        rep.symbol = algebraic_symbol_general(t, catalog);
      }
    }
  }

  const RankInfo rank = rank_at_most_one(t);
  rep.rank_le_one = rank.rank_le_one;
  rep.common_image = rank.common_image;
  bool branch_a = false;
  if (rank.rank_le_one) {
    if (rank.common_image) {
      rep.image_verdict = find_zero(*rank.common_image, omega, cfg);
      branch_a = !rep.image_verdict->found_zero();
    } else {
      branch_a = true;  // T == 0
    }
  }
  bool branch_b = false;
  if (!rep.symbol.is_zero()) {
    rep.verdict = find_zero(rep.symbol, omega.doubled(), cfg);
    branch_b = !rep.verdict->found_zero();
  }
  rep.evidence_positive = branch_a || branch_b;
  return rep;
}

std::vector<SymbolReport> classify_ladder(const std::function<LinearOperator(const ExponentVector&)>& family,
                                          const DomainProduct& omega, std::span<const int> rungs,
                                          const OracleConfig& cfg) {
  std::vector<SymbolReport> out;
  for (int k : rungs) {
    const ExponentVector kappa = ExponentVector::filled(static_cast<std::size_t>(omega.size()), k);
    out.push_back(classify_preserver_evidence(family(kappa), omega, {}, cfg));
  }
  return out;
}

}  // namespace leeyang
