#include "leeyang/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "leeyang/error.hpp"

namespace leeyang {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  if (!std::isfinite(theta)) throw DomainError("half-plane angle must be finite");
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

void check_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("radius must be positive and finite");
}

}  // namespace

CircularDomain::CircularDomain(HalfPlane h) : shape_(HalfPlane{wrap_angle(h.theta), h.offset}) {}

CircularDomain::CircularDomain(Disc d) : shape_(d) { check_radius(d.radius); }

CircularDomain::CircularDomain(DiscExterior d) : shape_(d) { check_radius(d.radius); }

CircularDomain CircularDomain::right_half_plane() { return HalfPlane{std::numbers::pi / 2.0, 0.0}; }

CircularDomain::Kind CircularDomain::kind() const {
  switch (shape_.index()) {
    case 0:
      return Kind::kHalfPlane;
    case 1:
      return Kind::kDisc;
    default:
      return Kind::kDiscExterior;
  }
}

double CircularDomain::boundary_distance(Complex zeta) const {
  if (const auto* h = std::get_if<HalfPlane>(&shape_)) {
    return (std::polar(1.0, h->theta) * (zeta - h->offset)).imag();
  }
  if (const auto* d = std::get_if<Disc>(&shape_)) return d->radius - std::abs(zeta - d->center);
  const auto& e = std::get<DiscExterior>(shape_);
  return std::abs(zeta - e.center) - e.radius;
}

CircularDomain CircularDomain::complement() const {
  if (const auto* h = std::get_if<HalfPlane>(&shape_)) {
    return HalfPlane{h->theta + std::numbers::pi, h->offset};
  }
  if (const auto* d = std::get_if<Disc>(&shape_)) return DiscExterior{d->center, d->radius};
  const auto& e = std::get<DiscExterior>(shape_);
  return Disc{e.center, e.radius};
}

std::string CircularDomain::describe() const {
  std::ostringstream os;
  os.precision(6);
  if (const auto* h = std::get_if<HalfPlane>(&shape_)) {
    os << "HalfPlane{theta=" << h->theta;
    if (h->offset != Complex(0.0)) os << ", offset=" << h->offset;
    os << "}";
  } else if (const auto* d = std::get_if<Disc>(&shape_)) {
    os << "Disc{center=" << d->center << ", radius=" << d->radius << "}";
  } else {
    const auto& e = std::get<DiscExterior>(shape_);
    os << "DiscExterior{center=" << e.center << ", radius=" << e.radius << "}";
  }
  return os.str();
}

bool operator==(const CircularDomain& a, const CircularDomain& b) {
  if (a.kind() != b.kind()) return false;
  if (const auto* h = std::get_if<HalfPlane>(&a.shape_)) {
    const auto& g = std::get<HalfPlane>(b.shape_);
    return h->theta == g.theta && h->offset == g.offset;
  }
  if (const auto* d = std::get_if<Disc>(&a.shape_)) {
    const auto& e = std::get<Disc>(b.shape_);
    return d->center == e.center && d->radius == e.radius;
  }
  const auto& d = std::get<DiscExterior>(a.shape_);
  const auto& e = std::get<DiscExterior>(b.shape_);
  return d.center == e.center && d.radius == e.radius;
}

// ---------------------------------------------------------------------------
// Sampling

Complex sample_interior(const CircularDomain& d, Rng& rng, double margin, const SamplerConfig& cfg) {
  if (!(margin >= 0.0)) throw DomainError("sampling margin must be non-negative");
  const auto& shape = d.shape();
  if (const auto* disc = std::get_if<Disc>(&shape)) {
    const double room = disc->radius - margin;
    if (!(room > 0.0)) throw DomainError("margin leaves no interior in the disc");
    // uniform by area
    const double rho = room * std::sqrt(uniform01(rng));
    const double phi = uniform(rng, 0.0, kTwoPi);
    return disc->center + std::polar(rho, phi);
  }
  if (const auto* ext = std::get_if<DiscExterior>(&shape)) {
    const double lo = ext->radius + margin;
    const double hi = cfg.exterior_cap * ext->radius;
    if (!(hi > lo)) throw DomainError("margin leaves no room below the exterior sampling cap");
    // log-uniform modulus
    const double rho = lo * std::exp(uniform01(rng) * std::log(hi / lo));
    const double phi = uniform(rng, 0.0, kTwoPi);
    return ext->center + std::polar(rho, phi);
  }
  const auto& h = std::get<HalfPlane>(shape);
  const double cap = cfg.half_plane_cap;
  if (!(cap > margin)) throw DomainError("margin leaves no room below the half-plane sampling cap");
  // Local coordinates: upper half-plane, heavier near the boundary line.
  Complex local;
  do {
    const double x = uniform(rng, -cap, cap);
    const double u = uniform01(rng);
    const double y = margin + (cap - margin) * u * u;
    local = Complex(x, y);
  } while (std::abs(local) > cap);
  return h.offset + std::polar(1.0, -h.theta) * local;
}

Complex sample_interior(const CircularDomain& d, std::uint64_t seed, double margin, const SamplerConfig& cfg) {
  Rng rng(seed);
  return sample_interior(d, rng, margin, cfg);
}

// ---------------------------------------------------------------------------
// Moebius maps

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d) {
  const Complex det = a * d - b * c;
  if (std::abs(det) == 0.0) throw DomainError("degenerate Moebius map (ad - bc = 0)");
  const Complex s = std::sqrt(det);
  a_ = a / s;
  b_ = b / s;
  c_ = c / s;
  d_ = d / s;
  const double big = std::max({std::abs(a_), std::abs(b_), std::abs(c_), std::abs(d_)});
  for (Complex x : {a_, b_, c_, d_}) {
    if (std::abs(x) <= 1e-12 * big) continue;
    const double arg = std::arg(x);
    if (!(arg > -std::numbers::pi / 2.0 && arg <= std::numbers::pi / 2.0)) {
      a_ = -a_;
      b_ = -b_;
      c_ = -c_;
      d_ = -d_;
    }
    break;
  }
}

Complex MoebiusMap::apply(Complex zeta) const {
  const Complex den = c_ * zeta + d_;
  if (std::abs(den) <= 1e-300) throw DomainError("point is the pole of the Moebius map");
  return (a_ * zeta + b_) / den;
}

MoebiusMap MoebiusMap::inverse() const { return MoebiusMap(d_, -b_, -c_, a_); }

MoebiusMap MoebiusMap::after(const MoebiusMap& inner) const {
  return MoebiusMap(a_ * inner.a_ + b_ * inner.c_, a_ * inner.b_ + b_ * inner.d_,
                    c_ * inner.a_ + d_ * inner.c_, c_ * inner.b_ + d_ * inner.d_);
}

MoebiusMap map_to_upper_half_plane(const CircularDomain& d) {
  const Complex i(0.0, 1.0);
  const auto& shape = d.shape();
  if (const auto* h = std::get_if<HalfPlane>(&shape)) {
    const Complex rot = std::polar(1.0, h->theta);
    return MoebiusMap(rot, -rot * h->offset, 0.0, 1.0);
  }
  if (const auto* disc = std::get_if<Disc>(&shape)) {
    // (zeta - c)/r onto the unit disc, then u -> (u + i)/(iu + 1).
    const MoebiusMap to_unit(1.0, -disc->center, 0.0, disc->radius);
    return MoebiusMap(1.0, i, i, 1.0).after(to_unit);
  }
  const auto& ext = std::get<DiscExterior>(shape);
  // (zeta - c)/r onto the unit exterior, then u -> (iu + 1)/(u + i).
  const MoebiusMap to_unit(1.0, -ext.center, 0.0, ext.radius);
  return MoebiusMap(i, 1.0, 1.0, i).after(to_unit);
}

MoebiusMap moebius_for(const CircularDomain& from, const CircularDomain& to) {
  return map_to_upper_half_plane(to).inverse().after(map_to_upper_half_plane(from));
}

// ---------------------------------------------------------------------------
// Domain products

DomainProduct DomainProduct::uniform(const CircularDomain& d, int n) {
  if (n < 1) throw DimensionError("domain product needs at least one factor");
  return DomainProduct(std::vector<CircularDomain>(static_cast<std::size_t>(n), d));
}

DomainProduct DomainProduct::doubled() const {
  std::vector<CircularDomain> ds = domains;
  ds.insert(ds.end(), domains.begin(), domains.end());
  return DomainProduct(std::move(ds));
}

double DomainProduct::boundary_margin(std::span<const Complex> point) const {
  if (point.size() != domains.size()) throw DimensionError("point length != domain count");
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < point.size(); ++i) m = std::min(m, domains[i].boundary_distance(point[i]));
  return m;
}

// ---------------------------------------------------------------------------
// Phi_kappa

namespace {

// Ascending coefficients of (a t + b)^e (c t + d)^(k - e).
std::vector<Complex> transported_monomial(const MoebiusMap& m, int e, int k) {
  std::vector<Complex> p{1.0};
  auto times_linear = [&p](Complex slope, Complex intercept) {
    std::vector<Complex> q(p.size() + 1, 0.0);
    for (std::size_t j = 0; j < p.size(); ++j) {
      q[j] += intercept * p[j];
      q[j + 1] += slope * p[j];
    }
    p = std::move(q);
  };
  for (int j = 0; j < e; ++j) times_linear(m.a(), m.b());
  for (int j = e; j < k; ++j) times_linear(m.c(), m.d());
  return p;
}

}  // namespace

MultiPoly phi_kappa(const MultiPoly& f, std::span<const MoebiusMap> maps, const ExponentVector& kappa) {
  const int n = f.nvars();
  if (static_cast<int>(maps.size()) != n) throw DimensionError("need one Moebius map per variable");
  if (static_cast<int>(kappa.size()) != n) throw DimensionError("kappa length mismatch");
  if (!f.fits_within(kappa)) throw DomainError("polynomial exceeds kappa in some variable");

  // table[i][e] = transported z_i^e
  std::vector<std::vector<std::vector<Complex>>> table(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (int e = 0; e <= kappa[i]; ++e) table[i].push_back(transported_monomial(maps[i], e, kappa[i]));
  }

  MultiPoly::TermMap out;
  for (const auto& [alpha, coef] : f.terms()) {
    // Expand the tensor product of univariate factors.
    std::vector<std::pair<ExponentVector, Complex>> partial{{ExponentVector(static_cast<std::size_t>(n)), coef}};
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto& u = table[i][static_cast<std::size_t>(alpha[i])];
      std::vector<std::pair<ExponentVector, Complex>> next;
      next.reserve(partial.size() * u.size());
      for (const auto& [e, c] : partial) {
        for (std::size_t k = 0; k < u.size(); ++k) {
          if (u[k] == Complex(0.0)) continue;
          ExponentVector e2 = e;
          e2[i] = static_cast<int>(k);
          next.emplace_back(std::move(e2), c * u[k]);
        }
      }
      partial = std::move(next);
    }
    for (auto& [e, c] : partial) out[e] += c;
  }
  MultiPoly r(n, std::move(out));
  r.prune();
  return r;
}

}  // namespace leeyang
