#pragma once

// Open circular domains in C, SL2-normalized Moebius maps between them, and
// the transport map Phi_kappa on degree-truncated polynomial spaces.

#include <complex>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "leeyang/poly.hpp"
#include "leeyang/rng.hpp"

namespace leeyang {

/// { zeta : Im(e^{i theta} (zeta - offset)) > 0 }. offset = 0 gives H_theta.
struct HalfPlane {
  double theta = 0.0;
  Complex offset = 0.0;
};

struct Disc {
  Complex center = 0.0;
  double radius = 1.0;
};

struct DiscExterior {
  Complex center = 0.0;
  double radius = 1.0;
};

class CircularDomain {
 public:
  enum class Kind { kHalfPlane, kDisc, kDiscExterior };

  CircularDomain(HalfPlane h);  // NOLINT(google-explicit-constructor)
  CircularDomain(Disc d);       // NOLINT(google-explicit-constructor)
  CircularDomain(DiscExterior d);  // NOLINT(google-explicit-constructor)

  static CircularDomain half_plane(double theta) { return HalfPlane{theta, 0.0}; }
  static CircularDomain upper_half_plane() { return HalfPlane{0.0, 0.0}; }
  static CircularDomain right_half_plane();
  static CircularDomain unit_disc() { return Disc{0.0, 1.0}; }
  static CircularDomain unit_disc_exterior() { return DiscExterior{0.0, 1.0}; }

  Kind kind() const;
  const std::variant<HalfPlane, Disc, DiscExterior>& shape() const { return shape_; }

  /// Half-planes and discs are convex; disc exteriors are not.
  bool is_convex() const { return kind() != Kind::kDiscExterior; }

  /// Strict (open) membership.
  bool contains(Complex zeta) const { return boundary_distance(zeta) > 0.0; }
  /// Signed Euclidean distance to the boundary, positive inside.
  double boundary_distance(Complex zeta) const;

  /// Interior of the complement: disc <-> exterior, H_theta <-> H_{theta+pi}.
  CircularDomain complement() const;

  std::string describe() const;

  friend bool operator==(const CircularDomain& a, const CircularDomain& b);

 private:
  std::variant<HalfPlane, Disc, DiscExterior> shape_;
};

/// Truncation used to sample unbounded domains.
struct SamplerConfig {
  double half_plane_cap = 10.0;  // |rotated point - offset| <= cap
  double exterior_cap = 10.0;    // |zeta - center| <= cap * radius
};

/// A point at distance >= margin from the boundary. Throws DomainError if the
/// margin leaves no room (margin >= radius for a disc, >= cap otherwise).
Complex sample_interior(const CircularDomain& d, Rng& rng, double margin = 0.0,
                        const SamplerConfig& cfg = {});
Complex sample_interior(const CircularDomain& d, std::uint64_t seed, double margin = 0.0,
                        const SamplerConfig& cfg = {});

/// zeta -> (a zeta + b) / (c zeta + d) with ad - bc = 1.
class MoebiusMap {
 public:
  /// Identity.
  MoebiusMap() = default;
  /// Normalizes by a square root of ad - bc; the branch makes the first
  /// significant entry of (a, b, c, d) have argument in (-pi/2, pi/2].
  MoebiusMap(Complex a, Complex b, Complex c, Complex d);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }

  Complex apply(Complex zeta) const;
  Complex operator()(Complex zeta) const { return apply(zeta); }
  MoebiusMap inverse() const;
  /// (*this) o inner
  MoebiusMap after(const MoebiusMap& inner) const;
  Complex determinant() const { return a_ * d_ - b_ * c_; }

 private:
  Complex a_ = 1.0, b_ = 0.0, c_ = 0.0, d_ = 1.0;
};

/// Map from the open upper half-plane's preimage: the catalog map sending
/// `d` onto H_0.
MoebiusMap map_to_upper_half_plane(const CircularDomain& d);

/// A map with phi(from) == to as sets.
MoebiusMap moebius_for(const CircularDomain& from, const CircularDomain& to);

/// Omega = C_1 x ... x C_n.
struct DomainProduct {
  std::vector<CircularDomain> domains;

  DomainProduct() = default;
  explicit DomainProduct(std::vector<CircularDomain> ds) : domains(std::move(ds)) {}
  static DomainProduct uniform(const CircularDomain& d, int n);

  int size() const { return static_cast<int>(domains.size()); }
  const CircularDomain& operator[](std::size_t i) const { return domains[i]; }
  /// Omega x Omega, as used for symbols in (z, w).
  DomainProduct doubled() const;
  /// Smallest boundary distance over coordinates.
  double boundary_margin(std::span<const Complex> point) const;
};

/// Phi_kappa(f)(z) = prod (c_i z_i + d_i)^{kappa_i} f(phi_1(z_1), .., phi_n(z_n)),
/// computed monomialwise: z_i^e -> (a_i z_i + b_i)^e (c_i z_i + d_i)^{kappa_i - e}.
MultiPoly phi_kappa(const MultiPoly& f, std::span<const MoebiusMap> maps, const ExponentVector& kappa);

}  // namespace leeyang
