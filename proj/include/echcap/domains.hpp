#pragma once

// Four-dimensional domains whose capacities the library computes: ellipsoids
// E(a, b), balls B(a) = E(a, a), convex toric domains X_Omega given by a
// polygonal profile Omega, and disjoint unions of these.

#include <cstdint>
#include <variant>
#include <vector>

#include "echcap/lattice_path.hpp"
#include "echcap/rational.hpp"

namespace echcap {

struct RatPoint {
  Rat x;
  Rat y;

  friend bool operator==(const RatPoint&, const RatPoint&) = default;
};

class ToricProfile;

class Ellipsoid {
 public:
  Ellipsoid(Rat a, Rat b);  // throws PreconditionError unless a, b > 0

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }

  // The triangle with legs a (x-axis) and b (y-axis).
  ToricProfile profile() const;

  friend bool operator==(const Ellipsoid&, const Ellipsoid&) = default;

 private:
  Rat a_;
  Rat b_;
};

class Ball {
 public:
  explicit Ball(Rat a);

  const Rat& a() const { return a_; }
  Ellipsoid ellipsoid() const { return Ellipsoid(a_, a_); }

  friend bool operator==(const Ball&, const Ball&) = default;

 private:
  Rat a_;
};

// Boundary chain of Omega from (0, b) on the y-axis to (a, 0) on the x-axis.
// Interior vertices lie in the open quadrant and edge slopes strictly
// decrease within [-inf, 0], which is exactly the condition for the
// symmetrized region to be a convex polygon with 0 in its interior.
class ToricProfile {
 public:
  // validate_profile: throws PreconditionError naming the violated condition.
  static ToricProfile validate(std::vector<RatPoint> vertices);

  static ToricProfile triangle(const Rat& a, const Rat& b);
  static ToricProfile rectangle(const Rat& a, const Rat& b);

  const std::vector<RatPoint>& vertices() const { return vertices_; }
  const Rat& width() const { return vertices_.back().x; }    // a
  const Rat& height() const { return vertices_.front().y; }  // b

  // Height of the chain above x, for 0 <= x <= width().
  Rat height_at(const Rat& x) const;

  friend bool operator==(const ToricProfile&, const ToricProfile&) = default;

 private:
  explicit ToricProfile(std::vector<RatPoint> v) : vertices_(std::move(v)) {}
  std::vector<RatPoint> vertices_;
};

inline ToricProfile validate_profile(std::vector<RatPoint> vertices) {
  return ToricProfile::validate(std::move(vertices));
}

struct Domain;

struct DisjointUnion {
  std::vector<Domain> parts;  // nonempty
};

struct Domain {
  std::variant<Ellipsoid, Ball, ToricProfile, DisjointUnion> shape;
};

bool operator==(const DisjointUnion& l, const DisjointUnion& r);
bool operator==(const Domain& l, const Domain& r);

// Support function of the symmetrized region: max <v, w> over w in Omega-hat.
Rat dual_norm(const ToricProfile& omega, std::int64_t v1, std::int64_t v2);

// Sum over edges of the dual norm of the edge vector rotated by +90 degrees;
// an edge direction (p, -q) contributes mult * ||(q, p)||*.
Rat omega_length(const ToricProfile& omega, const LatticePath& path);

Rat domain_area(const ToricProfile& omega);

// vol(boundary) = 2 vol(domain); for E(a, b) this is a*b. Disjoint unions
// add their parts.
Rat contact_volume(const Domain& domain);
Rat contact_volume(const Ellipsoid& e);
Rat contact_volume(const ToricProfile& omega);

// rho > 0 with ||w||* >= rho * ||w||_1 for every w.
Rat norm_floor(const ToricProfile& omega);

// The domain scaled so that its capacities scale by r (Omega -> r Omega).
Domain scale_domain(const Domain& domain, const Rat& r);

}  // namespace echcap
