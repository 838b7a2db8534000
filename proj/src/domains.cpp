#include "echcap/domains.hpp"

#include <algorithm>

#include "echcap/errors.hpp"

namespace echcap {

Ellipsoid::Ellipsoid(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_ <= 0 || b_ <= 0) throw PreconditionError("ellipsoid parameters must be positive");
}

ToricProfile Ellipsoid::profile() const { return ToricProfile::triangle(a_, b_); }

Ball::Ball(Rat a) : a_(std::move(a)) {
  if (a_ <= 0) throw PreconditionError("ball parameter must be positive");
}

ToricProfile ToricProfile::validate(std::vector<RatPoint> v) {
  if (v.size() < 2) throw PreconditionError("profile needs at least two vertices");
  if (v.front().x != 0) throw PreconditionError("first vertex must lie on the y-axis");
  if (v.back().y != 0) throw PreconditionError("last vertex must lie on the x-axis");
  if (v.front().y <= 0) throw PreconditionError("profile height b must be positive");
  if (v.back().x <= 0) throw PreconditionError("profile width a must be positive");
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i].x <= 0 || v[i].y <= 0) {
      throw PreconditionError("interior vertex " + std::to_string(i) +
                              " is not in the open first quadrant");
    }
  }
  // Edge (dx, dy): dx >= 0, dy <= 0, and slopes strictly decreasing. Compare
  // slopes by cross product so vertical edges need no special case.
  Rat prev_dx;
  Rat prev_dy;
  for (std::size_t i = 1; i < v.size(); ++i) {
    Rat dx = v[i].x - v[i - 1].x;
    Rat dy = v[i].y - v[i - 1].y;
    if (dx == 0 && dy == 0) throw PreconditionError("repeated vertex " + std::to_string(i));
    if (dx < 0 || dy > 0) {
      throw PreconditionError("edge " + std::to_string(i) + " has positive slope");
    }
    if (i > 1 && prev_dx * dy - prev_dy * dx >= 0) {
      throw PreconditionError("profile is not strictly convex at vertex " + std::to_string(i - 1));
    }
    prev_dx = std::move(dx);
    prev_dy = std::move(dy);
  }
  return ToricProfile(std::move(v));
}

ToricProfile ToricProfile::triangle(const Rat& a, const Rat& b) {
  return validate({{Rat(0), b}, {a, Rat(0)}});
}

ToricProfile ToricProfile::rectangle(const Rat& a, const Rat& b) {
  return validate({{Rat(0), b}, {a, b}, {a, Rat(0)}});
}

Rat ToricProfile::height_at(const Rat& x) const {
  if (x < 0 || x > width()) throw PreconditionError("height_at outside the profile");
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    const auto& l = vertices_[i - 1];
    const auto& r = vertices_[i];
    if (x <= r.x) {
      if (r.x == l.x) return l.y;  // vertical edge: the top of it
      return l.y + (r.y - l.y) * (x - l.x) / (r.x - l.x);
    }
  }
  return Rat(0);
}

bool operator==(const DisjointUnion& l, const DisjointUnion& r) { return l.parts == r.parts; }
bool operator==(const Domain& l, const Domain& r) { return l.shape == r.shape; }

Rat dual_norm(const ToricProfile& omega, std::int64_t v1, std::int64_t v2) {
  // Omega-hat is the reflection of Omega in both axes; its vertices are the
  // reflected profile vertices, so only |v1|, |v2| matter.
  Rat u1 = make_rat(v1 < 0 ? -v1 : v1);
  Rat u2 = make_rat(v2 < 0 ? -v2 : v2);
  Rat best = 0;
  for (const auto& w : omega.vertices()) {
    Rat s = u1 * w.x + u2 * w.y;
    if (s > best) best = std::move(s);
  }
  return best;
}

Rat omega_length(const ToricProfile& omega, const LatticePath& path) {
  Rat total = 0;
  for (const auto& e : path.edges()) {
    total += make_rat(e.mult) * dual_norm(omega, e.dir.q, e.dir.p);
  }
  return total;
}

Rat domain_area(const ToricProfile& omega) {
  // Shoelace over (0,0) -> (0,b) -> ... -> (a,0).
  const auto& v = omega.vertices();
  Rat twice = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    twice += v[i].x * v[i + 1].y - v[i + 1].x * v[i].y;
  }
  return abs(twice) / 2;
}

Rat contact_volume(const Ellipsoid& e) { return e.a() * e.b(); }

Rat contact_volume(const ToricProfile& omega) { return 2 * domain_area(omega); }

Rat contact_volume(const Domain& domain) {
  return std::visit(
      [](const auto& s) -> Rat {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ellipsoid>) {
          return contact_volume(s);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return s.a() * s.a();
        } else if constexpr (std::is_same_v<T, ToricProfile>) {
          return contact_volume(s);
        } else {
          Rat total = 0;
          for (const auto& p : s.parts) total += contact_volume(p);
          return total;
        }
      },
      domain.shape);
}

Rat norm_floor(const ToricProfile& omega) {
  return std::min(dual_norm(omega, 1, 0), dual_norm(omega, 0, 1)) / 2;
}

Domain scale_domain(const Domain& domain, const Rat& r) {
  if (r <= 0) throw PreconditionError("scale factor must be positive");
  return std::visit(
      [&](const auto& s) -> Domain {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ellipsoid>) {
          return {Ellipsoid(r * s.a(), r * s.b())};
        } else if constexpr (std::is_same_v<T, Ball>) {
          return {Ball(r * s.a())};
        } else if constexpr (std::is_same_v<T, ToricProfile>) {
          std::vector<RatPoint> scaled;
          for (const auto& p : s.vertices()) scaled.push_back({r * p.x, r * p.y});
          return {ToricProfile::validate(std::move(scaled))};
        } else {
          DisjointUnion u;
          for (const auto& p : s.parts) u.parts.push_back(scale_domain(p, r));
          return {std::move(u)};
        }
      },
      domain.shape);
}

}  // namespace echcap
