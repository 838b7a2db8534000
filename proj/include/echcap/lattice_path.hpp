#pragma once

// Convex integral paths: lattice paths from (0, b) to (a, 0) whose edges have
// slopes in [-inf, 0] and bound, together with the axes, a convex region.
//
// A path is stored as its primitive edge directions with multiplicities,
// sorted by strictly decreasing slope. Convexity is therefore structural:
// any value of LatticePath is a valid convex integral path.

#include <cstdint>
#include <span>
#include <vector>

#include "echcap/rational.hpp"

namespace echcap {

// Edge vector (p, -q) with p, q >= 0, not both zero, gcd(p, q) = 1.
struct Direction {
  std::int64_t p = 0;
  std::int64_t q = 0;

  friend bool operator==(const Direction&, const Direction&) = default;
};

// True when d1 is strictly steeper-later than d2 in path order, i.e. the
// slope -q/p of d1 is greater than that of d2. Horizontal comes first,
// vertical last.
inline bool slope_before(const Direction& d1, const Direction& d2) {
  return d1.q * d2.p < d2.q * d1.p;
}

struct PathEdge {
  Direction dir;
  std::int64_t mult = 1;

  friend bool operator==(const PathEdge&, const PathEdge&) = default;
};

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

class LatticePath {
 public:
  LatticePath() = default;

  // Accepts any edge vectors (p, -q) with p, q >= 0 (need not be primitive,
  // any order). Reduces each to primitive direction times multiplicity,
  // sorts by slope and merges collinear edges. Throws PreconditionError on a
  // zero vector or non-positive multiplicity.
  static LatticePath canonical(std::span<const PathEdge> edges);

  // Builds the path through the given vertices, which must start on the
  // y-axis, end on the x-axis and turn convexly.
  static LatticePath from_vertices(std::span<const LatticePoint> vertices);

  const std::vector<PathEdge>& edges() const { return edges_; }
  bool empty() const { return edges_.empty(); }

  // m(Lambda): total edge multiplicity.
  std::int64_t total_multiplicity() const;

  // Vertices from (0, b) to (a, 0), collinear points omitted.
  std::vector<LatticePoint> vertices() const;

  friend bool operator==(const LatticePath&, const LatticePath&) = default;

 private:
  std::vector<PathEdge> edges_;
};

struct PathEndpoints {
  std::int64_t a = 0;  // end point (a, 0)
  std::int64_t b = 0;  // start point (0, b)

  friend bool operator==(const PathEndpoints&, const PathEndpoints&) = default;
};

PathEndpoints path_endpoints(const LatticePath& path);

// Area of the region enclosed by the path and the axes.
Rat enclosed_area(const LatticePath& path);

// Shoelace area of a simple polygon given in order (either orientation).
Rat polygon_area(std::span<const LatticePoint> polygon);

// Lattice points in the enclosed region, boundary included, by a column scan.
std::int64_t lattice_count_direct(const LatticePath& path);

struct PickCount {
  std::int64_t count = 0;
  std::int64_t boundary = 0;
  bool degenerate = false;  // zero-area region; count came from the column scan
};

// Same count via Pick's theorem, Area + B/2 + 1.
PickCount lattice_count_pick(const LatticePath& path);

}  // namespace echcap
