#include "echcap/lattice_path.hpp"

#include <algorithm>
#include <string>

#include "echcap/errors.hpp"

namespace echcap {

LatticePath LatticePath::canonical(std::span<const PathEdge> edges) {
  std::vector<PathEdge> reduced;
  reduced.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.dir.p < 0 || e.dir.q < 0) {
      throw PreconditionError("edge (" + std::to_string(e.dir.p) + ", " +
                              std::to_string(-e.dir.q) + ") leaves the slope range [-inf, 0]");
    }
    if (e.dir.p == 0 && e.dir.q == 0) throw PreconditionError("zero edge vector");
    if (e.mult <= 0) throw PreconditionError("edge multiplicity must be positive");
    std::int64_t g = gcd(e.dir.p, e.dir.q);
    reduced.push_back({{e.dir.p / g, e.dir.q / g}, e.mult * g});
  }
  std::stable_sort(reduced.begin(), reduced.end(),
                   [](const PathEdge& l, const PathEdge& r) { return slope_before(l.dir, r.dir); });
  LatticePath path;
  for (const auto& e : reduced) {
    if (!path.edges_.empty() && path.edges_.back().dir == e.dir) {
      path.edges_.back().mult += e.mult;
    } else {
      path.edges_.push_back(e);
    }
  }
  return path;
}

LatticePath LatticePath::from_vertices(std::span<const LatticePoint> vertices) {
  if (vertices.empty()) throw PreconditionError("a path needs at least one vertex");
  if (vertices.front().x != 0) throw PreconditionError("path must start on the y-axis");
  if (vertices.back().y != 0) throw PreconditionError("path must end on the x-axis");
  std::vector<PathEdge> raw;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    std::int64_t dx = vertices[i].x - vertices[i - 1].x;
    std::int64_t dy = vertices[i].y - vertices[i - 1].y;
    if (dx == 0 && dy == 0) continue;
    raw.push_back({{dx, -dy}, 1});
  }
  // Canonicalization sorts edges, so check the given order turns convexly first.
  for (std::size_t i = 1; i < raw.size(); ++i) {
    const auto& prev = raw[i - 1].dir;
    const auto& next = raw[i].dir;
    if (next.p < 0 || next.q < 0 || prev.p < 0 || prev.q < 0) continue;  // canonical() rejects
    if (prev.q * next.p > next.q * prev.p) {
      throw PreconditionError("vertices do not form a convex integral path");
    }
  }
  return canonical(raw);
}

std::int64_t LatticePath::total_multiplicity() const {
  std::int64_t m = 0;
  for (const auto& e : edges_) m += e.mult;
  return m;
}

std::vector<LatticePoint> LatticePath::vertices() const {
  std::vector<LatticePoint> out{{0, path_endpoints(*this).b}};
  for (const auto& e : edges_) {
    const auto& last = out.back();
    out.push_back({last.x + e.mult * e.dir.p, last.y - e.mult * e.dir.q});
  }
  return out;
}

PathEndpoints path_endpoints(const LatticePath& path) {
  PathEndpoints ends;
  for (const auto& e : path.edges()) {
    ends.a += e.mult * e.dir.p;
    ends.b += e.mult * e.dir.q;
  }
  return ends;
}

Rat polygon_area(std::span<const LatticePoint> polygon) {
  BigInt twice = 0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const auto& u = polygon[i];
    const auto& v = polygon[(i + 1) % polygon.size()];
    twice += BigInt(u.x) * v.y - BigInt(v.x) * u.y;
  }
  return Rat(abs(twice), BigInt(2));
}

Rat enclosed_area(const LatticePath& path) {
  std::vector<LatticePoint> polygon{{0, 0}};
  for (const auto& v : path.vertices()) polygon.push_back(v);
  return polygon_area(polygon);
}

std::int64_t lattice_count_direct(const LatticePath& path) {
  std::int64_t y = path_endpoints(path).b;
  std::int64_t count = y + 1;  // column x = 0
  for (const auto& e : path.edges()) {
    const auto [p, q] = e.dir;
    if (p > 0) {
      // Columns x+1 .. x+mult*p, height y - j*q/p on entry to each column.
      for (std::int64_t j = 1; j <= e.mult * p; ++j) {
        std::int64_t drop = (j * q + p - 1) / p;  // ceil(j*q/p)
        count += y - drop + 1;
      }
    }
    y -= e.mult * q;
  }
  return count;
}

PickCount lattice_count_pick(const LatticePath& path) {
  auto [a, b] = path_endpoints(path);
  if (a == 0 || b == 0) {
    std::int64_t direct = lattice_count_direct(path);
    return {direct, direct, true};
  }
  // Boundary: every path edge contributes its multiplicity (primitive
  // directions), the two axis segments contribute a and b.
  std::int64_t boundary = path.total_multiplicity() + a + b;
  Rat count = enclosed_area(path) + Rat(BigInt(boundary), BigInt(2)) + 1;
  if (!is_integer(count)) throw ConsistencyError("Pick count is not an integer");
  return {to_int64(numerator(count)), boundary, false};
}

}  // namespace echcap
