#include "echcap/path_search.hpp"

#include <algorithm>

#include "echcap/errors.hpp"

namespace echcap {

ConvexPathSearch::ConvexPathSearch(std::vector<WeightedDirection> directions, SearchLimits limits,
                                   Rat bound, BoundMode mode)
    : directions_(std::move(directions)),
      limits_(std::move(limits)),
      bound_(std::move(bound)),
      mode_(mode) {
  std::stable_sort(directions_.begin(), directions_.end(),
                   [](const WeightedDirection& l, const WeightedDirection& r) {
                     return slope_before(l.dir, r.dir);
                   });
  for (const auto& d : directions_) {
    if (d.cost <= 0) throw PreconditionError("direction costs must be positive");
  }
}

void ConvexPathSearch::tighten(const Rat& bound) {
  if (bound < bound_) bound_ = bound;
}

bool ConvexPathSearch::within(const Rat& lower) const {
  return mode_ == BoundMode::kStrict ? lower < bound_ : lower <= bound_;
}

void ConvexPathSearch::run(const Visitor& visit) {
  visit_ = &visit;
  stopped_ = false;
  for (std::int64_t b = 0; b <= limits_.max_b && !stopped_; ++b) {
    Rat lower = limits_.drop_rate * b;
    if (!within(lower)) break;
    stack_.clear();
    extend(0, 0, b, Rat(0), b + 1);
  }
  visit_ = nullptr;
}

void ConvexPathSearch::extend(std::size_t next, std::int64_t x, std::int64_t y,
                              const Rat& length, std::int64_t count) {
  ++nodes_;
  if (budget_ != 0 && nodes_ > budget_) {
    throw UnavailableError("path search exceeded its node budget");
  }
  if (y == 0) {
    if (within(length) && !(*visit_)(PathVisit{stack_, length, count})) stopped_ = true;
    // Only a leading horizontal edge may follow a point on the x-axis.
    if (!stack_.empty()) return;
  }
  for (std::size_t i = next; i < directions_.size() && !stopped_; ++i) {
    const auto& [dir, cost] = directions_[i];
    if (dir.q > y || x + dir.p > limits_.max_a) continue;
    if (dir.q == 0 && !stack_.empty()) continue;
    Rat edge_length = length;
    std::int64_t edge_count = count;
    std::int64_t nx = x;
    std::int64_t ny = y;
    for (std::int64_t m = 1;; ++m) {
      // Columns gained by one more copy of the edge, heights measured on entry.
      for (std::int64_t j = 1; j <= dir.p; ++j) {
        std::int64_t drop = (j * dir.q + dir.p - 1) / dir.p;
        edge_count += ny - drop + 1;
      }
      nx += dir.p;
      ny -= dir.q;
      if (ny < 0 || nx > limits_.max_a) break;
      edge_length += cost;
      if (!within(edge_length + limits_.drop_rate * ny)) break;
      stack_.push_back({dir, m});
      extend(i + 1, nx, ny, edge_length, edge_count);
      stack_.pop_back();
      if (stopped_) return;
    }
  }
}

std::vector<Direction> primitive_directions(std::int64_t max_p, std::int64_t max_q) {
  std::vector<Direction> dirs;
  for (std::int64_t p = 0; p <= max_p; ++p) {
    for (std::int64_t q = 0; q <= max_q; ++q) {
      if ((p != 0 || q != 0) && gcd(p, q) == 1) dirs.push_back({p, q});
    }
  }
  std::stable_sort(dirs.begin(), dirs.end(), slope_before);
  return dirs;
}

void enumerate_paths(const Rat& max_length, const Rat& rho,
                     const std::function<Rat(const LatticePath&)>& omega_length,
                     const std::function<bool(const LatticePath&, const Rat&)>& visit) {
  if (max_length <= 0) return;
  if (rho <= 0) throw PreconditionError("norm floor rho must be positive");
  std::int64_t extent = to_int64(floor(max_length / rho));
  std::vector<WeightedDirection> weighted;
  for (const auto& d : primitive_directions(extent, extent)) {
    PathEdge single{d, 1};
    Rat cost = omega_length(LatticePath::canonical({&single, 1}));
    if (cost < max_length) weighted.push_back({d, std::move(cost)});
  }
  ConvexPathSearch search(std::move(weighted), {extent, extent, rho}, max_length,
                          BoundMode::kStrict);
  search.run([&](const PathVisit& v) {
    return visit(LatticePath::canonical(v.edges), v.length);
  });
}

}  // namespace echcap
