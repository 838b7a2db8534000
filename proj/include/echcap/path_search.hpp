#pragma once

// Bounded enumeration of convex integral paths by depth-first branch and
// bound over slope-ordered primitive directions.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "echcap/lattice_path.hpp"
#include "echcap/rational.hpp"

namespace echcap {

struct WeightedDirection {
  Direction dir;
  Rat cost;  // length contributed by one unit of multiplicity, > 0
};

// A complete path reached by the search. `edges` is already canonical.
struct PathVisit {
  std::span<const PathEdge> edges;
  const Rat& length;
  std::int64_t lattice_count;
};

enum class BoundMode {
  kStrict,     // visit paths with length < bound
  kInclusive,  // visit paths with length <= bound
};

struct SearchLimits {
  std::int64_t max_a = 0;
  std::int64_t max_b = 0;
  // Any completion of a partial path that still has to descend h units costs
  // at least h * drop_rate.
  Rat drop_rate;
};

// Visits every convex integral path within the limits whose length meets
// the bound. Order: start height b ascending, then directions by decreasing
// slope, multiplicities ascending, prefixes before extensions. The visitor
// may tighten the bound while the search runs; returning false stops it.
class ConvexPathSearch {
 public:
  using Visitor = std::function<bool(const PathVisit&)>;

  ConvexPathSearch(std::vector<WeightedDirection> directions, SearchLimits limits, Rat bound,
                   BoundMode mode);

  void run(const Visitor& visit);

  const Rat& bound() const { return bound_; }
  void tighten(const Rat& bound);

  std::uint64_t nodes() const { return nodes_; }
  // Throws UnavailableError from run() once more than `budget` nodes were expanded.
  void set_node_budget(std::uint64_t budget) { budget_ = budget; }

 private:
  bool within(const Rat& lower) const;
  void extend(std::size_t next, std::int64_t x, std::int64_t y, const Rat& length,
              std::int64_t count);

  std::vector<WeightedDirection> directions_;
  SearchLimits limits_;
  Rat bound_;
  BoundMode mode_;
  const Visitor* visit_ = nullptr;
  std::vector<PathEdge> stack_;
  std::uint64_t nodes_ = 0;
  std::uint64_t budget_ = 0;
  bool stopped_ = false;
};

// All primitive directions (p, -q) with p <= max_p, q <= max_q, sorted by
// decreasing slope.
std::vector<Direction> primitive_directions(std::int64_t max_p, std::int64_t max_q);

// Streams every canonical convex integral path with omega_length < max_length.
// `rho` must satisfy omega_length(single edge (p,-q)) >= rho * (p + q); it
// bounds a, b <= max_length / rho. Empty stream when max_length <= 0.
void enumerate_paths(const Rat& max_length, const Rat& rho,
                     const std::function<Rat(const LatticePath&)>& omega_length,
                     const std::function<bool(const LatticePath&, const Rat&)>& visit);

}  // namespace echcap
