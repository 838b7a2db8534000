#include <algorithm>
#include <optional>

#include "echcap/errors.hpp"
#include "echcap/path_search.hpp"
#include "echcap/spectrum.hpp"

namespace echcap {
namespace {

// Lattice column heights of t * Omega for x = 0 .. floor(t * a).
std::vector<std::int64_t> scaled_heights(const ToricProfile& omega, const Rat& t) {
  std::vector<std::int64_t> h;
  std::int64_t columns = to_int64(floor(t * omega.width()));
  for (std::int64_t x = 0; x <= columns; ++x) {
    h.push_back(to_int64(floor(t * omega.height_at(Rat(BigInt(x)) / t))));
  }
  return h;
}

std::int64_t scaled_count(const ToricProfile& omega, const Rat& t) {
  std::int64_t c = 0;
  for (auto y : scaled_heights(omega, t)) c += y + 1;
  return c;
}

struct Best {
  std::optional<Rat> length;
  std::vector<PathEdge> edges;

  void offer(const Rat& len, std::span<const PathEdge> path) {
    if (!length || len < *length) {
      length = len;
      edges.assign(path.begin(), path.end());
    }
  }
};

struct PassResult {
  std::vector<Best> exact;  // exact[c] : paths enclosing exactly c + 1 points, c <= k_max
  Best overflow;            // paths enclosing more than k_max + 1 points
};

PassResult search_pass(const ToricProfile& omega, std::int64_t k_max, const Rat& bound,
                       const ToricSearchOptions& options) {
  const Rat e1 = dual_norm(omega, 1, 0);
  const Rat e2 = dual_norm(omega, 0, 1);
  SearchLimits limits{to_int64(floor(bound / e2)), to_int64(floor(bound / e1)), e1};
  std::vector<WeightedDirection> dirs;
  for (const auto& d : primitive_directions(limits.max_a, limits.max_b)) {
    Rat cost = dual_norm(omega, d.q, d.p);
    if (cost <= bound) dirs.push_back({d, std::move(cost)});
  }
  ConvexPathSearch search(std::move(dirs), limits, bound, BoundMode::kInclusive);
  search.set_node_budget(options.node_budget);

  PassResult out;
  out.exact.resize(static_cast<std::size_t>(k_max) + 1);
  search.run([&](const PathVisit& v) {
    std::int64_t k = v.lattice_count - 1;
    if (k <= k_max) {
      out.exact[static_cast<std::size_t>(k)].offer(v.length, v.edges);
      if (k == k_max) search.tighten(v.length);
    } else {
      out.overflow.offer(v.length, v.edges);
      search.tighten(v.length);
    }
    return true;
  });
  return out;
}

bool all_exact_found(const PassResult& r) {
  return std::all_of(r.exact.begin(), r.exact.end(),
                     [](const Best& b) { return b.length.has_value(); });
}

}  // namespace

LatticePath greedy_toric_path(const ToricProfile& omega, std::int64_t k) {
  if (k < 0) throw PreconditionError("k must be nonnegative");
  if (k == 0) return {};
  const std::int64_t need = k + 1;
  Rat hi = 1;
  while (scaled_count(omega, hi) < need) hi *= 2;
  Rat lo = hi / 2;
  while (scaled_count(omega, lo) >= need) {
    hi = lo;
    lo /= 2;
  }
  for (int i = 0; i < 16; ++i) {
    Rat mid = (lo + hi) / 2;
    if (scaled_count(omega, mid) >= need) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  // Upper hull of the column tops; the lattice points under it are exactly
  // those of hi * Omega since that region is convex.
  auto h = scaled_heights(omega, hi);
  std::vector<LatticePoint> hull;
  for (std::int64_t x = 0; x < static_cast<std::int64_t>(h.size()); ++x) {
    LatticePoint pt{x, h[static_cast<std::size_t>(x)]};
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& a = hull.back();
      std::int64_t cross = (a.x - o.x) * (pt.y - o.y) - (a.y - o.y) * (pt.x - o.x);
      if (cross < 0) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  if (hull.back().y > 0) hull.push_back({hull.back().x, 0});
  return LatticePath::from_vertices(hull);
}

std::vector<ToricCapacity> toric_capacities(const ToricProfile& omega, std::int64_t k_max,
                                            const ToricSearchOptions& options) {
  if (k_max < 0) throw PreconditionError("k_max must be nonnegative");
  const Rat axis_bound = std::min(dual_norm(omega, 1, 0), dual_norm(omega, 0, 1)) * k_max;
  const Rat greedy_bound = omega_length(omega, greedy_toric_path(omega, k_max));

  // The axis segment of length k encloses exactly k + 1 points, so the axis
  // bound admits an exact-count path for every k <= k_max. The greedy bound
  // is usually far tighter; fall back only if it misses an exact-count path.
  PassResult pass = search_pass(omega, k_max, std::min(greedy_bound, axis_bound), options);
  if (!all_exact_found(pass) && greedy_bound < axis_bound) {
    pass = search_pass(omega, k_max, axis_bound, options);
  }
  if (!all_exact_found(pass)) {
    throw ConsistencyError(
        "some k has no path enclosing exactly k + 1 points at or below the minimum over >= k + 1");
  }

  std::vector<ToricCapacity> out(static_cast<std::size_t>(k_max) + 1);
  // Suffix minimum over counts >= k + 1; ties keep the smaller count.
  Best running = pass.overflow;
  for (std::int64_t k = k_max; k >= 0; --k) {
    const Best& exact = pass.exact[static_cast<std::size_t>(k)];
    if (!running.length || *exact.length <= *running.length) running = exact;
    auto& cap = out[static_cast<std::size_t>(k)];
    cap.value = *exact.length;
    cap.witness = LatticePath::canonical(exact.edges);
    cap.value_at_least = *running.length;
    cap.witness_at_least = LatticePath::canonical(running.edges);
    if (cap.value != cap.value_at_least) {
      throw ConsistencyError("k = " + std::to_string(k) + ": min over L = k+1 is " +
                             to_string(cap.value) + " but min over L >= k+1 is " +
                             to_string(cap.value_at_least));
    }
  }
  return out;
}

ToricCapacity toric_capacity(const ToricProfile& omega, std::int64_t k,
                             const ToricSearchOptions& options) {
  return toric_capacities(omega, k, options).back();
}

}  // namespace echcap
