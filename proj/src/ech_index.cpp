#include "echcap/ech_index.hpp"

#include <map>
#include <set>

#include "echcap/errors.hpp"
#include "echcap/spectrum.hpp"

namespace echcap {

std::int64_t cz_from_rotation(const Rotation& rot) {
  if (rot.elliptic && is_integer(rot.value)) {
    throw PreconditionError("elliptic orbit with integer rotation number " +
                            to_string(rot.value) + " is degenerate");
  }
  return to_int64(floor(rot.value) + ceil(rot.value));
}

std::int64_t ellipsoid_index(const Rat& a, const Rat& b, std::int64_t m1, std::int64_t m2) {
  if (a <= 0 || b <= 0) throw PreconditionError("ellipsoid parameters must be positive");
  if (m1 < 0 || m2 < 0) throw PreconditionError("multiplicities must be nonnegative");
  BigInt sum = BigInt(m1) + m2 + BigInt(m1) * m2;
  const Rat ab = a / b;
  const Rat ba = b / a;
  for (std::int64_t j = 1; j <= m1; ++j) sum += floor(ab * j);
  for (std::int64_t j = 1; j <= m2; ++j) sum += floor(ba * j);
  return to_int64(2 * sum);
}

Rat ellipsoid_action(const Rat& a, const Rat& b, std::int64_t m1, std::int64_t m2) {
  if (m1 < 0 || m2 < 0) throw PreconditionError("multiplicities must be nonnegative");
  return a * m1 + b * m2;
}

void validate_orbit_set(const OrbitSet& alpha) {
  const auto n = alpha.orbits.size();
  for (const auto& o : alpha.orbits) {
    if (o.multiplicity < 1) {
      throw PreconditionError("orbit " + o.label + " has multiplicity < 1");
    }
  }
  if (n <= 1 && alpha.linking.empty()) return;
  if (alpha.linking.size() != n) throw PreconditionError("linking matrix has the wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha.linking[i].size() != n) throw PreconditionError("linking matrix is not square");
    for (std::size_t j = 0; j < i; ++j) {
      if (alpha.linking[i][j] != alpha.linking[j][i]) {
        throw PreconditionError("linking matrix is not symmetric at (" + std::to_string(i) +
                                ", " + std::to_string(j) + ")");
      }
    }
  }
}

std::int64_t star_shaped_index(const OrbitSet& alpha) {
  validate_orbit_set(alpha);
  BigInt total = 0;
  const auto n = alpha.orbits.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& o = alpha.orbits[i];
    BigInt m = o.multiplicity;
    total += (m * m + m) * o.c_tau;
    total += m * m * o.sl;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) total += m * alpha.orbits[j].multiplicity * alpha.linking[i][j];
    }
    for (std::int64_t k = 1; k <= o.multiplicity; ++k) {
      std::optional<std::int64_t> cz = o.cz_of_cover ? o.cz_of_cover(k) : std::nullopt;
      if (!cz) {
        throw PreconditionError("orbit " + o.label + " is missing CZ of its " +
                                std::to_string(k) + "-fold cover");
      }
      total += *cz;
    }
  }
  return to_int64(total);
}

OrbitSet ellipsoid_orbit_set(const Rat& a, const Rat& b, std::int64_t m1, std::int64_t m2) {
  if (a <= 0 || b <= 0) throw PreconditionError("ellipsoid parameters must be positive");
  auto cz_family = [](Rat ratio) {
    return [ratio](std::int64_t j) -> std::optional<std::int64_t> {
      return to_int64(2 * floor(ratio * j) + 1);
    };
  };
  OrbitSet alpha;
  if (m1 > 0) alpha.orbits.push_back({"gamma1", 1, -1, cz_family(a / b), m1});
  if (m2 > 0) alpha.orbits.push_back({"gamma2", 1, -1, cz_family(b / a), m2});
  const auto n = alpha.orbits.size();
  alpha.linking.assign(n, std::vector<std::int64_t>(n, 0));
  if (n == 2) alpha.linking[0][1] = alpha.linking[1][0] = 1;
  return alpha;
}

LatticePath orbit_set_to_path(const std::vector<OrbitLabel>& orbits) {
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  std::vector<PathEdge> edges;
  for (const auto& o : orbits) {
    if (o.p < 0 || o.q < 0 || (o.p == 0 && o.q == 0)) {
      throw PreconditionError("orbit label must be nonnegative and nonzero");
    }
    if (gcd(o.p, o.q) != 1) throw PreconditionError("orbit label is not coprime");
    if (o.multiplicity < 1) throw PreconditionError("orbit multiplicity must be positive");
    if (!seen.insert({o.p, o.q}).second) {
      throw PreconditionError("duplicate orbit label (" + std::to_string(o.p) + ", " +
                              std::to_string(o.q) + ")");
    }
    edges.push_back({{o.q, o.p}, o.multiplicity});
  }
  return LatticePath::canonical(edges);
}

IndexBounds path_index_bounds(const LatticePath& path) {
  auto [a, b] = path_endpoints(path);
  Rat twice_area = 2 * enclosed_area(path);
  IndexBounds out;
  out.lower = to_int64(numerator(twice_area)) + a + b;
  out.upper = out.lower + path.total_multiplicity();
  out.lattice_count = lattice_count_direct(path);
  if (out.upper != 2 * (out.lattice_count - 1)) {
    throw ConsistencyError("index upper bound " + std::to_string(out.upper) +
                           " differs from 2(L - 1) = " +
                           std::to_string(2 * (out.lattice_count - 1)));
  }
  return out;
}

IndexScanReport index_action_scan(const Rat& a, const Rat& b, std::int64_t m_max) {
  if (a <= 0 || b <= 0) throw PreconditionError("ellipsoid parameters must be positive");
  if (m_max < 0) throw PreconditionError("scan bound must be nonnegative");
  const Rat ab = a / b;
  const Rat ba = b / a;
  for (std::int64_t j = 1; j <= m_max; ++j) {
    if (is_integer(ab * j)) {
      throw PreconditionError(std::to_string(j) + " a/b = " + to_string(ab * j) +
                              " is an integer");
    }
    if (is_integer(ba * j)) {
      throw PreconditionError(std::to_string(j) + " b/a = " + to_string(ba * j) +
                              " is an integer");
    }
  }
  const Rat top = ellipsoid_action(a, b, m_max, m_max);

  // Rank every orbit set up to the top action; any tie makes the rank of an
  // action ambiguous, which the irrationality hypothesis rules out.
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> rank;
  NkGenerator gen(a, b);
  std::optional<std::pair<Rat, OrbitPair>> prev;
  for (std::int64_t k = 0;; ++k) {
    auto cur = gen.next();
    if (cur.first > top) break;
    if (prev && prev->first == cur.first) {
      throw PreconditionError(
          "action tie " + to_string(cur.first) + " between (" + std::to_string(prev->second.m) +
          ", " + std::to_string(prev->second.n) + ") and (" + std::to_string(cur.second.m) +
          ", " + std::to_string(cur.second.n) + ")");
    }
    rank[{cur.second.m, cur.second.n}] = k;
    prev = cur;
  }

  IndexScanReport report;
  report.all_pass = true;
  for (std::int64_t m1 = 0; m1 <= m_max; ++m1) {
    for (std::int64_t m2 = 0; m2 <= m_max; ++m2) {
      IndexScanRow row;
      row.m1 = m1;
      row.m2 = m2;
      row.action = ellipsoid_action(a, b, m1, m2);
      row.index = ellipsoid_index(a, b, m1, m2);
      row.rank = rank.at({m1, m2});
      row.triangle_count = triangle_lattice_count(a, b, row.action);
      row.ok = row.index == 2 * row.rank && row.index == 2 * (row.triangle_count - 1);
      report.all_pass = report.all_pass && row.ok;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace echcap
