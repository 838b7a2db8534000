#include <doctest.h>

#include <map>
#include <set>
#include <tuple>

#include "echcap/domains.hpp"
#include "echcap/errors.hpp"
#include "echcap/lattice_path.hpp"
#include "echcap/path_search.hpp"
#include "oracles.hpp"

using namespace echcap;

namespace {

LatticePath path(std::initializer_list<PathEdge> edges) {
  std::vector<PathEdge> v(edges);
  return LatticePath::canonical(v);
}

const LatticePath kEmpty{};
const LatticePath kDiag1 = path({{{1, 1}, 1}});
const LatticePath kDiag2 = path({{{1, 1}, 2}});
const LatticePath kSquare = path({{{1, 0}, 1}, {{0, 1}, 1}});

using Key = std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>>;

Key key(const LatticePath& p) {
  Key k;
  for (const auto& e : p.edges()) k.emplace_back(e.dir.p, e.dir.q, e.mult);
  return k;
}

}  // namespace

TEST_CASE("path endpoints") {
  CHECK(path_endpoints(kEmpty) == PathEndpoints{0, 0});
  CHECK(path_endpoints(kDiag2) == PathEndpoints{2, 2});
  CHECK(path_endpoints(path({{{1, 0}, 3}, {{0, 1}, 2}})) == PathEndpoints{3, 2});
}

TEST_CASE("enclosed area") {
  CHECK(enclosed_area(kEmpty) == 0);
  CHECK(enclosed_area(kDiag1) == Rat(1) / 2);
  CHECK(enclosed_area(kSquare) == 1);
  CHECK(enclosed_area(path({{{1, 0}, 2}, {{0, 1}, 1}})) == 2);
}

TEST_CASE("direct and Pick lattice counts") {
  CHECK(lattice_count_direct(kEmpty) == 1);
  CHECK(lattice_count_direct(kDiag1) == 3);
  CHECK(lattice_count_direct(kDiag2) == 6);
  CHECK(lattice_count_direct(kSquare) == 4);
  CHECK(lattice_count_pick(kDiag1).count == 3);
  CHECK(lattice_count_pick(kDiag2).count == 6);
  CHECK(lattice_count_pick(kSquare).count == 4);
  CHECK_FALSE(lattice_count_pick(kSquare).degenerate);

  auto axis = lattice_count_pick(path({{{1, 0}, 3}}));
  CHECK(axis.degenerate);
  CHECK(axis.count == 4);
  CHECK(lattice_count_direct(path({{{0, 1}, 2}})) == 3);
}

TEST_CASE("canonical form reduces, sorts and merges") {
  auto p = path({{{0, 2}, 1}, {{2, 2}, 1}, {{1, 0}, 1}, {{1, 1}, 1}});
  std::vector<PathEdge> expect{{{1, 0}, 1}, {{1, 1}, 3}, {{0, 1}, 2}};
  CHECK(p.edges() == expect);
  CHECK(p.total_multiplicity() == 6);
  CHECK(LatticePath::canonical(p.edges()) == p);
  CHECK_THROWS_AS(path({{{0, 0}, 1}}), PreconditionError);
  CHECK_THROWS_AS(path({{{1, 0}, 0}}), PreconditionError);
}

TEST_CASE("vertices and from_vertices invert each other") {
  auto p = path({{{1, 0}, 2}, {{2, 1}, 1}, {{0, 1}, 3}});
  auto v = p.vertices();
  std::vector<LatticePoint> expect{{0, 4}, {2, 4}, {4, 3}, {4, 0}};
  CHECK(v == expect);
  CHECK(LatticePath::from_vertices(v) == p);
  std::vector<LatticePoint> collinear{{0, 2}, {1, 1}, {2, 0}};
  CHECK(LatticePath::from_vertices(collinear) == kDiag2);
  std::vector<LatticePoint> late_flat{{0, 2}, {1, 0}, {3, 0}};
  CHECK_THROWS_AS(LatticePath::from_vertices(late_flat), PreconditionError);
  std::vector<LatticePoint> bad{{0, 2}, {1, 0}, {2, 1}};
  CHECK_THROWS_AS(LatticePath::from_vertices(bad), PreconditionError);
}

TEST_CASE("random corpus: counts agree, area splits, boundary bound") {
  for (const auto& p : oracle::path_corpus(oracle::test_seed(), 200)) {
    auto direct = lattice_count_direct(p);
    CHECK(direct == lattice_count_pick(p).count);
    auto [a, b] = path_endpoints(p);
    CHECK(direct >= a + b + 1);

    // Split every multiplicity-m edge into m unit edges before canonicalizing.
    std::vector<PathEdge> split;
    for (const auto& e : p.edges()) {
      for (std::int64_t i = 0; i < e.mult; ++i) split.push_back({e.dir, 1});
    }
    CHECK(enclosed_area(LatticePath::canonical(split)) == enclosed_area(p));

    // Independent point-by-point count.
    std::vector<oracle::Vec> vecs;
    for (const auto& e : p.edges()) vecs.push_back({e.dir.p * e.mult, -e.dir.q * e.mult});
    CHECK(oracle::count_points(vecs) == direct);
  }
}

TEST_CASE("primitive directions are coprime and slope sorted") {
  auto dirs = primitive_directions(4, 3);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    CHECK(gcd(dirs[i].p, dirs[i].q) == 1);
    if (i) CHECK(slope_before(dirs[i - 1], dirs[i]));
  }
  CHECK(dirs.front() == Direction{1, 0});
  CHECK(dirs.back() == Direction{0, 1});
}

TEST_CASE("enumerate_paths") {
  auto omega = ToricProfile::triangle(2, 3);
  auto len = [&](const LatticePath& p) { return omega_length(omega, p); };
  const Rat rho = norm_floor(omega);

  SUBCASE("nonpositive bound gives nothing") {
    int n = 0;
    enumerate_paths(0, rho, len, [&](const LatticePath&, const Rat&) { return ++n, true; });
    CHECK(n == 0);
  }
  SUBCASE("tiny bound gives only the empty path") {
    std::vector<LatticePath> seen;
    enumerate_paths(Rat(1) / 2, rho, len, [&](const LatticePath& p, const Rat&) {
      seen.push_back(p);
      return true;
    });
    REQUIRE(seen.size() == 1);
    CHECK(seen[0].empty());
  }
  SUBCASE("bound 7/2 on the (2, 3) triangle contains the diagonal of length 3") {
    std::map<Key, Rat> seen;
    enumerate_paths(Rat(7) / 2, rho, len, [&](const LatticePath& p, const Rat& l) {
      seen[key(p)] = l;
      return true;
    });
    REQUIRE(seen.count(key(kDiag1)) == 1);
    CHECK(seen[key(kDiag1)] == 3);
    CHECK(seen.size() == 4);  // empty, (1,0), (0,-1), (1,-1)
  }
}

TEST_CASE("pruning soundness against unpruned enumeration") {
  struct Case {
    ToricProfile omega;
    Rat bound;
  };
  std::vector<Case> cases{{ToricProfile::triangle(2, 3), 10},
                          {ToricProfile::rectangle(1, 1), 5},
                          {ToricProfile::triangle(1, Rat(89) / 55), 6},
                          {ToricProfile::validate({{0, 2}, {1, 2}, {Rat(5) / 2, 1}, {3, 0}}), 9}};
  for (const auto& c : cases) {
    auto len = [&](const LatticePath& p) { return omega_length(c.omega, p); };
    const Rat rho = norm_floor(c.omega);
    std::map<Key, int> seen;
    enumerate_paths(c.bound, rho, len, [&](const LatticePath& p, const Rat& l) {
      CHECK(l == len(p));
      CHECK(l < c.bound);
      ++seen[key(p)];
      return true;
    });
    for (const auto& [edges, times] : seen) CHECK(times == 1);

    // Everything in a generous box, no pruning.
    const auto box = static_cast<std::int64_t>(floor(c.bound / rho));
    std::set<Key> expect;
    oracle::all_chains(box, box, [&](const std::vector<oracle::Vec>& chain) {
      auto p = oracle::to_path(chain);
      if (len(p) < c.bound) expect.insert(key(p));
    });
    CHECK(seen.size() == expect.size());
    for (const auto& e : expect) CHECK(seen.count(e) == 1);
  }
}
