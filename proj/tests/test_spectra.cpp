#include <doctest.h>

#include <random>
#include <thread>

#include "echcap/errors.hpp"
#include "echcap/spectrum.hpp"
#include "oracles.hpp"

using namespace echcap;

namespace {

std::vector<Rat> values(const std::vector<std::pair<Rat, OrbitPair>>& seq) {
  std::vector<Rat> v;
  for (const auto& e : seq) v.push_back(e.first);
  return v;
}

std::vector<Rat> ints(std::initializer_list<int> xs) {
  std::vector<Rat> v;
  for (int x : xs) v.push_back(x);
  return v;
}

// Brute-force toric capacities c_0..c_kmax: minimum length over every chain
// in the box that encloses at least k + 1 points.
std::vector<Rat> brute_toric(const ToricProfile& omega, std::int64_t k_max, std::int64_t box) {
  std::vector<std::optional<Rat>> best(static_cast<std::size_t>(k_max) + 1);
  oracle::all_chains(box, box, [&](const std::vector<oracle::Vec>& chain) {
    auto count = oracle::count_points(chain);
    Rat l = omega_length(omega, oracle::to_path(chain));
    for (std::int64_t k = 0; k <= k_max && k + 1 <= count; ++k) {
      auto& b = best[static_cast<std::size_t>(k)];
      if (!b || l < *b) b = l;
    }
  });
  std::vector<Rat> out;
  for (const auto& b : best) out.push_back(*b);
  return out;
}

}  // namespace

TEST_CASE("nk_sequence") {
  CHECK(values(nk_sequence(2, 3, 10)) == ints({0, 2, 3, 4, 5, 6, 6, 7, 8, 8, 9}));
  CHECK(values(nk_sequence(1, 1, 4)) == ints({0, 1, 1, 2, 2}));
  auto zero = nk_sequence(Rat(7) / 3, 5, 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].first == 0);
  CHECK(zero[0].second == OrbitPair{0, 0});

  // Every pair once, ties ordered lexicographically.
  auto seq = nk_sequence(2, 3, 10);
  CHECK(seq[5].second == OrbitPair{0, 2});
  CHECK(seq[6].second == OrbitPair{3, 0});
  for (const auto& [v, w] : seq) CHECK(v == Rat(2) * w.m + Rat(3) * w.n);
}

TEST_CASE("nk_sequence against sorted enumeration") {
  std::mt19937_64 rng(oracle::test_seed() + 2);
  for (int i = 0; i < 10; ++i) {
    Rat a = oracle::random_rat(rng, 9, 6), b = oracle::random_rat(rng, 9, 6);
    CAPTURE(to_string(a));
    CAPTURE(to_string(b));
    CHECK(values(nk_sequence(a, b, 120)) == oracle::nk_values(a, b, 120));
  }
}

TEST_CASE("nk_via_lattice") {
  CHECK(nk_via_lattice(2, 3, 1) == 2);
  CHECK(nk_via_lattice(2, 3, 6) == 6);
  CHECK(nk_via_lattice(1, 1, 3) == 2);
  CHECK(nk_via_lattice(2, 3, 0) == 0);
  CHECK(triangle_lattice_count(2, 3, 2) == 2);
  CHECK(triangle_lattice_count(1, 1, 2) == 6);
  auto seq = nk_sequence(Rat(3) / 2, Rat(11) / 7, 150);
  for (std::int64_t k = 1; k <= 150; ++k) {
    CHECK(nk_via_lattice(Rat(3) / 2, Rat(11) / 7, k) == seq[static_cast<std::size_t>(k)].first);
  }
}

TEST_CASE("symmetry and conformality of N_k") {
  for (auto [a, b] : std::vector<std::pair<Rat, Rat>>{{2, 3}, {1, Rat(89) / 55}, {Rat(5) / 4, 7}}) {
    auto base = values(nk_sequence(a, b, 100));
    CHECK(values(nk_sequence(b, a, 100)) == base);
    for (Rat r : {Rat(1) / 2, Rat(2), Rat(7) / 3}) {
      auto scaled = values(nk_sequence(r * a, r * b, 100));
      for (std::size_t k = 0; k < base.size(); ++k) CHECK(scaled[k] == r * base[k]);
    }
  }
}

TEST_CASE("ball capacity") {
  CHECK(ball_capacity(1, 0) == 0);
  std::vector<Rat> first;
  for (int k = 0; k <= 10; ++k) first.push_back(ball_capacity(1, k));
  CHECK(first == ints({0, 1, 1, 2, 2, 2, 3, 3, 3, 3, 4}));
  CHECK(ball_capacity(5, 3) == 10);
  CHECK(ball_capacity(5, 3) == nk_sequence(5, 5, 3)[3].first);
  auto seq = nk_sequence(Rat(3) / 2, Rat(3) / 2, 500);
  for (std::int64_t k = 0; k <= 500; ++k) {
    auto d = ball_degree(k);
    CHECK(d * d + d <= 2 * k);
    CHECK(2 * k <= d * d + 3 * d);
    CHECK(ball_capacity(Rat(3) / 2, k) == seq[static_cast<std::size_t>(k)].first);
  }
  CHECK(ball_degree(std::int64_t{1000000000000}) == 1414213);
}

TEST_CASE("toric capacity examples") {
  auto tri = ToricProfile::triangle(2, 3);
  auto c2 = toric_capacity(tri, 2);
  CHECK(c2.value == 3);
  CHECK(c2.witness.edges() == std::vector<PathEdge>{{{1, 1}, 1}});
  CHECK(lattice_count_direct(c2.witness) == 3);

  auto c0 = toric_capacity(ToricProfile::rectangle(3, 1), 0);
  CHECK(c0.value == 0);
  CHECK(c0.witness.empty());

  auto sq1 = toric_capacity(ToricProfile::rectangle(1, 1), 1);
  CHECK(sq1.value == 1);
  CHECK(sq1.witness.total_multiplicity() == 1);
  auto [a, b] = path_endpoints(sq1.witness);
  CHECK(a * b == 0);
}

TEST_CASE("toric capacities against brute force") {
  std::vector<ToricProfile> profiles{
      ToricProfile::rectangle(1, 1), ToricProfile::rectangle(1, 2),
      ToricProfile::validate({{0, 2}, {1, 2}, {Rat(5) / 2, 1}, {3, 0}}),
      ToricProfile::validate({{0, Rat(3) / 2}, {Rat(4) / 3, 1}, {2, 0}})};
  for (const auto& omega : profiles) {
    auto caps = toric_capacities(omega, 6);
    // Lengths of minimizers are at most 6 min(e1, e2), so a <= 6 min(e1, e2) / e2
    // and b <= 6 min(e1, e2) / e1 are both at most 6.
    auto brute = brute_toric(omega, 6, 6);
    for (std::int64_t k = 0; k <= 6; ++k) {
      const auto& c = caps[static_cast<std::size_t>(k)];
      CAPTURE(k);
      CHECK(c.value == c.value_at_least);
      CHECK(omega_length(omega, c.witness) == c.value);
      CHECK(lattice_count_direct(c.witness) == k + 1);
      CHECK(lattice_count_direct(c.witness_at_least) >= k + 1);
      CHECK(c.value == brute[static_cast<std::size_t>(k)]);
    }
  }
}

TEST_CASE("toric on the (2, 3) triangle matches N_k") {
  auto caps = toric_capacities(ToricProfile::triangle(2, 3), 20);
  auto nk = nk_sequence(2, 3, 20);
  for (std::size_t k = 0; k <= 20; ++k) CHECK(caps[k].value == nk[k].first);
}

TEST_CASE("node budget makes a toric spectrum unavailable") {
  ToricSearchOptions tight{5};
  CHECK_THROWS_AS(toric_capacities(ToricProfile::triangle(2, 3), 10, tight), UnavailableError);
  auto s = Spectrum::toric(ToricProfile::triangle(2, 3), tight);
  CHECK_THROWS_AS(union_capacity({s, Spectrum::ball(Ball(1))}, 10), UnavailableError);
}

TEST_CASE("Spectrum providers: monotone, c_0 = 0 < c_1, witnesses reproduce values") {
  std::vector<Spectrum> all{
      Spectrum::ellipsoid(Ellipsoid(2, 3)), Spectrum::ball(Ball(Rat(3) / 2)),
      Spectrum::toric(ToricProfile::rectangle(1, 2)),
      Spectrum::disjoint_union({Spectrum::ball(Ball(1)), Spectrum::ellipsoid(Ellipsoid(1, 2))})};
  for (const auto& s : all) {
    auto entries = s.prefix(25);
    REQUIRE(entries.size() == 26);
    CHECK(entries[0].value == 0);
    CHECK(entries[1].value > 0);
    for (std::size_t k = 0; k < entries.size(); ++k) {
      if (k) CHECK(entries[k - 1].value <= entries[k].value);
      CHECK(witness_value(s.domain(), entries[k].witness) == entries[k].value);
    }
    CHECK(s.value(40) >= entries.back().value);
  }
}

TEST_CASE("union capacity") {
  auto b1 = Spectrum::ball(Ball(1));
  auto two = union_capacity({b1, b1}, 2);
  CHECK(two.value == 2);
  CHECK(two.partition == std::vector<std::int64_t>{1, 1});
  CHECK(union_capacity({b1, Spectrum::ellipsoid(Ellipsoid(2, 3))}, 0).value == 0);
  CHECK(union_capacity({Spectrum::ellipsoid(Ellipsoid(2, 3))}, 5).value == 6);
  CHECK_THROWS_AS(union_capacity({}, 1), PreconditionError);

  std::vector<Spectrum> parts{b1, Spectrum::ellipsoid(Ellipsoid(2, 3)),
                              Spectrum::ellipsoid(Ellipsoid(1, 2))};
  std::vector<std::vector<Rat>> tables;
  for (const auto& p : parts) {
    std::vector<Rat> row;
    for (const auto& e : p.prefix(15)) row.push_back(e.value);
    tables.push_back(row);
  }
  for (std::int64_t k = 0; k <= 15; ++k) {
    auto u = union_capacity(parts, k);
    CHECK(u.value == oracle::union_value(tables, k));
    std::int64_t total = 0;
    Rat sum = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      total += u.partition[i];
      sum += tables[i][static_cast<std::size_t>(u.partition[i])];
    }
    CHECK(total == k);
    CHECK(sum == u.value);
  }
}

TEST_CASE("conformal scaling") {
  auto e = Spectrum::ellipsoid(Ellipsoid(2, 3));
  CHECK(conformal_scale(e, 2).value(1) == 4);
  CHECK(conformal_scale(e, 2).value(1) == nk_sequence(4, 6, 1)[1].first);
  auto same = conformal_scale(e, 1);
  for (std::int64_t k = 0; k <= 20; ++k) CHECK(same.value(k) == e.value(k));
  CHECK(conformal_scale(Spectrum::ball(Ball(1)), 3).value(3) == 6);
  auto t = Spectrum::toric(ToricProfile::rectangle(1, 2));
  auto t3 = conformal_scale(t, Rat(1) / 3);
  for (std::int64_t k = 0; k <= 8; ++k) CHECK(t3.value(k) == t.value(k) / 3);
  CHECK_THROWS_AS(conformal_scale(e, 0), PreconditionError);
}

TEST_CASE("concurrent readers see one consistent cache") {
  auto s = Spectrum::toric(ToricProfile::rectangle(1, 1));
  std::vector<std::vector<Rat>> seen(4);
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i) {
    threads.emplace_back([&, i] {
      for (std::int64_t k = 0; k <= 30; ++k) seen[static_cast<std::size_t>(i)].push_back(s.value(k));
    });
  }
  for (auto& t : threads) t.join();
  for (int i = 1; i < 4; ++i) CHECK(seen[static_cast<std::size_t>(i)] == seen[0]);
}

TEST_CASE("polydisks: min{a m + b n : (m + 1)(n + 1) >= k + 1}") {
  for (auto [a, b] : std::vector<std::pair<Rat, Rat>>{{1, 2}, {Rat(3) / 2, 1}, {1, 1}}) {
    auto caps = toric_capacities(ToricProfile::rectangle(a, b), 40);
    for (std::int64_t k = 0; k <= 40; ++k) {
      std::optional<Rat> best;
      for (std::int64_t m = 0; m <= k; ++m) {
        for (std::int64_t n = 0; n <= k; ++n) {
          if ((m + 1) * (n + 1) < k + 1) continue;
          Rat v = a * m + b * n;
          if (!best || v < *best) best = v;
        }
      }
      CHECK(caps[static_cast<std::size_t>(k)].value == *best);
    }
  }
}
