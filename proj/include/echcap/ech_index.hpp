#pragma once

// ECH index of orbit sets in star-shaped domains, the closed form on the
// ellipsoid, and the orbit-set to convex-path dictionary for toric domains.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "echcap/lattice_path.hpp"
#include "echcap/rational.hpp"

namespace echcap {

struct Rotation {
  Rat value;
  // The orbit is elliptic, so its rotation number must be irrational; an
  // integer stand-in is rejected as degenerate.
  bool elliptic = false;
};

// CZ = floor(rot) + ceil(rot).
std::int64_t cz_from_rotation(const Rotation& rot);

// I(gamma_1^m1 gamma_2^m2) on the boundary of E(a, b):
// 2 (m1 + m2 + m1 m2 + sum_{j<=m1} floor(j a/b) + sum_{j<=m2} floor(j b/a)).
std::int64_t ellipsoid_index(const Rat& a, const Rat& b, std::int64_t m1, std::int64_t m2);

Rat ellipsoid_action(const Rat& a, const Rat& b, std::int64_t m1, std::int64_t m2);

struct OrbitRecord {
  std::string label;
  std::int64_t c_tau = 0;
  std::int64_t sl = 0;  // self-linking; Q_tau = sl + c_tau
  // CZ_tau of the k-fold cover, k >= 1; nullopt when not supplied.
  std::function<std::optional<std::int64_t>(std::int64_t)> cz_of_cover;
  std::int64_t multiplicity = 1;
};

struct OrbitSet {
  std::vector<OrbitRecord> orbits;
  std::vector<std::vector<std::int64_t>> linking;  // symmetric; diagonal unused
};

// Throws PreconditionError on a bad multiplicity or a linking matrix that is
// not square and symmetric.
void validate_orbit_set(const OrbitSet& alpha);

// I = sum (m^2 + m) c_tau + sum m^2 sl + sum_{i != j} m_i m_j l(i, j)
//     + sum_i sum_{k <= m_i} CZ_tau(alpha_i^k).
// With global-trivialization data (every c_tau = 0) this is the simplified
// global form. Throws PreconditionError when a needed cover is missing.
std::int64_t star_shaped_index(const OrbitSet& alpha);

// The two simple orbits of E(a, b) with the trivialization tau in which
// gamma_1, gamma_2 rotate by a/b, b/a: c_tau = 1, sl = -1, l = 1,
// CZ(gamma_1^j) = 2 floor(j a/b) + 1, CZ(gamma_2^j) = 2 floor(j b/a) + 1.
// Orbits with zero multiplicity are left out.
OrbitSet ellipsoid_orbit_set(const Rat& a, const Rat& b, std::int64_t m1, std::int64_t m2);

// A family of orbits with label (p, q) in a perturbed toric boundary and
// total multiplicity m.
struct OrbitLabel {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t multiplicity = 1;
};

// Label (p, q) with multiplicity m becomes the edge (m q, -m p); edges are
// then appended in slope order. Throws on duplicate or non-coprime labels.
LatticePath orbit_set_to_path(const std::vector<OrbitLabel>& orbits);

struct IndexBounds {
  std::int64_t lower = 0;  // 2 Area + a + b
  std::int64_t upper = 0;  // lower + m(Lambda) = 2 (L(Lambda) - 1)
  std::int64_t lattice_count = 0;
};

// Throws ConsistencyError if the upper bound disagrees with 2 (L - 1).
IndexBounds path_index_bounds(const LatticePath& path);

struct IndexScanRow {
  std::int64_t m1 = 0;
  std::int64_t m2 = 0;
  Rat action;
  std::int64_t index = 0;
  std::int64_t rank = 0;            // k with N_k(a, b) = action
  std::int64_t triangle_count = 0;  // lattice points under a x + b y <= action
  bool ok = false;                  // index == 2 rank == 2 (triangle_count - 1)
};

struct IndexScanReport {
  std::vector<IndexScanRow> rows;
  bool all_pass = false;
};

// Checks I = 2k <=> A = N_k(a, b) over 0 <= m1, m2 <= m_max. Refuses with
// PreconditionError (naming the collision) unless every action up to the
// largest scanned one is attained by a single orbit set and no j a/b or
// j b/a with j <= m_max is an integer.
IndexScanReport index_action_scan(const Rat& a, const Rat& b, std::int64_t m_max);

}  // namespace echcap
