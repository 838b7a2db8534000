#pragma once

// Capacity sequences c_0 <= c_1 <= ... of the supported domains. Each value
// comes with a witness that reproduces it: an orbit set (m, n) of the
// ellipsoid, a convex integral path for toric domains, or a partition of k
// across the parts of a disjoint union.

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "echcap/domains.hpp"
#include "echcap/lattice_path.hpp"
#include "echcap/rational.hpp"

namespace echcap {

// gamma_1^m gamma_2^n on the ellipsoid boundary; action a*m + b*n.
struct OrbitPair {
  std::int64_t m = 0;
  std::int64_t n = 0;

  friend bool operator==(const OrbitPair&, const OrbitPair&) = default;
};

struct Witness;

struct Partition {
  std::vector<std::int64_t> ks;  // k_1 + ... + k_m = k
  std::vector<Witness> parts;
};

struct Witness {
  std::variant<std::monostate, OrbitPair, LatticePath, Partition> data;
};

struct SpectrumEntry {
  Rat value;
  Witness witness;
};

// ---------------------------------------------------------------------------
// Ellipsoids

// Incremental min-heap frontier over the grid a*m + b*n. Emits every (m, n)
// exactly once in nondecreasing value, ties by (m, n) lexicographic.
class NkGenerator {
 public:
  NkGenerator(Rat a, Rat b);
  std::pair<Rat, OrbitPair> next();

 private:
  struct Node {
    Rat value;
    OrbitPair pair;
  };
  struct Later {
    bool operator()(const Node& l, const Node& r) const;
  };
  Rat a_;
  Rat b_;
  std::vector<Node> heap_;
};

// First k_max + 1 terms of N_k(a, b).
std::vector<std::pair<Rat, OrbitPair>> nk_sequence(const Rat& a, const Rat& b,
                                                   std::int64_t k_max);

// #{(x, y) in Z^2_{>=0} : a x + b y <= level}.
std::int64_t triangle_lattice_count(const Rat& a, const Rat& b, const Rat& level);

// N_k(a, b) as the least grid value whose triangle holds k + 1 lattice
// points. k = 0 returns 0.
Rat nk_via_lattice(const Rat& a, const Rat& b, std::int64_t k);

// The unique d >= 0 with d^2 + d <= 2k <= d^2 + 3d.
std::int64_t ball_degree(std::int64_t k);
Rat ball_capacity(const Rat& a, std::int64_t k);

// ---------------------------------------------------------------------------
// Convex toric domains

struct ToricCapacity {
  Rat value;            // min length over paths enclosing exactly k + 1 points
  LatticePath witness;  // a minimizer for `value`
  Rat value_at_least;   // min length over paths enclosing >= k + 1 points
  LatticePath witness_at_least;
};

struct ToricSearchOptions {
  std::uint64_t node_budget = 0;  // 0: unlimited
};

// Capacities for k = 0..k_max from a single branch-and-bound pass. Throws
// ConsistencyError if the two minima ever differ.
std::vector<ToricCapacity> toric_capacities(const ToricProfile& omega, std::int64_t k_max,
                                            const ToricSearchOptions& options = {});

ToricCapacity toric_capacity(const ToricProfile& omega, std::int64_t k,
                             const ToricSearchOptions& options = {});

// A feasible path with at least k + 1 lattice points: the boundary of the
// lattice hull of t * Omega for the least sampled t that holds enough points.
LatticePath greedy_toric_path(const ToricProfile& omega, std::int64_t k);

// ---------------------------------------------------------------------------
// Spectrum

enum class ProviderKind { kEllipsoid, kBall, kToric, kUnion };

class Spectrum {
 public:
  static Spectrum ellipsoid(const Ellipsoid& e);
  static Spectrum ball(const Ball& b);
  static Spectrum toric(const ToricProfile& omega, ToricSearchOptions options = {});
  static Spectrum disjoint_union(std::vector<Spectrum> parts);
  static Spectrum from_domain(const Domain& domain);

  ProviderKind kind() const;
  const Domain& domain() const;

  // Extends the cache as needed. Safe to call concurrently.
  SpectrumEntry entry(std::int64_t k) const;
  Rat value(std::int64_t k) const;
  std::vector<SpectrumEntry> prefix(std::int64_t k_max) const;

  struct State;

 private:
  explicit Spectrum(std::shared_ptr<State> state) : state_(std::move(state)) {}
  std::shared_ptr<State> state_;
};

struct UnionCapacity {
  Rat value;
  std::vector<std::int64_t> partition;
};

// max over k_1 + ... + k_m = k of sum c_{k_i}(part i), by folding a
// max-plus convolution over the parts.
UnionCapacity union_capacity(const std::vector<Spectrum>& parts, std::int64_t k);

// Spectrum of the domain scaled by r: c_k(r X) = r c_k(X).
Spectrum conformal_scale(const Spectrum& spectrum, const Rat& r);

// Value reproduced from the witness alone.
Rat witness_value(const Domain& domain, const Witness& witness);

}  // namespace echcap
