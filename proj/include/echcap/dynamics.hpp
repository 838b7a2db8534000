#pragma once

// Spectral gaps, the quantitative closing number of an ellipsoid via best
// rational approximants, and Weyl-law diagnostics.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "echcap/rational.hpp"
#include "echcap/spectrum.hpp"

namespace echcap {

struct GapReport {
  Rat L;
  std::optional<Rat> gap;  // nullopt: +inf, no c_{k+1} <= L
  std::optional<std::int64_t> achieving_k;  // least k attaining the minimum
};

// min over {k : c_{k+1} <= L} of c_{k+1} - c_k.
GapReport spectral_gap(const Spectrum& spectrum, const Rat& L);

enum class ApproxSide { kBelow, kAbove };

struct Approximant {
  BigInt m;
  BigInt n;
  ApproxSide side = ApproxSide::kBelow;

  friend bool operator==(const Approximant&, const Approximant&) = default;
};

// Largest p/q <= x in lowest terms with 1 <= q <= max_den, by Stern-Brocot
// descent that takes whole runs of mediants at once. Returns {p, q}.
std::pair<BigInt, BigInt> best_lower_fraction(const Rat& x, const BigInt& max_den);

// Coprime (m, n), m > 0, maximizing n/m subject to n/m <= a/b and a m <= L.
Approximant best_approx_below(const Rat& a, const Rat& b, const Rat& L);

// Coprime (m, n), n > 0, maximizing m/n subject to m/n <= b/a and b n <= L.
Approximant best_approx_above(const Rat& a, const Rat& b, const Rat& L);

struct CloseReport {
  Rat value;
  Approximant below;
  Approximant above;
  Rat below_term;  // a m- - b n-
  Rat above_term;  // b n+ - a m+
};

CloseReport ellipsoid_close_report(const Rat& a, const Rat& b, const Rat& L);

// Close^L of the boundary of E(a, b) = min(a m- - b n-, b n+ - a m+).
// Requires L >= max(a, b).
Rat ellipsoid_close(const Rat& a, const Rat& b, const Rat& L);

struct WeylRow {
  std::int64_t k = 0;
  Rat c;
  Rat ratio;      // c^2 / k
  Rat deviation;  // ratio - 2 V
};

// Rows in the order of k_list with a k = 1 row prepended if missing. V is
// the contact volume. Throws PreconditionError on k <= 0.
std::vector<WeylRow> weyl_report(const std::function<Rat(std::int64_t)>& c, const Rat& V,
                                 std::vector<std::int64_t> k_list);
std::vector<WeylRow> weyl_report(const Spectrum& spectrum, const Rat& V,
                                 std::vector<std::int64_t> k_list);

struct GapAsymptoticsRow {
  Rat L;
  std::optional<Rat> gap;          // nullopt: +inf, row excluded from suprema
  std::optional<Rat> L_times_gap;
  std::optional<Rat> suffix_sup;   // sup over grid points L' >= L with finite gap
};

// Rows sorted by L. No claim is made against V at finite L.
std::vector<GapAsymptoticsRow> gap_asymptotics(const Spectrum& spectrum,
                                               std::vector<Rat> L_grid);

struct CloseGapRow {
  Rat L;
  Rat close;
  std::optional<Rat> gap;
  bool ok = false;
};

// Checks Close^L <= Gap^L on E(a, b) at every grid point; throws
// ConsistencyError carrying the first counterexample.
std::vector<CloseGapRow> close_gap_consistency(const Rat& a, const Rat& b,
                                               const std::vector<Rat>& L_grid);

}  // namespace echcap
