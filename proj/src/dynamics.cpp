#include "echcap/dynamics.hpp"

#include <algorithm>

#include "echcap/errors.hpp"

namespace echcap {
namespace {

// c_0, c_1, ..., c_K with c_K the first value above L.
std::vector<Rat> values_through(const Spectrum& spectrum, const Rat& L) {
  std::vector<Rat> out;
  for (std::int64_t k = 0;; ++k) {
    out.push_back(spectrum.value(k));
    if (out.back() > L) return out;
  }
}

void require_range(const Rat& a, const Rat& b, const Rat& L) {
  if (a <= 0 || b <= 0) throw PreconditionError("ellipsoid parameters must be positive");
  if (L < a || L < b) {
    throw PreconditionError("L = " + to_string(L) + " is below max(a, b) = " +
                            to_string(std::max(a, b)));
  }
}

struct Frac {
  BigInt n;
  BigInt d;
};

}  // namespace

GapReport spectral_gap(const Spectrum& spectrum, const Rat& L) {
  GapReport out{L, std::nullopt, std::nullopt};
  auto c = values_through(spectrum, L);
  for (std::size_t k = 0; k + 1 < c.size() && c[k + 1] <= L; ++k) {
    Rat d = c[k + 1] - c[k];
    if (!out.gap || d < *out.gap) {
      out.gap = d;
      out.achieving_k = static_cast<std::int64_t>(k);
    }
  }
  return out;
}

std::pair<BigInt, BigInt> best_lower_fraction(const Rat& x, const BigInt& max_den) {
  if (max_den < 1) throw PreconditionError("denominator cap must be positive");
  const BigInt fl = floor(x);
  Frac lo{fl, 1};
  Frac hi{fl + 1, 1};
  auto hit = [&](const Frac& f) { return Rat(f.n, f.d) == x; };
  if (hit(lo)) return {lo.n, lo.d};
  for (;;) {
    // Run of mediants lo + t hi that stay <= x.
    BigInt t = floor((x * lo.d - lo.n) / (hi.n - x * hi.d));
    BigInt cap = (max_den - lo.d) / hi.d;
    if (t > cap) {
      lo.n += cap * hi.n;
      lo.d += cap * hi.d;
      return {lo.n, lo.d};
    }
    lo.n += t * hi.n;
    lo.d += t * hi.d;
    if (hit(lo)) return {lo.n, lo.d};
    // Run of mediants hi + s lo that stay > x.
    BigInt s = ceil((hi.n - x * hi.d) / (x * lo.d - lo.n)) - 1;
    hi.n += s * lo.n;
    hi.d += s * lo.d;
    // Every fraction strictly between lo and hi has denominator >= lo.d + hi.d.
    if (lo.d + hi.d > max_den) return {lo.n, lo.d};
  }
}

Approximant best_approx_below(const Rat& a, const Rat& b, const Rat& L) {
  require_range(a, b, L);
  auto [n, m] = best_lower_fraction(a / b, floor(L / a));
  return {m, n, ApproxSide::kBelow};
}

Approximant best_approx_above(const Rat& a, const Rat& b, const Rat& L) {
  require_range(a, b, L);
  auto [m, n] = best_lower_fraction(b / a, floor(L / b));
  return {m, n, ApproxSide::kAbove};
}

CloseReport ellipsoid_close_report(const Rat& a, const Rat& b, const Rat& L) {
  CloseReport out;
  out.below = best_approx_below(a, b, L);
  out.above = best_approx_above(a, b, L);
  out.below_term = a * Rat(out.below.m) - b * Rat(out.below.n);
  out.above_term = b * Rat(out.above.n) - a * Rat(out.above.m);
  out.value = std::min(out.below_term, out.above_term);
  return out;
}

Rat ellipsoid_close(const Rat& a, const Rat& b, const Rat& L) {
  return ellipsoid_close_report(a, b, L).value;
}

std::vector<WeylRow> weyl_report(const std::function<Rat(std::int64_t)>& c, const Rat& V,
                                 std::vector<std::int64_t> k_list) {
  for (auto k : k_list) {
    if (k <= 0) throw PreconditionError("Weyl rows need k >= 1, got " + std::to_string(k));
  }
  if (std::find(k_list.begin(), k_list.end(), 1) == k_list.end()) {
    k_list.insert(k_list.begin(), 1);
  }
  std::vector<WeylRow> rows;
  for (auto k : k_list) {
    WeylRow row;
    row.k = k;
    row.c = c(k);
    row.ratio = row.c * row.c / k;
    row.deviation = row.ratio - 2 * V;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<WeylRow> weyl_report(const Spectrum& spectrum, const Rat& V,
                                 std::vector<std::int64_t> k_list) {
  return weyl_report([&](std::int64_t k) { return spectrum.value(k); }, V, std::move(k_list));
}

std::vector<GapAsymptoticsRow> gap_asymptotics(const Spectrum& spectrum,
                                               std::vector<Rat> L_grid) {
  std::sort(L_grid.begin(), L_grid.end());
  std::vector<GapAsymptoticsRow> rows;
  if (L_grid.empty()) return rows;
  auto c = values_through(spectrum, L_grid.back());

  // Gap^L only shrinks as L grows, so one sweep serves the whole grid.
  std::optional<Rat> gap;
  std::size_t k = 0;
  for (const auto& L : L_grid) {
    for (; k + 1 < c.size() && c[k + 1] <= L; ++k) {
      Rat d = c[k + 1] - c[k];
      if (!gap || d < *gap) gap = d;
    }
    GapAsymptoticsRow row;
    row.L = L;
    row.gap = gap;
    if (gap) row.L_times_gap = L * *gap;
    rows.push_back(std::move(row));
  }
  std::optional<Rat> sup;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    if (it->L_times_gap && (!sup || *it->L_times_gap > *sup)) sup = it->L_times_gap;
    it->suffix_sup = sup;
  }
  return rows;
}

std::vector<CloseGapRow> close_gap_consistency(const Rat& a, const Rat& b,
                                               const std::vector<Rat>& L_grid) {
  for (const auto& L : L_grid) require_range(a, b, L);
  auto spectrum = Spectrum::ellipsoid(Ellipsoid(a, b));
  std::vector<CloseGapRow> rows;
  for (const auto& L : L_grid) {
    CloseGapRow row;
    row.L = L;
    row.close = ellipsoid_close(a, b, L);
    row.gap = spectral_gap(spectrum, L).gap;
    row.ok = !row.gap || row.close <= *row.gap;
    if (!row.ok) {
      throw ConsistencyError("Close > Gap for E(" + to_string(a) + ", " + to_string(b) +
                             ") at L = " + to_string(L) + ": " + to_string(row.close) + " > " +
                             to_string(*row.gap));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace echcap
