#include "echcap/spectrum.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>

#include "echcap/errors.hpp"

namespace echcap {

// ---------------------------------------------------------------------------
// N_k(a, b)

bool NkGenerator::Later::operator()(const Node& l, const Node& r) const {
  if (l.value != r.value) return l.value > r.value;
  if (l.pair.m != r.pair.m) return l.pair.m > r.pair.m;
  return l.pair.n > r.pair.n;
}

NkGenerator::NkGenerator(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_ <= 0 || b_ <= 0) throw PreconditionError("N_k(a, b) needs a, b > 0");
  heap_.push_back({Rat(0), {0, 0}});
}

std::pair<Rat, OrbitPair> NkGenerator::next() {
  std::pop_heap(heap_.begin(), heap_.end(), Later{});
  Node top = std::move(heap_.back());
  heap_.pop_back();
  // (m, n) is only ever pushed from (m, n - 1), or from (m - 1, 0) when
  // n = 0, so every pair enters the frontier exactly once.
  auto push = [this](Rat v, OrbitPair p) {
    heap_.push_back({std::move(v), p});
    std::push_heap(heap_.begin(), heap_.end(), Later{});
  };
  push(top.value + b_, {top.pair.m, top.pair.n + 1});
  if (top.pair.n == 0) push(top.value + a_, {top.pair.m + 1, 0});
  return {std::move(top.value), top.pair};
}

std::vector<std::pair<Rat, OrbitPair>> nk_sequence(const Rat& a, const Rat& b,
                                                   std::int64_t k_max) {
  if (k_max < 0) throw PreconditionError("k_max must be nonnegative");
  NkGenerator gen(a, b);
  std::vector<std::pair<Rat, OrbitPair>> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  for (std::int64_t k = 0; k <= k_max; ++k) out.push_back(gen.next());
  return out;
}

std::int64_t triangle_lattice_count(const Rat& a, const Rat& b, const Rat& level) {
  if (level < 0) return 0;
  std::int64_t columns = to_int64(floor(level / a));
  std::int64_t count = 0;
  for (std::int64_t x = 0; x <= columns; ++x) {
    count += to_int64(floor((level - a * x) / b)) + 1;
  }
  return count;
}

Rat nk_via_lattice(const Rat& a, const Rat& b, std::int64_t k) {
  if (a <= 0 || b <= 0) throw PreconditionError("N_k(a, b) needs a, b > 0");
  if (k < 0) throw PreconditionError("k must be nonnegative");
  if (k == 0) return Rat(0);
  // Bracket: count(lo) < k + 1 <= count(hi).
  Rat lo = 0;
  Rat hi = std::min(a, b);
  while (triangle_lattice_count(a, b, hi) < k + 1) {
    lo = hi;
    hi *= 2;
  }
  // The count only changes at grid values, so the answer is the least grid
  // value in (lo, hi] whose triangle holds enough points.
  std::vector<Rat> candidates;
  for (std::int64_t m = 0; a * m <= hi; ++m) {
    Rat base = a * m;
    std::int64_t n0 = base >= lo ? 0 : to_int64(floor((lo - base) / b));
    for (std::int64_t n = n0;; ++n) {
      Rat g = base + b * n;
      if (g > hi) break;
      if (g > lo) candidates.push_back(std::move(g));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  auto it = std::partition_point(candidates.begin(), candidates.end(), [&](const Rat& g) {
    return triangle_lattice_count(a, b, g) < k + 1;
  });
  if (it == candidates.end()) throw ConsistencyError("lattice inversion found no grid value");
  return *it;
}

std::int64_t ball_degree(std::int64_t k) {
  if (k < 0) throw PreconditionError("k must be nonnegative");
  // Largest d with d^2 + d <= 2k; the upper inequality then follows by parity.
  BigInt disc = BigInt(8) * k + 1;
  BigInt root = boost::multiprecision::sqrt(disc);
  std::int64_t d = to_int64((root - 1) / 2);
  while (BigInt(d) * d + d > BigInt(2) * k) --d;
  while (BigInt(d + 1) * (d + 1) + (d + 1) <= BigInt(2) * k) ++d;
  if (!(BigInt(2) * k <= BigInt(d) * d + BigInt(3) * d)) {
    throw ConsistencyError("no integer d with d^2+d <= 2k <= d^2+3d for k = " + std::to_string(k));
  }
  return d;
}

Rat ball_capacity(const Rat& a, std::int64_t k) {
  if (a <= 0) throw PreconditionError("ball parameter must be positive");
  return a * ball_degree(k);
}

namespace {

OrbitPair ball_witness(std::int64_t k) {
  // Value d repeats d + 1 times, pairs (0, d), (1, d - 1), ... in the heap's
  // tie order.
  std::int64_t d = ball_degree(k);
  std::int64_t j = k - d * (d + 1) / 2;
  return {j, d - j};
}

}  // namespace

// ---------------------------------------------------------------------------
// Spectrum

struct Spectrum::State {
  ProviderKind kind;
  Domain domain;
  mutable std::shared_mutex mutex;
  std::vector<SpectrumEntry> cache;
  std::optional<NkGenerator> generator;
  ToricSearchOptions toric_options;
  std::vector<Spectrum> parts;

  State(ProviderKind k, Domain d) : kind(k), domain(std::move(d)) {}
};

namespace {

std::vector<std::vector<std::int64_t>> union_table(const std::vector<Spectrum>& parts,
                                                   std::int64_t k_max,
                                                   std::vector<Rat>& best_out);

void extend_locked(Spectrum::State& s, std::int64_t k) {
  const auto size = static_cast<std::int64_t>(s.cache.size());
  switch (s.kind) {
    case ProviderKind::kEllipsoid:
      while (static_cast<std::int64_t>(s.cache.size()) <= k) {
        auto [v, pair] = s.generator->next();
        s.cache.push_back({std::move(v), {pair}});
      }
      break;
    case ProviderKind::kBall:
      break;
    case ProviderKind::kToric: {
      std::int64_t target = std::max(k, size + size / 2);
      auto caps = toric_capacities(std::get<ToricProfile>(s.domain.shape), target,
                                   s.toric_options);
      s.cache.clear();
      for (auto& c : caps) s.cache.push_back({std::move(c.value), {std::move(c.witness)}});
      break;
    }
    case ProviderKind::kUnion: {
      std::int64_t target = std::max(k, size + size / 2);
      std::vector<Rat> best;
      auto choice = union_table(s.parts, target, best);
      s.cache.clear();
      for (std::int64_t j = 0; j <= target; ++j) {
        // Walk the choice table backwards to recover k_1, ..., k_m.
        std::vector<std::int64_t> ks(s.parts.size());
        std::int64_t rest = j;
        for (std::size_t i = s.parts.size(); i-- > 0;) {
          ks[i] = choice[i][static_cast<std::size_t>(rest)];
          rest -= ks[i];
        }
        Partition p{ks, {}};
        for (std::size_t i = 0; i < s.parts.size(); ++i) {
          p.parts.push_back(s.parts[i].entry(ks[i]).witness);
        }
        s.cache.push_back({best[static_cast<std::size_t>(j)], {std::move(p)}});
      }
      break;
    }
  }
}

std::vector<std::vector<std::int64_t>> union_table(const std::vector<Spectrum>& parts,
                                                   std::int64_t k_max,
                                                   std::vector<Rat>& best) {
  if (parts.empty()) throw PreconditionError("a disjoint union needs at least one part");
  const auto width = static_cast<std::size_t>(k_max) + 1;
  std::vector<std::vector<std::int64_t>> choice(parts.size(), std::vector<std::int64_t>(width));
  std::vector<std::vector<Rat>> values;
  for (const auto& part : parts) {
    std::vector<Rat> row;
    try {
      for (const auto& e : part.prefix(k_max)) row.push_back(e.value);
    } catch (const UnavailableError& err) {
      throw UnavailableError(std::string("union part unavailable: ") + err.what());
    }
    values.push_back(std::move(row));
  }
  best = values[0];
  for (std::size_t j = 0; j < width; ++j) choice[0][j] = static_cast<std::int64_t>(j);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    std::vector<Rat> next(width);
    for (std::size_t j = 0; j < width; ++j) {
      // max over t of best[j - t] + c_t(part i); ties keep the smallest t.
      for (std::size_t t = 0; t <= j; ++t) {
        Rat v = best[j - t] + values[i][t];
        if (t == 0 || v > next[j]) {
          next[j] = std::move(v);
          choice[i][j] = static_cast<std::int64_t>(t);
        }
      }
    }
    best = std::move(next);
  }
  return choice;
}

}  // namespace

Spectrum Spectrum::ellipsoid(const Ellipsoid& e) {
  auto s = std::make_shared<State>(ProviderKind::kEllipsoid, Domain{e});
  s->generator.emplace(e.a(), e.b());
  return Spectrum(std::move(s));
}

Spectrum Spectrum::ball(const Ball& b) {
  return Spectrum(std::make_shared<State>(ProviderKind::kBall, Domain{b}));
}

Spectrum Spectrum::toric(const ToricProfile& omega, ToricSearchOptions options) {
  auto s = std::make_shared<State>(ProviderKind::kToric, Domain{omega});
  s->toric_options = options;
  return Spectrum(std::move(s));
}

Spectrum Spectrum::disjoint_union(std::vector<Spectrum> parts) {
  if (parts.empty()) throw PreconditionError("a disjoint union needs at least one part");
  DisjointUnion u;
  for (const auto& p : parts) u.parts.push_back(p.domain());
  auto s = std::make_shared<State>(ProviderKind::kUnion, Domain{std::move(u)});
  s->parts = std::move(parts);
  return Spectrum(std::move(s));
}

Spectrum Spectrum::from_domain(const Domain& domain) {
  return std::visit(
      [](const auto& shape) -> Spectrum {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Ellipsoid>) {
          return Spectrum::ellipsoid(shape);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return Spectrum::ball(shape);
        } else if constexpr (std::is_same_v<T, ToricProfile>) {
          return Spectrum::toric(shape);
        } else {
          std::vector<Spectrum> parts;
          for (const auto& p : shape.parts) parts.push_back(Spectrum::from_domain(p));
          return Spectrum::disjoint_union(std::move(parts));
        }
      },
      domain.shape);
}

ProviderKind Spectrum::kind() const { return state_->kind; }
const Domain& Spectrum::domain() const { return state_->domain; }

SpectrumEntry Spectrum::entry(std::int64_t k) const {
  if (k < 0) throw PreconditionError("capacity index must be nonnegative");
  auto& s = *state_;
  if (s.kind == ProviderKind::kBall) {
    const auto& ball = std::get<Ball>(s.domain.shape);
    return {ball_capacity(ball.a(), k), {ball_witness(k)}};
  }
  {
    std::shared_lock lock(s.mutex);
    if (static_cast<std::int64_t>(s.cache.size()) > k) {
      return s.cache[static_cast<std::size_t>(k)];
    }
  }
  std::unique_lock lock(s.mutex);
  extend_locked(s, k);
  return s.cache[static_cast<std::size_t>(k)];
}

Rat Spectrum::value(std::int64_t k) const { return entry(k).value; }

std::vector<SpectrumEntry> Spectrum::prefix(std::int64_t k_max) const {
  std::vector<SpectrumEntry> out;
  if (k_max < 0) return out;
  entry(k_max);  // one extension for the whole range
  for (std::int64_t k = 0; k <= k_max; ++k) out.push_back(entry(k));
  return out;
}

UnionCapacity union_capacity(const std::vector<Spectrum>& parts, std::int64_t k) {
  if (k < 0) throw PreconditionError("k must be nonnegative");
  std::vector<Rat> best;
  auto choice = union_table(parts, k, best);
  UnionCapacity out{best[static_cast<std::size_t>(k)], std::vector<std::int64_t>(parts.size())};
  std::int64_t rest = k;
  for (std::size_t i = parts.size(); i-- > 0;) {
    out.partition[i] = choice[i][static_cast<std::size_t>(rest)];
    rest -= out.partition[i];
  }
  return out;
}

Spectrum conformal_scale(const Spectrum& spectrum, const Rat& r) {
  if (r <= 0) throw PreconditionError("conformal factor must be positive");
  return Spectrum::from_domain(scale_domain(spectrum.domain(), r));
}

Rat witness_value(const Domain& domain, const Witness& witness) {
  return std::visit(
      [&](const auto& shape) -> Rat {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Ellipsoid>) {
          const auto& w = std::get<OrbitPair>(witness.data);
          return shape.a() * w.m + shape.b() * w.n;
        } else if constexpr (std::is_same_v<T, Ball>) {
          const auto& w = std::get<OrbitPair>(witness.data);
          return shape.a() * (w.m + w.n);
        } else if constexpr (std::is_same_v<T, ToricProfile>) {
          return omega_length(shape, std::get<LatticePath>(witness.data));
        } else {
          const auto& p = std::get<Partition>(witness.data);
          if (p.parts.size() != shape.parts.size()) {
            throw PreconditionError("partition witness does not match the union");
          }
          Rat total = 0;
          for (std::size_t i = 0; i < p.parts.size(); ++i) {
            total += witness_value(shape.parts[i], p.parts[i]);
          }
          return total;
        }
      },
      domain.shape);
}

}  // namespace echcap
