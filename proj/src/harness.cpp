// Copyright 2026 The clsh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "clsh/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

#include "clsh/baseline.hpp"
#include "clsh/error.hpp"

namespace clsh {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Welford running mean and sample variance.
class Moments {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double stderr_mean() const { return n_ ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0; }

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0;
  double m2_ = 0;
};

// Incremental GF(2) basis indexed by leading bit.
struct Gf2Basis {
  std::uint64_t rows[64] = {};
  std::uint32_t rank = 0;

  void insert(std::uint64_t v) {
    while (v != 0) {
      const int top = 63 - std::countl_zero(v);
      if (rows[top] == 0) {
        rows[top] = v;
        ++rank;
        return;
      }
      v ^= rows[top];
    }
  }
};

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

// Rank over GF(p) of rows with `width` residues each (p < 2^31).
std::uint32_t gfp_rank(std::vector<std::uint64_t> rows, std::size_t width, std::uint64_t p) {
  const std::size_t count = width ? rows.size() / width : 0;
  std::uint32_t rank = 0;
  for (std::size_t col = 0; col < width && rank < count; ++col) {
    std::size_t pivot = rank;
    while (pivot < count && rows[pivot * width + col] == 0) ++pivot;
    if (pivot == count) continue;
    for (std::size_t j = 0; j < width; ++j) std::swap(rows[pivot * width + j], rows[rank * width + j]);
    const std::uint64_t inv = pow_mod(rows[rank * width + col], p - 2, p);
    for (std::size_t j = 0; j < width; ++j) rows[rank * width + j] = rows[rank * width + j] * inv % p;
    for (std::size_t i = 0; i < count; ++i) {
      if (i == rank) continue;
      const std::uint64_t f = rows[i * width + col];
      if (f == 0) continue;
      for (std::size_t j = 0; j < width; ++j) {
        rows[i * width + j] = (rows[i * width + j] + (p - f) * rows[rank * width + j]) % p;
      }
    }
    ++rank;
  }
  return rank;
}

std::uint64_t ipow(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= base;
  return r;
}

std::vector<std::uint32_t> support_of(const BitVector& e) {
  std::vector<std::uint32_t> s;
  const auto words = e.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    for (std::uint64_t bits = words[w]; bits; bits &= bits - 1) {
      s.push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits)));
    }
  }
  return s;
}

std::vector<std::uint32_t> replicate_support(std::span<const std::uint32_t> s, std::size_t dims, std::uint32_t rep) {
  std::vector<std::uint32_t> out;
  out.reserve(s.size() * rep);
  for (std::uint32_t j = 0; j < rep; ++j) {
    for (const auto i : s) out.push_back(static_cast<std::uint32_t>(j * dims + i));
  }
  return out;
}

MaskFamily sample_family(const FamilyParams& params, std::size_t dims, std::uint64_t seed) {
  if (params.kind == FamilyKind::kClassical) return build_classical(dims, params.k, params.L, seed);
  return build_family(params, dims, seed, FamilyLimits{std::uint64_t{1} << 26});
}

}  // namespace

BitVector random_vector(std::size_t dims, Rng& rng) {
  BitVector x(dims);
  auto words = x.mutable_words();
  for (auto& w : words) w = rng.next();
  if (dims % 64 != 0 && !words.empty()) words.back() &= (std::uint64_t{1} << (dims % 64)) - 1;
  return x;
}

BitVector flip_random(const BitVector& y, std::uint32_t distance, Rng& rng) {
  const std::size_t d = y.dims();
  if (distance > d) {
    throw Error(ErrorCode::kInvalidArgument,
                "distance " + std::to_string(distance) + " exceeds d=" + std::to_string(d));
  }
  std::vector<std::uint32_t> pos(d);
  std::iota(pos.begin(), pos.end(), 0u);
  BitVector x = y;
  for (std::uint32_t i = 0; i < distance; ++i) {
    const auto j = i + rng.uniform(d - i);
    std::swap(pos[i], pos[j]);
    x.flip(pos[i]);
  }
  return x;
}

PointSet gen_random(std::size_t n, std::size_t dims, std::uint64_t seed) {
  if (dims == 0) throw Error(ErrorCode::kZeroDims, "gen_random needs d >= 1");
  Rng rng(seed);
  PointSet points(dims);
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) points.push_back(random_vector(dims, rng));
  return points;
}

PointSet gen_worst_case(const BitVector& y, std::size_t n, std::uint32_t r, std::uint64_t seed) {
  if (2 * static_cast<std::uint64_t>(r) > y.dims()) {
    throw Error(ErrorCode::kInvalidArgument,
                "worst-case set needs 2r <= d, got r=" + std::to_string(r) + " d=" + std::to_string(y.dims()));
  }
  Rng rng(seed);
  PointSet points(y.dims());
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) points.push_back(flip_random(y, 2 * r, rng));
  return points;
}

Planted plant_near(const PointSet& points, const BitVector& y, std::span<const std::uint32_t> distances,
                   std::uint64_t seed) {
  if (!points.empty() && points.dims() != y.dims()) {
    throw Error(ErrorCode::kDimensionMismatch, "points have d=" + std::to_string(points.dims()) +
                                                   " but y has d=" + std::to_string(y.dims()));
  }
  Planted out;
  out.points = points.empty() ? PointSet(y.dims()) : points;
  Rng rng(seed);
  for (const auto dist : distances) {
    out.ids.push_back(static_cast<std::uint32_t>(out.points.size()));
    out.points.push_back(flip_random(y, dist, rng));
  }
  return out;
}

std::vector<Neighbor> brute_force_within(const PointSet& points, const BitVector& y, std::uint32_t r) {
  std::vector<Neighbor> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto dist = static_cast<std::uint32_t>(hamming_distance(points[i], y));
    if (dist <= r) out.push_back({static_cast<std::uint32_t>(i), dist});
  }
  return out;
}

std::optional<Neighbor> brute_force_nearest(const PointSet& points, const BitVector& y) {
  std::optional<Neighbor> best;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto dist = static_cast<std::uint32_t>(hamming_distance(points[i], y));
    if (!best || dist < best->distance) best = Neighbor{static_cast<std::uint32_t>(i), dist};
  }
  return best;
}

std::uint64_t colliding_masks(const MappingTable& m, std::span<const std::uint32_t> support) {
  const auto& p = m.params();
  const std::uint32_t w = p.vector_width();
  for (const auto i : support) {
    if (i >= m.dims()) throw Error(ErrorCode::kInvalidArgument, "support position beyond the mapping dims");
  }
  switch (p.kind) {
    case FamilyKind::kBasic: {
      Gf2Basis basis;
      for (const auto i : support) {
        basis.insert(m.value(i));
        if (basis.rank == w) return 0;
      }
      return (std::uint64_t{1} << (w - basis.rank)) - 1;
    }
    case FamilyKind::kPartitioned: {
      thread_local std::vector<Gf2Basis> bases;
      bases.assign(p.b, Gf2Basis{});
      for (const auto i : support) {
        const std::uint32_t start = m.interval_start(i);
        for (std::uint32_t o = 0; o < p.q; ++o) {
          Gf2Basis& basis = bases[(start + o) % p.b];
          if (basis.rank == w) continue;
          for (std::uint32_t j = 0; j < p.t; ++j) basis.insert(m.value(i, j));
        }
      }
      std::uint64_t total = 0;
      for (const auto& basis : bases) total += (std::uint64_t{1} << (w - basis.rank)) - 1;
      return total;
    }
    case FamilyKind::kPrime: {
      std::vector<std::uint64_t> rows;
      rows.reserve(support.size() * w);
      for (const auto i : support) {
        for (const auto digit : m.digits(i)) rows.push_back(digit);
      }
      return ipow(p.p, w - gfp_rank(std::move(rows), w, p.p)) - 1;
    }
    case FamilyKind::kClassical:
      break;
  }
  throw Error(ErrorCode::kUnsupported, "classical families have no mapping table");
}

double CollisionStats::stderr_mean() const {
  if (trials == 0) return 0.0;
  // With no observed spread, fall back to a Poisson error on the exact mean.
  const double var = variance > 0 ? variance : exact;
  return std::sqrt(var / static_cast<double>(trials));
}

double CollisionStats::sigma_distance() const {
  const double diff = std::abs(mean - exact);
  if (diff <= 1e-12 * std::max(1.0, exact)) return 0.0;
  const double se = stderr_mean();
  return se > 0 ? diff / se : std::numeric_limits<double>::infinity();
}

CollisionStats measure_collisions(const FamilyParams& params, std::size_t dims, std::uint32_t distance,
                                  std::uint64_t trials, std::uint64_t seed) {
  if (distance > dims) throw Error(ErrorCode::kInvalidArgument, "distance exceeds d");
  CollisionStats s;
  s.params = params;
  s.dims = dims;
  s.distance = distance;
  s.trials = trials;
  const auto est = collision_expectation(params, distance, dims);
  s.exact = est.exact;
  s.bound = est.bound;
  Moments mom;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = mix_seed(seed, t);
    Rng rng(mix_seed(trial_seed, 7));
    const BitVector x = random_vector(dims, rng);
    const BitVector y = flip_random(x, distance, rng);
    const BitVector e = x ^ y;
    const MaskFamily fam = sample_family(params, dims, trial_seed);
    std::uint64_t hits = 0;
    for (const auto& a : fam.masks()) hits += masked_zero(e.words(), a.words());
    s.total_collisions += hits;
    mom.add(static_cast<double>(hits));
  }
  s.mean = mom.mean();
  s.variance = mom.variance();
  return s;
}

double FalseNegativeStats::sigma() const {
  if (trials == 0 || std::isnan(expected_rate)) return 0.0;
  return std::sqrt(expected_rate * (1.0 - expected_rate) / static_cast<double>(trials));
}

FalseNegativeStats measure_false_negatives(const FamilyParams& params, std::size_t dims, std::uint32_t distance,
                                           std::uint64_t trials, std::uint64_t seed) {
  if (distance > dims) throw Error(ErrorCode::kInvalidArgument, "distance exceeds d");
  FalseNegativeStats s;
  s.params = params;
  s.dims = dims;
  s.distance = distance;
  s.trials = trials;
  if (params.kind == FamilyKind::kClassical) {
    s.expected_rate = classical_false_negative_prob(dims, params.k, params.L, distance);
  } else {
    s.expected_rate = distance <= params.r ? 0.0 : kNaN;
  }
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = mix_seed(seed, t);
    Rng rng(mix_seed(trial_seed, 7));
    const BitVector x = random_vector(dims, rng);
    const BitVector e = x ^ flip_random(x, distance, rng);
    const MaskFamily fam = sample_family(params, dims, trial_seed);
    const bool hit = std::any_of(fam.masks().begin(), fam.masks().end(),
                                 [&](const BitVector& a) { return masked_zero(e.words(), a.words()); });
    s.misses += !hit;
  }
  return s;
}

ParitySplitStats measure_parity_split(std::size_t dims, std::uint32_t r, std::size_t points_per_trial,
                                      std::uint64_t trials, std::uint64_t seed, Codomain codomain) {
  if (r == 0 || r + 1 > dims) throw Error(ErrorCode::kInvalidArgument, "parity split needs 1 <= r < d");
  if (codomain == Codomain::kBalanced) {
    throw Error(ErrorCode::kUnsupported, "no closed-form collision expectation for balanced mappings");
  }
  ParitySplitStats s;
  s.trials = trials;
  const FamilyParams params = FamilyParams::basic(r, codomain);
  const double full = std::exp2(static_cast<double>(r) + 1.0) - 1.0;
  const double prefix = std::exp2(static_cast<double>(r)) - 1.0;
  // Per-mask collision probability at distance r+1; identical for every
  // nonzero v, so it also holds for the radius r-1 prefix.
  const double zero = codomain == Codomain::kFull ? 0.5 : prefix / full;
  const double per_mask = std::pow(zero, static_cast<double>(r) + 1.0);
  s.unsplit_exact = static_cast<double>(points_per_trial) * full * per_mask;
  s.split_exact = static_cast<double>(points_per_trial) * prefix * per_mask;

  const SchemeChoice scheme = fixed_scheme(std::max<std::size_t>(points_per_trial, 1), dims, 2.0, params);
  IndexOptions plain;
  IndexOptions split;
  split.parity_split = true;
  Moments a;
  Moments b;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = mix_seed(seed, t);
    Rng rng(mix_seed(trial_seed, 7));
    const BitVector y = random_vector(dims, rng);
    PointSet points(dims);
    for (std::size_t i = 0; i < points_per_trial; ++i) points.push_back(flip_random(y, r + 1, rng));
    const Index unsplit_index = Index::build(points, scheme, trial_seed, plain);
    const Index split_index = Index::build(points, scheme, trial_seed, split);
    a.add(static_cast<double>(unsplit_index.query_all_within(y, r).candidates_inspected));
    b.add(static_cast<double>(split_index.query_all_within(y, r).candidates_inspected));
  }
  s.unsplit_mean = a.mean();
  s.unsplit_variance = a.variance();
  s.split_mean = b.mean();
  s.split_variance = b.variance();
  return s;
}

double exhaustive_ball_cost(std::uint64_t n, std::uint32_t r) {
  const auto d = static_cast<std::uint64_t>(std::llround(std::log2(static_cast<double>(std::max<std::uint64_t>(n, 1)))));
  if (r > d) return 0.0;
  double c = 1.0;
  for (std::uint32_t i = 1; i <= r; ++i) c = c * static_cast<double>(d - r + i) / static_cast<double>(i);
  return std::round(c);
}

std::vector<TradeoffRow> run_tradeoff(const TradeoffSpec& spec) {
  std::vector<TradeoffRow> rows;
  const std::size_t d = spec.dims;
  if (d == 0) throw Error(ErrorCode::kZeroDims, "tradeoff needs d >= 1");
  std::uint64_t grid = 0;
  for (const auto n : spec.ns) {
    for (const auto r : spec.radii) {
      for (const auto c : spec.cs) {
        const std::uint64_t point_seed = mix_seed(spec.seed, grid++);
        auto warn = [&](const std::string& what) {
          TradeoffRow w;
          w.n = n;
          w.dims = d;
          w.r = r;
          w.c = c;
          w.method = "warning";
          w.detail = what;
          w.predicted_cost = kNaN;
          w.measured_cost = kNaN;
          w.measured_stderr = kNaN;
          w.fn_expected = kNaN;
          rows.push_back(w);
        };
        if (2 * static_cast<std::uint64_t>(r) > d || r == 0) {
          warn("needs 1 <= r and 2r <= d");
          continue;
        }
        if (n == 0 || n > (std::uint64_t{1} << 24)) {
          warn("n outside 1..2^24 is not materialized");
          continue;
        }
        Rng rng(mix_seed(point_seed, 1));
        const BitVector y = random_vector(d, rng);
        const PointSet worst = gen_worst_case(y, n, r, mix_seed(point_seed, 2));
        std::vector<std::vector<std::uint32_t>> supports;
        std::vector<BitVector> diffs;
        supports.reserve(n);
        diffs.reserve(n);
        for (const auto& x : worst) {
          diffs.push_back(x ^ y);
          supports.push_back(support_of(diffs.back()));
        }

        // CoveringLSH with the automatically selected scheme.
        try {
          const SchemeChoice choice = select_scheme(n, d, r, c, spec.select);
          const FamilyParams& fp = choice.family();
          const std::uint32_t rep = choice.replication();
          TradeoffRow row;
          row.n = n;
          row.dims = d;
          row.r = r;
          row.c = c;
          row.method = "covering";
          row.detail = describe_candidate(choice.chosen);
          row.predicted_cost = choice.chosen.family_size +
                               static_cast<double>(n) * collision_expectation(fp, 2 * r * rep, d * rep).exact;
          row.trials = spec.trials;
          std::vector<std::vector<std::uint32_t>> wide;
          if (rep > 1) {
            for (const auto& s : supports) wide.push_back(replicate_support(s, d, rep));
          }
          const auto& use = rep > 1 ? wide : supports;
          Moments mom;
          for (std::uint64_t t = 0; t < spec.trials; ++t) {
            const MappingTable m = MappingTable::sample(fp, d * rep, mix_seed(point_seed, 100 + t));
            double cost = choice.chosen.family_size;
            for (const auto& s : use) cost += static_cast<double>(colliding_masks(m, s));
            mom.add(cost);
          }
          row.measured_cost = mom.mean();
          row.measured_stderr = mom.stderr_mean();
          row.fn_trials = spec.fn_trials;
          row.fn_expected = 0.0;
          Rng fn_rng(mix_seed(point_seed, 3));
          for (std::uint64_t t = 0; t < spec.fn_trials; ++t) {
            const MappingTable m = MappingTable::sample(fp, d * rep, mix_seed(point_seed, 1'000'000 + t));
            const auto near = support_of(flip_random(y, r, fn_rng) ^ y);
            const auto s = rep > 1 ? replicate_support(near, d, rep) : near;
            row.false_negatives += colliding_masks(m, s) == 0;
          }
          rows.push_back(row);
        } catch (const InfeasibleScheme& e) {
          warn(std::string("covering: ") + e.what());
        }

        // Classical bit sampling tuned for two false negative targets.
        const double deltas[2] = {0.01, 1.0 / static_cast<double>(n)};
        const char* names[2] = {"classical_delta_0.01", "classical_delta_1/n"};
        for (int which = 0; which < 2; ++which) {
          const double delta = std::min(deltas[which], 0.5);
          const ClassicalTuning tune = tune_classical(n, d, r, 2 * r, delta);
          TradeoffRow row;
          row.n = n;
          row.dims = d;
          row.r = r;
          row.c = c;
          row.method = names[which];
          row.detail = "k=" + std::to_string(tune.k) + " L=" + std::to_string(tune.L);
          row.predicted_cost = tune.cost;
          const double work = static_cast<double>(n) * static_cast<double>(tune.L) *
                              static_cast<double>(spec.classical_trials);
          Moments mom;
          if (work <= spec.max_work) {
            row.trials = spec.classical_trials;
            for (std::uint64_t t = 0; t < spec.classical_trials; ++t) {
              const MaskFamily fam = build_classical(d, tune.k, tune.L, mix_seed(point_seed, 200 + 2 * t + which));
              double cost = static_cast<double>(tune.L);
              for (const auto& a : fam.masks()) {
                for (const auto& e : diffs) cost += masked_zero(e.words(), a.words());
              }
              mom.add(cost);
            }
            row.measured_cost = mom.mean();
            row.measured_stderr = mom.stderr_mean();
          } else {
            row.measured_cost = kNaN;
            row.measured_stderr = kNaN;
          }
          row.fn_trials = spec.fn_trials;
          row.fn_expected = classical_false_negative_prob(d, tune.k, tune.L, r);
          Rng fn_rng(mix_seed(point_seed, 4 + which));
          for (std::uint64_t t = 0; t < spec.fn_trials; ++t) {
            const MaskFamily fam = build_classical(d, tune.k, tune.L, mix_seed(point_seed, 2'000'000 + 2 * t + which));
            const BitVector e = flip_random(y, r, fn_rng) ^ y;
            const bool hit = std::any_of(fam.masks().begin(), fam.masks().end(),
                                         [&](const BitVector& a) { return masked_zero(e.words(), a.words()); });
            row.false_negatives += !hit;
          }
          rows.push_back(row);
        }

        TradeoffRow ball;
        ball.n = n;
        ball.dims = d;
        ball.r = r;
        ball.c = c;
        ball.method = "exhaustive";
        ball.detail = "C(log2 n, r)";
        ball.predicted_cost = exhaustive_ball_cost(n, r);
        ball.measured_cost = ball.predicted_cost;
        ball.measured_stderr = 0.0;
        ball.fn_expected = 0.0;
        rows.push_back(ball);
      }
    }
  }
  return rows;
}

CoveringRow run_covering(const FamilyParams& params, std::size_t dims, std::uint32_t radius, std::uint64_t seed,
                         CoveringOptions options) {
  CoveringRow row;
  row.params = params;
  row.dims = dims;
  row.radius = radius;
  row.seed = seed;
  const MaskFamily fam = sample_family(params, dims, seed);
  row.masks = fam.size();
  row.weight = family_weight(fam);
  const CoveringResult res = is_r_covering(fam, radius, options);
  row.covering = res.covering;
  row.patterns_checked = res.patterns_checked;
  if (res.witness) row.witness = res.witness->to_string();
  return row;
}

BenchResult run_bench(std::uint64_t n, std::size_t dims, std::uint32_t r, double c, std::uint64_t queries,
                      std::uint64_t seed, const IndexOptions& options, const SelectOptions& select) {
  using Clock = std::chrono::steady_clock;
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "bench needs n >= 1");
  BenchResult out;
  out.n = n;
  out.dims = dims;
  out.r = r;
  out.c = c;
  out.queries = queries;
  const PointSet points = gen_random(n, dims, mix_seed(seed, 1));
  const SchemeChoice choice = select_scheme(n, dims, r, c, select);
  out.scheme = describe_candidate(choice.chosen);
  const auto t0 = Clock::now();
  const Index index = Index::build(points, choice, mix_seed(seed, 2), options);
  const auto t1 = Clock::now();
  Rng rng(mix_seed(seed, 3));
  std::vector<std::uint64_t> masks;
  std::vector<std::uint64_t> candidates;
  std::vector<std::uint64_t> distances;
  for (std::uint64_t q = 0; q < queries; ++q) {
    const auto id = rng.uniform(n);
    const BitVector y = flip_random(points[id], static_cast<std::uint32_t>(rng.uniform(r + 1)), rng);
    const QueryOutcome o = index.query_near(y, r, c);
    out.found += o.result.has_value();
    masks.push_back(o.masks_evaluated);
    candidates.push_back(o.candidates_inspected);
    distances.push_back(o.distance_computations);
  }
  const auto t2 = Clock::now();
  out.build_seconds = std::chrono::duration<double>(t1 - t0).count();
  out.query_seconds = std::chrono::duration<double>(t2 - t1).count();
  out.queries_per_second = out.query_seconds > 0 ? static_cast<double>(queries) / out.query_seconds : 0.0;
  auto pct = [](std::vector<std::uint64_t> v) {
    std::vector<std::uint64_t> p;
    if (v.empty()) return p;
    std::sort(v.begin(), v.end());
    for (const double q : {0.0, 0.5, 0.9, 0.99, 1.0}) {
      p.push_back(v[static_cast<std::size_t>(std::llround(q * static_cast<double>(v.size() - 1)))]);
    }
    return p;
  };
  out.masks_percentiles = pct(masks);
  out.candidates_percentiles = pct(candidates);
  out.distance_percentiles = pct(distances);
  return out;
}

}  // namespace clsh
