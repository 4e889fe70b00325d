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

// Generators, brute-force oracles and the measurement experiments.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "clsh/bits.hpp"
#include "clsh/families.hpp"
#include "clsh/index.hpp"
#include "clsh/rng.hpp"
#include "clsh/scheme.hpp"

namespace clsh {

BitVector random_vector(std::size_t dims, Rng& rng);
/// y with exactly `distance` positions flipped, chosen uniformly.
BitVector flip_random(const BitVector& y, std::uint32_t distance, Rng& rng);

PointSet gen_random(std::size_t n, std::size_t dims, std::uint64_t seed);
/// n points, each at distance exactly 2r from y. Throws when 2r > d.
PointSet gen_worst_case(const BitVector& y, std::size_t n, std::uint32_t r, std::uint64_t seed);

struct Planted {
  PointSet points;
  std::vector<std::uint32_t> ids;  // one per requested distance
};
/// Appends one point per distance, at exactly that distance from y.
Planted plant_near(const PointSet& points, const BitVector& y, std::span<const std::uint32_t> distances,
                   std::uint64_t seed);

/// Linear scan: all points within r, sorted by id.
std::vector<Neighbor> brute_force_within(const PointSet& points, const BitVector& y, std::uint32_t r);
/// Linear scan nearest point; ties go to the lowest id.
std::optional<Neighbor> brute_force_nearest(const PointSet& points, const BitVector& y);

/// Exact number of masks a with a AND e = 0 in the family built from m, where
/// e is the indicator of `support`. Computed from ranks of the mapping values
/// on the support (2^{w-rank} - 1 per partition, p^{w-rank} - 1 for prime
/// families), without materializing the masks.
std::uint64_t colliding_masks(const MappingTable& m, std::span<const std::uint32_t> support);

struct CollisionStats {
  FamilyParams params;
  std::size_t dims = 0;
  std::uint32_t distance = 0;
  std::uint64_t trials = 0;
  double mean = 0;      // colliding masks per trial
  double variance = 0;  // sample variance
  double exact = 0;     // collision_expectation(...).exact
  double bound = 0;
  std::uint64_t total_collisions = 0;

  double stderr_mean() const;
  /// |mean - exact| in units of the standard error (0 when both agree exactly).
  double sigma_distance() const;
};

/// Fresh family per trial from the real mask builders; a random pair at
/// `distance` is drawn per trial and the masks with x AND a = y AND a counted.
CollisionStats measure_collisions(const FamilyParams& params, std::size_t dims, std::uint32_t distance,
                                  std::uint64_t trials, std::uint64_t seed);

struct FalseNegativeStats {
  FamilyParams params;
  std::size_t dims = 0;
  std::uint32_t distance = 0;
  std::uint64_t trials = 0;
  std::uint64_t misses = 0;  // trials where no mask collided
  double expected_rate = 0;

  double rate() const { return trials ? static_cast<double>(misses) / static_cast<double>(trials) : 0.0; }
  /// Binomial standard deviation of the rate under expected_rate.
  double sigma() const;
};

FalseNegativeStats measure_false_negatives(const FamilyParams& params, std::size_t dims, std::uint32_t distance,
                                           std::uint64_t trials, std::uint64_t seed);

/// Matched split/unsplit indexes over points at distance exactly r+1 from
/// the query; candidates inspected by query_all_within(y, r).
struct ParitySplitStats {
  std::uint64_t trials = 0;
  double unsplit_mean = 0;
  double unsplit_variance = 0;
  double split_mean = 0;
  double split_variance = 0;
  double unsplit_exact = 0;  // expected candidates, closed form
  double split_exact = 0;
};

ParitySplitStats measure_parity_split(std::size_t dims, std::uint32_t r, std::size_t points_per_trial,
                                      std::uint64_t trials, std::uint64_t seed,
                                      Codomain codomain = Codomain::kNonzero);

struct TradeoffSpec {
  std::vector<std::uint64_t> ns{std::uint64_t{1} << 16};
  std::size_t dims = 256;
  std::vector<std::uint32_t> radii{16};
  std::vector<double> cs{2.0};
  std::uint64_t trials = 300;            // CoveringLSH samples per grid point
  std::uint64_t classical_trials = 10;   // classical cost samples per grid point
  std::uint64_t fn_trials = 1000;        // planted-pair samples per method
  std::uint64_t seed = 1;
  SelectOptions select;
  /// Grid points with more than this many mask-point checks per classical
  /// sample are skipped with a warning row.
  double max_work = 2e10;
};

struct TradeoffRow {
  std::uint64_t n = 0;
  std::size_t dims = 0;
  std::uint32_t r = 0;
  double c = 0;
  std::string method;  // covering, classical_delta_0.01, classical_delta_1/n, exhaustive, warning
  std::string detail;
  double predicted_cost = 0;
  double measured_cost = 0;
  double measured_stderr = 0;
  std::uint64_t trials = 0;
  std::uint64_t fn_trials = 0;
  std::uint64_t false_negatives = 0;
  double fn_expected = 0;
};

/// Memory accesses per query (masks evaluated + colliding bucket entries)
/// on a worst-case set with all points at distance 2r from the query.
std::vector<TradeoffRow> run_tradeoff(const TradeoffSpec& spec);

/// C(d, r) with d = round(log2 n): the exhaustive-ball probe count.
double exhaustive_ball_cost(std::uint64_t n, std::uint32_t r);

struct CoveringRow {
  FamilyParams params;
  std::size_t dims = 0;
  std::uint32_t radius = 0;
  std::uint64_t seed = 0;
  std::uint64_t masks = 0;
  FamilyWeight weight;
  bool covering = false;
  std::uint64_t patterns_checked = 0;
  std::string witness;  // empty when covering
};

CoveringRow run_covering(const FamilyParams& params, std::size_t dims, std::uint32_t radius, std::uint64_t seed,
                         CoveringOptions options = {});

struct BenchResult {
  std::uint64_t n = 0;
  std::size_t dims = 0;
  std::uint32_t r = 0;
  double c = 0;
  std::uint64_t queries = 0;
  double build_seconds = 0;
  double query_seconds = 0;
  double queries_per_second = 0;
  std::uint64_t found = 0;
  std::string scheme;
  /// Percentiles (0, 50, 90, 99, 100) of per-query counters.
  std::vector<std::uint64_t> masks_percentiles;
  std::vector<std::uint64_t> candidates_percentiles;
  std::vector<std::uint64_t> distance_percentiles;
};

/// Random data with one planted neighbor per query at distance <= r.
BenchResult run_bench(std::uint64_t n, std::size_t dims, std::uint32_t r, double c, std::uint64_t queries,
                      std::uint64_t seed, const IndexOptions& options = {}, const SelectOptions& select = {});

/// A row of named values for CSV / JSON-lines output.
using Cell = std::variant<std::int64_t, std::uint64_t, double, std::string, bool>;
using Record = std::vector<std::pair<std::string, Cell>>;

enum class OutputFormat : std::uint8_t { kCsv = 0, kJsonLines = 1 };

/// Doubles are rendered with 6 significant digits. CSV gets a header from the
/// first record's names.
void write_records(std::ostream& out, const std::vector<Record>& records, OutputFormat format);

Record to_record(const CollisionStats& s);
Record to_record(const FalseNegativeStats& s);
Record to_record(const TradeoffRow& row);
Record to_record(const CoveringRow& row);
Record to_record(const ParitySplitStats& s, std::size_t dims, std::uint32_t r);

}  // namespace clsh
