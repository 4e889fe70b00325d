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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any fails. Runtime limits are part of each criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "clsh/baseline.hpp"
#include "clsh/error.hpp"
#include "clsh/families.hpp"
#include "clsh/harness.hpp"
#include "clsh/index.hpp"
#include "clsh/scheme.hpp"

using namespace clsh;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "FAILED: " << what << "; ";
    pass = pass && ok;
  }
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<void(Verdict&)> body;
};

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// 1. Basic families over d=16 are r-covering for every seed and codomain.
void basic_covering(Verdict& v) {
  int families = 0;
  for (const Codomain cod : {Codomain::kNonzero, Codomain::kFull}) {
    for (std::uint32_t r = 1; r <= 4; ++r) {
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const MaskFamily fam = build_family(FamilyParams::basic(r, cod), 16, seed);
        v.require(fam.size() == (std::size_t{2} << r) - 1, "basic family size 2^(r+1)-1");
        v.require(is_r_covering(fam, r).covering, "basic r=" + std::to_string(r) + " seed " + std::to_string(seed));
        ++families;
      }
    }
  }
  v.detail << families << " families (r=1..4, 20 seeds, nonzero and full codomain) all r-covering";
}

// 2. Two partitions of seven dimensions, each an A7 under a seeded relabeling.
void partitioned_covering(Verdict& v) {
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(mix_seed(seed, 77));
    std::vector<std::uint32_t> dims(14);
    std::iota(dims.begin(), dims.end(), 0u);
    for (std::size_t i = 13; i > 0; --i) std::swap(dims[i], dims[rng.uniform(i + 1)]);
    std::vector<std::uint64_t> values(14);
    std::vector<std::uint32_t> starts(14);
    for (std::uint32_t part = 0; part < 2; ++part) {
      std::vector<std::uint64_t> labels{1, 2, 3, 4, 5, 6, 7};
      for (std::size_t i = 6; i > 0; --i) std::swap(labels[i], labels[rng.uniform(i + 1)]);
      for (std::uint32_t j = 0; j < 7; ++j) {
        values[dims[part * 7 + j]] = labels[j];
        starts[dims[part * 7 + j]] = part;
      }
    }
    const MappingTable m = MappingTable::partitioned(5, 1, 2, 1, values, starts);
    const MaskFamily fam = build_partitioned_masks(14, 5, 1, 2, 1, m);
    const FamilyWeight w = family_weight(fam);
    const CoveringResult res = is_r_covering(fam, 5);
    v.require(fam.size() == 14, "14 masks");
    v.require(w.ones == 4 && w.dims == 14, "weight 4/14");
    v.require(res.covering && res.patterns_checked == 2002, "5-covering over 2002 patterns");
    // A randomly sampled (2,1,1) table must cover too.
    v.require(is_r_covering(build_family(FamilyParams::partitioned(5, 1, 2, 1), 14, seed), 5).covering,
              "sampled partitioned family");
    ok += res.covering;
  }
  v.detail << ok << "/20 seeds: 14 masks, weight 4/14, 2002/2002 weight-5 patterns zeroed";
}

// 3. Prime families over d=12, and p=2 against the basic builder.
void prime_covering(Verdict& v) {
  int passes = 0;
  for (const std::uint64_t p : {3u, 5u}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const MaskFamily fam = build_family(FamilyParams::prime(2, p), 12, seed);
      v.require(fam.size() == p * p * p - 1, "prime family size p^(r+1)-1");
      const bool ok = is_r_covering(fam, 2).covering;
      v.require(ok, "prime p=" + std::to_string(p) + " seed " + std::to_string(seed));
      passes += ok;
    }
  }
  int identical = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MappingTable shared = MappingTable::sample(FamilyParams::prime(2, 2), 12, seed);
    std::vector<std::uint64_t> values;
    for (std::size_t i = 0; i < 12; ++i) {
      std::uint64_t x = 0;
      const auto digits = shared.digits(i);
      for (std::size_t j = 0; j < digits.size(); ++j) x |= std::uint64_t{digits[j]} << j;
      values.push_back(x);
    }
    const MaskFamily prime = build_prime_masks(12, 2, 2, shared);
    const MaskFamily basic = build_basic_masks(12, 2, MappingTable::basic(2, values));
    v.require(prime.masks() == basic.masks(), "p=2 equals basic");
    identical += prime.masks() == basic.masks();
  }
  v.detail << passes << "/40 prime families 2-covering; p=2 bit-identical to basic for " << identical << "/20 seeds";
}

// 4. Monte Carlo collision counts against the closed forms.
void collision_law(Verdict& v) {
  struct Case {
    FamilyParams params;
    std::uint32_t distance;
  };
  std::vector<Case> cases;
  for (const std::uint32_t D : {3u, 5u, 8u}) cases.push_back({FamilyParams::basic(2), D});
  for (const std::uint32_t D : {10u, 20u, 31u}) cases.push_back({FamilyParams::basic(6), D});
  for (const std::uint32_t D : {3u, 5u, 8u}) cases.push_back({FamilyParams::basic(2, Codomain::kFull), D});
  for (const std::uint32_t D : {8u, 12u, 20u}) cases.push_back({FamilyParams::partitioned(6, 2, 3, 1), D});
  for (const std::uint32_t D : {6u, 10u, 16u}) cases.push_back({FamilyParams::partitioned(8, 1, 4, 2), D});
  for (const std::uint32_t D : {3u, 5u, 8u}) cases.push_back({FamilyParams::prime(2, 3), D});
  for (const std::uint32_t D : {3u, 4u, 6u}) cases.push_back({FamilyParams::prime(2, 5), D});
  double worst = 0;
  std::uint64_t seed = 400;
  for (const auto& c : cases) {
    const CollisionStats s = measure_collisions(c.params, 128, c.distance, 10000, seed++);
    const double sigma = s.sigma_distance();
    worst = std::max(worst, sigma);
    const std::string tag = std::string(to_string(c.params.kind)) + " r=" + std::to_string(c.params.r) +
                            " D=" + std::to_string(c.distance);
    v.require(sigma <= 4.0, tag + " mean " + g6(s.mean) + " vs exact " + g6(s.exact));
    v.require(s.exact <= s.bound * (1 + 1e-12), tag + " exact above bound");
    if (c.params.kind == FamilyKind::kBasic) {
      const double limit = std::exp2(static_cast<double>(c.params.r) + 1 - c.distance);
      v.require(s.exact <= limit * (1 + 1e-12), tag + " exceeds 2^(r+1-D)");
    }
    if (c.params.kind == FamilyKind::kPrime) {
      const double limit = std::pow(static_cast<double>(c.params.p), static_cast<double>(c.params.r) + 1 - c.distance);
      v.require(s.exact <= limit * (1 + 1e-12), tag + " exceeds p^(r+1-D)");
    }
  }
  v.detail << cases.size() << " (family, D) cases x 10^4 samples; worst deviation " << g6(worst)
           << " sigma; every exact value <= its bound";
}

// 5. Closed-form values from the worked example.
void worked_example_analytic(Verdict& v) {
  const double p10 = classical_collision_prob(128, 78, 10);
  const double p31 = classical_collision_prob(128, 78, 31);
  const double fn = classical_false_negative_prob(128, 78, 2047, 10);
  const SchemeChoice choice = select_scheme(std::uint64_t{1} << 30, 128, 10, 3.0);
  v.require(std::abs(p10 - 0.0018) <= 1e-4, "collision probability at distance 10");
  v.require(p31 <= std::exp2(-31.0), "collision probability at distance 31");
  v.require(fn > 0.027, "false negative probability");
  v.require(choice.chosen.family_size == 2047.0, "|A| = 2047");
  v.detail << "p(10)=" << g6(p10) << " p(31)=" << g6(p31) << " (2^-31=" << g6(std::exp2(-31.0)) << ") fn=" << g6(fn)
           << " |A|=" << g6(choice.chosen.family_size);
}

// 6. Planted pairs at distance 10 in d=128.
void worked_example_empirical(Verdict& v) {
  const FalseNegativeStats cov = measure_false_negatives(FamilyParams::basic(10), 128, 10, 10000, 600);
  const FalseNegativeStats cls = measure_false_negatives(FamilyParams::classical(78, 2047), 128, 10, 10000, 601);
  const double dev = std::abs(cls.rate() - cls.expected_rate) / cls.sigma();
  v.require(cov.misses == 0, "covering false negatives");
  v.require(dev <= 4.0, "classical rate within 4 sigma");
  v.require(cls.expected_rate > 0.027, "analytic classical rate > 0.027");
  v.detail << "covering misses " << cov.misses << "/10^4; classical rate " << g6(cls.rate()) << " vs analytic "
           << g6(cls.expected_rate) << " (" << g6(dev) << " sigma)";
}

// 7. Index answers against the linear scan.
void end_to_end(Verdict& v) {
  const std::size_t d = 128;
  const std::uint32_t r = 8;
  std::uint64_t queries = 0;
  std::uint64_t exact_sets = 0;
  std::uint64_t near_ok = 0;
  std::string scheme;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    PointSet points = gen_random(10000, d, mix_seed(seed, 700));
    Rng rng(mix_seed(seed, 701));
    std::vector<BitVector> ys;
    for (int q = 0; q < 100; ++q) {
      ys.push_back(random_vector(d, rng));
      const std::uint32_t dist[] = {static_cast<std::uint32_t>(rng.uniform(r + 1))};
      points = plant_near(points, ys.back(), dist, rng.next()).points;
    }
    const SchemeChoice choice = select_scheme(points.size(), d, r, 2.0);
    scheme = describe_candidate(choice.chosen);
    const Index index = Index::build(points, choice, mix_seed(seed, 702));
    for (const auto& y : ys) {
      ++queries;
      const auto oracle = brute_force_within(points, y, r);
      exact_sets += index.query_all_within(y, r).neighbors == oracle;
      const QueryOutcome near = index.query_near(y, r, 2.0);
      near_ok += !oracle.empty() && near.result && near.result->distance < choice.cr;
    }
  }
  v.require(exact_sets == queries, "query_all_within equals the scan");
  v.require(near_ok == queries, "query_near answers below cr");
  v.detail << exact_sets << "/" << queries << " range answers equal the scan; " << near_ok << "/" << queries
           << " near answers < cr; scheme " << scheme;
}

// 8. Exact nearest neighbor and its mask budget.
void nearest_neighbor(Verdict& v) {
  const std::size_t d = 64;
  const std::uint32_t r = 10;
  const PointSet points = gen_random(2000, d, 800);
  const Index index = Index::build(points, fixed_scheme(2000, d, 2.0, FamilyParams::basic(r)), 801);
  Rng rng(802);
  std::uint64_t in_range = 0;
  std::uint64_t exact = 0;
  std::uint64_t budget = 0;
  for (int q = 0; q < 1000; ++q) {
    const BitVector y = flip_random(points[rng.uniform(2000)], static_cast<std::uint32_t>(rng.uniform(13)), rng);
    const auto truth = brute_force_nearest(points, y);
    const QueryOutcome o = index.nearest_neighbor(y);
    if (truth->distance > r) continue;
    ++in_range;
    if (o.result && o.result->distance == truth->distance) ++exact;
    if (o.result && o.masks_evaluated <= (std::uint64_t{2} << o.result->distance) - 1) ++budget;
  }
  v.require(in_range > 0 && exact == in_range, "exact distances");
  v.require(budget == in_range, "masks scanned <= 2^(D+1)-1");
  v.detail << exact << "/" << in_range << " queries with oracle distance <= 10 answered exactly; " << budget
           << " within 2^(D+1)-1 masks";
}

// 9. Size bounds for A1 and A2 over the grid.
void size_bounds(Verdict& v) {
  std::uint64_t checked = 0;
  std::uint64_t a2_checked = 0;
  std::uint64_t built = 0;
  for (int lg = 10; lg <= 30; ++lg) {
    const std::uint64_t n = std::uint64_t{1} << lg;
    const double nd = static_cast<double>(n);
    for (std::uint32_t r = 4; r <= 64; ++r) {
      for (const double c : {1.5, 2.0, 3.0}) {
        const FamilyParams a1 = a1_params(n, r, c);
        const double s1 = a1.family_size_real();
        const double formula1 = a1.b * (std::exp2(a1.t * a1.reduced_radius() + 1.0) - 1.0);
        v.require(s1 == formula1, "A1 count formula");
        v.require(s1 <= std::exp2(r + 1.0) * std::pow(nd, 1.0 / c) * (1 + 1e-12), "A1 bound");
        if (const auto exact = a1.family_size()) {
          v.require(static_cast<double>(*exact) == formula1, "A1 exact count");
          if (*exact <= 4096) {
            v.require(build_family(a1, 32, lg * 100 + r).size() == *exact, "A1 built size");
            ++built;
          }
        }
        if (const auto a2 = a2_params(n, r, c)) {
          const double s2 = a2->family_size_real();
          const double formula2 = a2->b * (std::exp2(a2->t * a2->reduced_radius() + 1.0) - 1.0);
          v.require(s2 == formula2, "A2 count formula");
          v.require(s2 <= 8.0 * r * std::pow(nd, std::log(4.0) / c) * (1 + 1e-12), "A2 bound");
          if (const auto exact = a2->family_size(); exact && *exact <= 4096) {
            v.require(build_family(*a2, 64, lg * 100 + r + 7).size() == *exact, "A2 built size");
            ++built;
          }
          ++a2_checked;
        }
        ++checked;
      }
    }
  }
  v.detail << checked << " grid points (n=2^10..2^30, r=4..64, c in {1.5,2,3}); A2 defined at " << a2_checked
           << "; " << built << " small families built and counted";
}

// 10. Trade-off harness at desk scale.
void tradeoff(Verdict& v) {
  TradeoffSpec spec;
  spec.ns = {std::uint64_t{1} << 16};
  spec.dims = 256;
  spec.radii = {16};
  spec.cs = {2.0};
  spec.seed = 1000;
  const auto rows = run_tradeoff(spec);
  const TradeoffRow* cov = nullptr;
  const TradeoffRow* loose = nullptr;
  const TradeoffRow* strict = nullptr;
  for (const auto& row : rows) {
    if (row.method == "covering") cov = &row;
    if (row.method == "classical_delta_0.01") loose = &row;
    if (row.method == "classical_delta_1/n") strict = &row;
  }
  v.require(cov && loose && strict, "all methods reported");
  if (!v.pass) return;
  const double dev = std::abs(cov->measured_cost - cov->predicted_cost) / cov->measured_stderr;
  v.require(dev <= 4.0, "covering cost within 4 sigma");
  v.require(cov->false_negatives == 0, "covering has no false negatives");
  v.require(strict->measured_cost > loose->measured_cost, "delta=1/n costs more than delta=1%");
  v.detail << "covering measured " << g6(cov->measured_cost) << " vs predicted " << g6(cov->predicted_cost) << " ("
           << g6(dev) << " sigma); classical delta=1/n " << g6(strict->measured_cost) << " > delta=1% "
           << g6(loose->measured_cost);
}

// 11. Parity split at distance r+1.
void parity_split(Verdict& v) {
  const ParitySplitStats s = measure_parity_split(64, 6, 20, 2000, 1100);
  const double se = std::sqrt(s.split_variance / s.trials + 0.25 * s.unsplit_variance / s.trials);
  v.require(s.split_exact <= 0.5 * s.unsplit_exact, "expected split collisions at most half");
  v.require(s.split_mean <= 0.5 * s.unsplit_mean + 4 * se, "measured split collisions at most half + 4 sigma");
  v.detail << "split " << g6(s.split_mean) << " (exact " << g6(s.split_exact) << ") vs unsplit "
           << g6(s.unsplit_mean) << " (exact " << g6(s.unsplit_exact) << ")";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "covering guarantee, basic family", 10, basic_covering},
      {2, "covering guarantee, partitioned family", 5, partitioned_covering},
      {3, "covering guarantee, prime family", 5, prime_covering},
      {4, "collision law", 60, collision_law},
      {5, "worked example, analytic", 1, worked_example_analytic},
      {6, "worked example, empirical", 120, worked_example_empirical},
      {7, "end-to-end zero false negatives", 120, end_to_end},
      {8, "nearest neighbor exactness", 60, nearest_neighbor},
      {9, "family size bounds", 1, size_bounds},
      {10, "trade-off harness", 300, tradeoff},
      {11, "parity split", 60, parity_split},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.require(secs <= c.limit_seconds, "runtime above " + g6(c.limit_seconds) + " s");
    failed += !v.pass;
    std::printf("%s [%2d] %s: %s (%.2f s, limit %g s)\n", v.pass ? "PASS" : "FAIL", c.id, c.title,
                v.detail.str().c_str(), secs, c.limit_seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
