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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "clsh/error.hpp"
#include "clsh/harness.hpp"

using namespace clsh;

namespace {

// Counts masks a with a AND e = 0 by enumerating the real family.
std::uint64_t enumerate_colliding(const MaskFamily& fam, std::span<const std::uint32_t> support) {
  BitVector e(fam.dims());
  for (const auto i : support) e.set(i, true);
  std::uint64_t hits = 0;
  for (const auto& a : fam.masks()) hits += (a & e).none();
  return hits;
}

std::vector<std::uint32_t> random_support(std::size_t d, std::uint32_t D, Rng& rng) {
  const BitVector x = flip_random(BitVector(d), D, rng);
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < d; ++i) {
    if (x.test(i)) out.push_back(i);
  }
  return out;
}

}  // namespace

TEST_CASE("flip_random flips exactly the requested count") {
  Rng rng(1);
  for (std::uint32_t D : {0u, 1u, 7u, 63u, 64u, 100u}) {
    const BitVector y = random_vector(100, rng);
    CHECK(hamming_distance(y, flip_random(y, D, rng)) == D);
  }
}

TEST_CASE("worst-case sets sit at distance 2r") {
  Rng rng(2);
  const BitVector y = random_vector(64, rng);
  const PointSet s = gen_worst_case(y, 50, 16, 3);
  REQUIRE(s.size() == 50);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(hamming_distance(s[i], y) == 32);
  CHECK(brute_force_nearest(gen_worst_case(y, 1000, 16, 4), y)->distance == 32);
  CHECK_THROWS_AS((void)gen_worst_case(y, 5, 33, 1), Error);
}

TEST_CASE("planted points and the linear-scan oracle") {
  const PointSet base = gen_random(200, 128, 5);
  Rng rng(6);
  const BitVector y = random_vector(128, rng);
  const std::uint32_t dists[] = {3, 0, 9};
  const Planted p = plant_near(base, y, dists, 7);
  REQUIRE(p.points.size() == 203);
  REQUIRE(p.ids.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(hamming_distance(p.points[p.ids[i]], y) == dists[i]);
  const auto within = brute_force_within(p.points, y, 9);
  REQUIRE(within.size() == 3);  // random 128-bit points are ~64 away
  CHECK(within[0].id < within[1].id);
  CHECK(brute_force_nearest(p.points, y)->distance == 0);

  PointSet single(16);
  single.push_back(BitVector(16));
  CHECK(brute_force_nearest(single, BitVector(16))->id == 0);
  CHECK_FALSE(brute_force_nearest(PointSet(16), BitVector(16)));
}

TEST_CASE("nearest oracle breaks ties by lowest id") {
  PointSet s(8);
  BitVector a(8), b(8);
  a.set(1, true);
  b.set(2, true);
  s.push_back(b);
  s.push_back(a);
  s.push_back(a);
  const auto nn = brute_force_nearest(s, BitVector(8));
  CHECK(nn->id == 0);
  CHECK(nn->distance == 1);
}

TEST_CASE("rank counter matches mask enumeration") {
  Rng rng(10);
  const std::size_t d = 60;
  const FamilyParams cases[] = {
      FamilyParams::basic(5),
      FamilyParams::basic(4, Codomain::kFull),
      FamilyParams::basic(4, Codomain::kBalanced),
      FamilyParams::partitioned(6, 2, 3, 2),
      FamilyParams::partitioned(4, 1, 4, 1),
      FamilyParams::prime(2, 3),
      FamilyParams::prime(2, 5),
  };
  for (const auto& params : cases) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const MappingTable m = MappingTable::sample(params, d, seed);
      const MaskFamily fam = build_family(params, d, seed);
      for (std::uint32_t D : {0u, 1u, 3u, 6u, 12u, 40u}) {
        const auto support = random_support(d, D, rng);
        CAPTURE(to_string(params.kind));
        CAPTURE(D);
        CHECK(colliding_masks(m, support) == enumerate_colliding(fam, support));
      }
    }
  }
}

TEST_CASE("measured collisions agree with the closed form") {
  const auto basic = measure_collisions(FamilyParams::basic(3), 40, 5, 2000, 11);
  CHECK(basic.sigma_distance() < 4.0);
  CHECK(basic.exact == doctest::Approx(collision_expectation(FamilyParams::basic(3), 5).exact));
  CHECK(basic.mean <= basic.bound + 4 * basic.stderr_mean());

  const auto part = measure_collisions(FamilyParams::partitioned(4, 2, 2, 1), 40, 6, 1000, 12);
  CHECK(part.sigma_distance() < 4.0);
  const auto prime = measure_collisions(FamilyParams::prime(2, 3), 30, 4, 1000, 13);
  CHECK(prime.sigma_distance() < 4.0);

  // Within radius every trial collides at least once.
  const auto near = measure_collisions(FamilyParams::basic(4), 40, 3, 300, 14);
  CHECK(near.total_collisions >= 300);
}

TEST_CASE("false negatives") {
  const auto covering = measure_false_negatives(FamilyParams::basic(4), 64, 4, 500, 20);
  CHECK(covering.misses == 0);
  CHECK(covering.expected_rate == 0.0);
  const auto beyond = measure_false_negatives(FamilyParams::basic(2), 64, 30, 50, 21);
  CHECK(std::isnan(beyond.expected_rate));

  const auto classical = measure_false_negatives(FamilyParams::classical(8, 4), 64, 6, 4000, 22);
  CHECK(classical.expected_rate > 0.05);
  CHECK(std::abs(classical.rate() - classical.expected_rate) <= 4 * classical.sigma());
}

TEST_CASE("small trade-off run") {
  TradeoffSpec spec;
  spec.ns = {1024};
  spec.dims = 64;
  spec.radii = {4};
  spec.cs = {2.0};
  spec.trials = 300;
  spec.classical_trials = 3;
  spec.fn_trials = 100;
  spec.seed = 30;
  const auto rows = run_tradeoff(spec);
  const TradeoffRow* covering = nullptr;
  const TradeoffRow* loose = nullptr;
  const TradeoffRow* strict = nullptr;
  const TradeoffRow* ball = nullptr;
  for (const auto& row : rows) {
    if (row.method == "covering") covering = &row;
    if (row.method == "classical_delta_0.01") loose = &row;
    if (row.method == "classical_delta_1/n") strict = &row;
    if (row.method == "exhaustive") ball = &row;
  }
  REQUIRE(covering);
  REQUIRE(loose);
  REQUIRE(strict);
  REQUIRE(ball);
  CHECK(std::abs(covering->measured_cost - covering->predicted_cost) <= 4 * covering->measured_stderr + 1e-9);
  CHECK(covering->false_negatives == 0);
  CHECK(strict->predicted_cost > loose->predicted_cost);
  CHECK(ball->predicted_cost == doctest::Approx(210.0));  // C(10, 4)
  CHECK(exhaustive_ball_cost(std::uint64_t{1} << 16, 16) == doctest::Approx(1.0));
}

TEST_CASE("covering rows") {
  const auto good = run_covering(FamilyParams::basic(3), 20, 3, 40);
  CHECK(good.covering);
  CHECK(good.masks == 15);
  CHECK(good.witness.empty());
  CHECK(good.patterns_checked == 1140);  // C(20, 3)
  const auto bad = run_covering(FamilyParams::basic(1), 20, 3, 40);
  CHECK_FALSE(bad.covering);
  CHECK(bad.witness.size() == 20);
}

TEST_CASE("bench reports planted hits") {
  const auto b = run_bench(2000, 64, 4, 2.0, 50, 50);
  CHECK(b.queries == 50);
  CHECK(b.found == 50);
  REQUIRE(b.masks_percentiles.size() == 5);
  CHECK(b.masks_percentiles.front() <= b.masks_percentiles.back());
}

TEST_CASE("records render six significant digits") {
  std::vector<Record> recs{
      {{"name", std::string("a,b")}, {"x", 1.0 / 3.0}, {"n", std::uint64_t{7}}, {"ok", true}},
      {{"name", std::string("plain")}, {"x", std::nan("")}, {"n", std::uint64_t{8}}, {"ok", false}},
  };
  std::ostringstream csv;
  write_records(csv, recs, OutputFormat::kCsv);
  CHECK(csv.str() == "name,x,n,ok\n\"a,b\",0.333333,7,true\nplain,nan,8,false\n");
  std::ostringstream jsonl;
  write_records(jsonl, recs, OutputFormat::kJsonLines);
  CHECK(jsonl.str() ==
        "{\"name\":\"a,b\",\"x\":0.333333,\"n\":7,\"ok\":true}\n"
        "{\"name\":\"plain\",\"x\":null,\"n\":8,\"ok\":false}\n");
}

TEST_CASE("collision records keep the fixed columns") {
  const auto s = measure_collisions(FamilyParams::basic(2), 16, 3, 10, 60);
  const Record rec = to_record(s);
  std::vector<std::string> names;
  for (const auto& [name, cell] : rec) names.push_back(name);
  CHECK(names == std::vector<std::string>{"kind", "d", "r", "t", "b", "q", "p", "distance", "trials",
                                          "mean_collisions", "exact_expectation", "paper_bound"});
}
