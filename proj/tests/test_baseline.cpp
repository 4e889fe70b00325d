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

#include "clsh/baseline.hpp"
#include "clsh/harness.hpp"

using namespace clsh;

TEST_CASE("one sample, one mask") {
  const MaskFamily fam = build_classical(50, 1, 1, 3);
  REQUIRE(fam.size() == 1);
  CHECK(hamming_weight(fam[0]) == 1);
}

TEST_CASE("worked example family shape") {
  const MaskFamily fam = build_classical(128, 78, 2047, 5);
  CHECK(fam.size() == 2047);
  for (const auto& a : fam.masks()) CHECK(hamming_weight(a) <= 78);
  CHECK(fam == build_classical(128, 78, 2047, 5));
  CHECK_FALSE(fam == build_classical(128, 78, 2047, 6));
}

TEST_CASE("collision probabilities") {
  CHECK(classical_collision_prob(128, 78, 0) == 1.0);
  CHECK(classical_collision_prob(128, 78, 10) == doctest::Approx(0.0018).epsilon(0.0001 / 0.0018));
  CHECK(std::abs(classical_collision_prob(128, 78, 10) - 0.0018) <= 1e-4);
  CHECK(classical_collision_prob(128, 78, 31) <= std::ldexp(1.0, -31));
  CHECK(classical_false_negative_prob(128, 78, 2047, 10) > 0.027);
  CHECK(classical_false_negative_prob(128, 78, 2047, 0) == 0.0);
  double prev = 1.0;
  for (std::uint64_t L = 1; L <= 1 << 20; L *= 4) {
    const double fn = classical_false_negative_prob(64, 10, L, 8);
    CHECK(fn <= prev);
    prev = fn;
  }
  CHECK(prev < 1e-12);
}

TEST_CASE("tuning meets the target and costs more for smaller delta") {
  const auto loose = tune_classical(1 << 16, 256, 16, 32, 0.01);
  const auto tight = tune_classical(1 << 16, 256, 16, 32, 1.0 / (1 << 16));
  CHECK(loose.false_negative <= 0.01);
  CHECK(tight.false_negative <= 1.0 / (1 << 16));
  CHECK(tight.cost > loose.cost);
  CHECK(loose.cost == doctest::Approx(loose.L + loose.kappa));
}

TEST_CASE("empirical false negative rate matches the formula") {
  const auto s = measure_false_negatives(FamilyParams::classical(8, 5), 32, 4, 4000, 99);
  CHECK(s.expected_rate == doctest::Approx(classical_false_negative_prob(32, 8, 5, 4)));
  CHECK(std::abs(s.rate() - s.expected_rate) <= 4 * s.sigma());
}

TEST_CASE("classical answers are a subset of the true neighbors") {
  const PointSet base = gen_random(300, 64, 1);
  Rng rng(2);
  const BitVector y = random_vector(64, rng);
  const std::uint32_t dists[] = {1, 2, 3, 4, 5, 6};
  const Planted planted = plant_near(base, y, dists, 3);
  const SchemeChoice scheme = classical_scheme(planted.points.size(), 64, 6, 2.0, 12, 6);
  const Index index = Index::build(planted.points, scheme, 4);
  const auto got = index.query_all_within(y, 6).neighbors;
  const auto truth = brute_force_within(planted.points, y, 6);
  for (const auto& nb : got) CHECK(std::find(truth.begin(), truth.end(), nb) != truth.end());
}
