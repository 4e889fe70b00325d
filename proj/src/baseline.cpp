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

#include "clsh/baseline.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "clsh/error.hpp"
#include "clsh/rng.hpp"

namespace clsh {

MaskFamily build_classical(std::size_t dims, std::uint32_t k, std::uint64_t L, std::uint64_t seed) {
  if (dims == 0) throw Error(ErrorCode::kZeroDims, "classical family needs d >= 1");
  const auto params = FamilyParams::classical(k, L);
  params.validate();
  Rng rng(seed);
  std::vector<BitVector> masks;
  masks.reserve(L);
  for (std::uint64_t v = 0; v < L; ++v) {
    BitVector a(dims);
    for (std::uint32_t j = 0; j < k; ++j) a.set(rng.uniform(dims));
    masks.push_back(std::move(a));
  }
  return MaskFamily(params, dims, seed, std::move(masks));
}

double classical_collision_prob(std::size_t dims, std::uint32_t k, std::uint32_t distance) {
  if (dims == 0) throw Error(ErrorCode::kZeroDims, "classical collision probability needs d >= 1");
  if (distance > dims) throw Error(ErrorCode::kInvalidArgument, "distance exceeds d");
  return std::pow(1.0 - static_cast<double>(distance) / static_cast<double>(dims), static_cast<double>(k));
}

double classical_false_negative_prob(std::size_t dims, std::uint32_t k, std::uint64_t L, std::uint32_t distance) {
  const double per = classical_collision_prob(dims, k, distance);
  return std::pow(1.0 - per, static_cast<double>(L));
}

ClassicalTuning tune_classical(std::uint64_t n, std::size_t dims, std::uint32_t r, std::uint32_t far_distance,
                               double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::kInvalidArgument, "delta must lie in (0, 1)");
  if (r == 0 || r >= dims || far_distance > dims) {
    throw Error(ErrorCode::kInvalidArgument, "tuning needs 0 < r < d and far distance <= d");
  }
  ClassicalTuning best;
  best.cost = std::numeric_limits<double>::infinity();
  const std::uint32_t k_max = static_cast<std::uint32_t>(8 * dims);
  for (std::uint32_t k = 1; k <= k_max; ++k) {
    const double p1 = classical_collision_prob(dims, k, r);
    if (p1 <= 0.0) break;
    const double needed = std::ceil(std::log(delta) / std::log1p(-p1));
    if (!(needed < 1e12)) break;
    const auto L = static_cast<std::uint64_t>(std::max(1.0, needed));
    const double kappa = static_cast<double>(n) * static_cast<double>(L) * classical_collision_prob(dims, k, far_distance);
    const double cost = static_cast<double>(L) + kappa;
    if (cost < best.cost) {
      best = {k, L, classical_false_negative_prob(dims, k, L, r), kappa, cost};
    }
  }
  if (best.k == 0) throw Error(ErrorCode::kInfeasible, "no (k, L) reaches the requested false negative rate");
  return best;
}

}  // namespace clsh
