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

// Classical bit-sampling LSH, the comparison target for CoveringLSH.

#pragma once

#include <cstddef>
#include <cstdint>

#include "clsh/families.hpp"

namespace clsh {

/// L masks, each the OR of k positions sampled uniformly with replacement.
MaskFamily build_classical(std::size_t dims, std::uint32_t k, std::uint64_t L, std::uint64_t seed);

/// (1 - D/d)^k: per-mask collision probability at distance D.
double classical_collision_prob(std::size_t dims, std::uint32_t k, std::uint32_t distance);

/// (1 - (1 - D/d)^k)^L: probability that no mask collides at distance D.
double classical_false_negative_prob(std::size_t dims, std::uint32_t k, std::uint64_t L, std::uint32_t distance);

struct ClassicalTuning {
  std::uint32_t k = 0;
  std::uint64_t L = 0;
  double false_negative = 0;  // at distance r
  double kappa = 0;           // n L (1 - far/d)^k
  double cost = 0;            // L + kappa
};

/// Picks (k, L) minimizing L + n L (1 - far/d)^k subject to a false negative
/// probability of at most delta at distance r.
ClassicalTuning tune_classical(std::uint64_t n, std::size_t dims, std::uint32_t r, std::uint32_t far_distance,
                               double delta);

}  // namespace clsh
