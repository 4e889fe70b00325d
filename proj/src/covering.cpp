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

#include <algorithm>
#include <string>
#include <vector>

#include "clsh/error.hpp"
#include "clsh/families.hpp"

namespace clsh {
namespace {

// Depth-first enumeration of w-subsets of {0..d-1} in lexicographic order.
// zero_sets[i] is a bitset over masks with bit h set iff mask h is 0 at i;
// a pattern is covered iff the AND of its zero sets is nonempty. The AND of
// a prefix is kept per depth so an empty prefix prunes its whole subtree.
class CoveringSearch {
 public:
  CoveringSearch(std::span<const BitVector> masks, std::size_t dims, std::size_t weight)
      : dims_(dims), weight_(weight), words_((masks.size() + 63) / 64) {
    zero_sets_.assign(dims * words_, 0);
    for (std::size_t h = 0; h < masks.size(); ++h) {
      for (std::size_t i = 0; i < dims; ++i) {
        if (!masks[h].test(i)) zero_sets_[i * words_ + (h >> 6)] |= std::uint64_t{1} << (h & 63);
      }
    }
    prefix_.assign((weight + 1) * words_, 0);
    for (std::size_t h = 0; h < masks.size(); ++h) prefix_[h >> 6] |= std::uint64_t{1} << (h & 63);
    chosen_.resize(weight);
  }

  CoveringResult run() {
    CoveringResult result;
    result.covering = !empty(0);
    if (!result.covering) {
      result.witness = make_witness(0);
      return result;
    }
    if (weight_ == 0) {
      result.patterns_checked = 1;
      return result;
    }
    const bool ok = descend(0, 0, result);
    result.covering = ok;
    return result;
  }

 private:
  bool empty(std::size_t depth) const {
    const std::uint64_t* row = &prefix_[depth * words_];
    return std::all_of(row, row + words_, [](std::uint64_t w) { return w == 0; });
  }

  bool descend(std::size_t depth, std::size_t first, CoveringResult& result) {
    const std::size_t last = dims_ - (weight_ - depth);
    for (std::size_t i = first; i <= last; ++i) {
      chosen_[depth] = i;
      const std::uint64_t* parent = &prefix_[depth * words_];
      std::uint64_t* child = &prefix_[(depth + 1) * words_];
      const std::uint64_t* zeros = &zero_sets_[i * words_];
      std::uint64_t any = 0;
      for (std::size_t w = 0; w < words_; ++w) {
        child[w] = parent[w] & zeros[w];
        any |= child[w];
      }
      if (any == 0) {
        result.patterns_checked += 1;
        result.witness = make_witness(depth + 1);
        return false;
      }
      if (depth + 1 == weight_) {
        result.patterns_checked += 1;
      } else if (!descend(depth + 1, i + 1, result)) {
        return false;
      }
    }
    return true;
  }

  // Completes the first `fixed` chosen positions to a weight-w pattern; any
  // superset of an uncovered pattern is uncovered.
  BitVector make_witness(std::size_t fixed) const {
    BitVector x(dims_);
    std::size_t next = 0;
    for (std::size_t j = 0; j < fixed; ++j) {
      x.set(chosen_[j]);
      next = chosen_[j] + 1;
    }
    for (std::size_t j = fixed; j < weight_; ++j) x.set(next++);
    return x;
  }

  std::size_t dims_;
  std::size_t weight_;
  std::size_t words_;
  std::vector<std::uint64_t> zero_sets_;
  std::vector<std::uint64_t> prefix_;
  std::vector<std::size_t> chosen_;
};

}  // namespace

CoveringResult is_r_covering(std::span<const BitVector> masks, std::size_t dims, std::uint32_t r,
                             CoveringOptions options) {
  if (dims == 0) throw Error(ErrorCode::kZeroDims, "covering check needs d >= 1");
  for (const auto& a : masks) {
    if (a.dims() != dims) throw Error(ErrorCode::kDimensionMismatch, "mask dims differ from d");
  }
  const std::size_t weight = std::min<std::size_t>(r, dims);
  const std::uint64_t patterns = binomial_saturating(dims, weight);
  if (patterns > options.max_patterns) {
    throw Error(ErrorCode::kTooLargeToVerify, "C(" + std::to_string(dims) + ", " + std::to_string(weight) +
                                                  ") = " + std::to_string(patterns) + " patterns exceed the budget of " +
                                                  std::to_string(options.max_patterns));
  }
  return CoveringSearch(masks, dims, weight).run();
}

CoveringResult is_r_covering(const MaskFamily& family, std::uint32_t r, CoveringOptions options) {
  return is_r_covering(family.masks(), family.dims(), r, options);
}

FamilyWeight family_weight(std::span<const BitVector> masks) {
  if (masks.empty()) throw Error(ErrorCode::kInvalidArgument, "weight of an empty family is undefined");
  FamilyWeight w{hamming_weight(masks[0]), masks[0].dims()};
  for (const auto& a : masks) w.ones = std::min<std::uint64_t>(w.ones, hamming_weight(a));
  return w;
}

FamilyWeight family_weight(const MaskFamily& family) { return family_weight(family.masks()); }

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace clsh
