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

// Covering mask families.
//
// A mask family A defines the hash functions x -> x AND a for a in A. The
// constructions here are r-covering for every mapping table: any error
// pattern of weight <= r is zeroed by at least one mask, so pairs within
// distance r always collide.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "clsh/bits.hpp"

namespace clsh {

enum class FamilyKind : std::uint8_t {
  kBasic = 1,        // A(m): parity of <m(i), v> over GF(2)
  kPartitioned = 2,  // A(m, s): b cyclic partitions, t parity checks per dimension
  kPrime = 3,        // A~(m): <m(i), v> mod p
  kClassical = 4,    // bit sampling with k samples per mask, L masks
};

/// Distribution of the per-dimension mapping values of a basic family.
enum class Codomain : std::uint8_t {
  kNonzero = 0,   // uniform over {0,1}^{r+1} \ {0}
  kFull = 1,      // uniform over {0,1}^{r+1}
  kBalanced = 2,  // round-robin over the nonzero vectors, then shuffled
};

const char* to_string(FamilyKind kind) noexcept;
const char* to_string(Codomain codomain) noexcept;

struct FamilyParams {
  FamilyKind kind = FamilyKind::kBasic;
  std::uint32_t r = 0;
  std::uint32_t t = 1;
  std::uint32_t b = 1;
  std::uint32_t q = 1;
  std::uint64_t p = 2;
  std::uint32_t k = 0;  // classical: samples per mask
  std::uint64_t L = 0;  // classical: number of masks
  Codomain codomain = Codomain::kNonzero;

  static FamilyParams basic(std::uint32_t r, Codomain codomain = Codomain::kNonzero);
  static FamilyParams partitioned(std::uint32_t r, std::uint32_t t, std::uint32_t b, std::uint32_t q);
  static FamilyParams prime(std::uint32_t r, std::uint64_t p);
  static FamilyParams classical(std::uint32_t k, std::uint64_t L);

  /// r' = floor(r q / b) for partitioned families, r otherwise.
  std::uint32_t reduced_radius() const noexcept;
  /// Length of the index vectors v: t r' + 1 (partitioned), r + 1 (basic, prime).
  std::uint32_t vector_width() const noexcept;
  /// Exact mask count, or nullopt when it does not fit in 64 bits.
  std::optional<std::uint64_t> family_size() const noexcept;
  double family_size_real() const noexcept;

  /// Throws Error(kInvalidArgument) describing the first violated constraint.
  void validate() const;

  bool operator==(const FamilyParams&) const = default;
};

/// Per-dimension random values that determine a family (m, and s for
/// partitioned families). Dimensions are 0-based; partitions are 0..b-1.
class MappingTable {
 public:
  static MappingTable sample(const FamilyParams& params, std::size_t dims, std::uint64_t seed);

  /// Explicit tables. `values` holds one (r+1)-bit vector per dimension.
  static MappingTable basic(std::uint32_t r, std::vector<std::uint64_t> values);
  /// `values` holds t vectors per dimension (dimension-major); `starts` the
  /// first partition of each dimension's interval.
  static MappingTable partitioned(std::uint32_t r, std::uint32_t t, std::uint32_t b, std::uint32_t q,
                                  std::vector<std::uint64_t> values, std::vector<std::uint32_t> starts);
  /// `digits` holds r+1 residues per dimension (dimension-major).
  static MappingTable prime(std::uint32_t r, std::uint64_t p, std::vector<std::uint32_t> digits);

  const FamilyParams& params() const noexcept { return params_; }
  std::size_t dims() const noexcept { return dims_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t value(std::size_t dim, std::size_t j = 0) const { return values_[dim * params_.t + j]; }
  std::span<const std::uint32_t> digits(std::size_t dim) const {
    return std::span<const std::uint32_t>(digits_).subspan(dim * (params_.r + 1), params_.r + 1);
  }
  std::uint32_t interval_start(std::size_t dim) const { return starts_[dim]; }
  /// Whether dimension `dim` belongs to partition k, i.e. k is among the q
  /// consecutive partitions starting at s(dim), modulo b.
  bool in_partition(std::size_t dim, std::uint32_t k) const {
    return (k + params_.b - starts_[dim]) % params_.b < params_.q;
  }

 private:
  FamilyParams params_;
  std::size_t dims_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<std::uint64_t> values_;
  std::vector<std::uint32_t> starts_;
  std::vector<std::uint32_t> digits_;
};

/// An ordered list of masks plus the parameters that produced it.
///
/// Canonical order: basic and prime masks are indexed by v = 1, 2, 3, ...
/// read as an integer whose base-2 (base-p) digit j is component j of v.
/// Partitioned masks are ordered partition-major: index k (2^w - 1) + v - 1.
/// With this order the first 2^{R+1}-1 basic masks (p^{R+1}-1 prime masks)
/// form an R-covering subfamily for every R <= r.
class MaskFamily {
 public:
  MaskFamily() = default;
  MaskFamily(FamilyParams params, std::size_t dims, std::uint64_t seed, std::vector<BitVector> masks);

  const FamilyParams& params() const noexcept { return params_; }
  std::size_t dims() const noexcept { return dims_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t size() const noexcept { return masks_.size(); }
  const std::vector<BitVector>& masks() const noexcept { return masks_; }
  const BitVector& operator[](std::size_t h) const { return masks_[h]; }

  /// Number of leading masks that form a `radius`-covering subfamily.
  /// Throws Error(kRadiusExceeded) when radius > params().r.
  std::size_t prefix_for_radius(std::uint32_t radius) const;

  bool operator==(const MaskFamily&) const = default;

 private:
  FamilyParams params_;
  std::size_t dims_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<BitVector> masks_;
};

struct FamilyLimits {
  std::uint64_t max_masks = std::uint64_t{1} << 24;
};

MaskFamily build_basic_masks(std::size_t dims, std::uint32_t r, const MappingTable& m, FamilyLimits limits = {});
MaskFamily build_partitioned_masks(std::size_t dims, std::uint32_t r, std::uint32_t t, std::uint32_t b,
                                   std::uint32_t q, const MappingTable& m, FamilyLimits limits = {});
MaskFamily build_prime_masks(std::size_t dims, std::uint32_t r, std::uint64_t p, const MappingTable& m,
                             FamilyLimits limits = {});
/// Samples a mapping table from `seed` and builds the matching family.
/// Classical families come from build_classical instead.
MaskFamily build_family(const FamilyParams& params, std::size_t dims, std::uint64_t seed, FamilyLimits limits = {});

struct CoveringOptions {
  std::uint64_t max_patterns = 100'000'000;
};

struct CoveringResult {
  bool covering = false;
  /// An error pattern no mask zeroes (only when !covering).
  std::optional<BitVector> witness;
  std::uint64_t patterns_checked = 0;
};

/// Exhaustive r-covering check: every x with ||x|| <= r
/// has a mask a with a AND x = 0. Patterns of weight min(r, d) are
/// enumerated (lighter patterns are subsets of these). Throws
/// Error(kTooLargeToVerify) when C(d, min(r, d)) exceeds the budget.
CoveringResult is_r_covering(std::span<const BitVector> masks, std::size_t dims, std::uint32_t r,
                             CoveringOptions options = {});
CoveringResult is_r_covering(const MaskFamily& family, std::uint32_t r, CoveringOptions options = {});

/// Minimum mask weight, as ones/dims (unreduced).
struct FamilyWeight {
  std::uint64_t ones = 0;
  std::uint64_t dims = 0;
  double value() const noexcept { return static_cast<double>(ones) / static_cast<double>(dims); }
};

FamilyWeight family_weight(std::span<const BitVector> masks);
FamilyWeight family_weight(const MaskFamily& family);

/// Expected number of colliding masks for a fixed pair at Hamming distance
/// `distance` over the random mapping, and the closed-form upper bound.
struct CollisionEstimate {
  double exact = 0;
  double bound = 0;
};

/// `dims` is only consulted for classical families.
CollisionEstimate collision_expectation(const FamilyParams& params, std::uint32_t distance, std::size_t dims = 0);

bool is_prime(std::uint64_t n) noexcept;
/// Smallest prime strictly greater than x (x >= 1). Throws Error(kOverflow)
/// when no such prime fits in 64 bits.
std::uint64_t next_prime_above(double x);
/// Smallest prime p with p^exponent > n, computed in exact integer arithmetic.
std::uint64_t smallest_prime_with_power_above(std::uint64_t n, std::uint32_t exponent);

/// C(n, k) saturated at UINT64_MAX.
std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) noexcept;

}  // namespace clsh
