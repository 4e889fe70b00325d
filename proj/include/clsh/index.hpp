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

// Bucket index over a point set with guaranteed-recall queries.
//
// Every point is stored once per mask under digest(h, x AND a_h). Queries
// evaluate the masks, collect colliding ids and verify each candidate with an
// exact distance computation, so digest collisions can only add candidates.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "clsh/bits.hpp"
#include "clsh/families.hpp"
#include "clsh/scheme.hpp"

namespace clsh {

using Digest = std::array<std::uint64_t, 2>;

/// 128-bit digest of (mask id, masked words).
Digest digest_masked(std::uint64_t mask_id, std::span<const std::uint64_t> words) noexcept;

struct IndexOptions {
  bool parity_split = false;
  /// Digest bits kept in bucket keys (1..128). Fewer bits force bucket merges;
  /// answers stay exact, only candidate counts grow.
  std::uint32_t digest_bits = 128;
  /// Upper limit on stored bucket entries (n |A| summed over tables).
  std::uint64_t max_bucket_entries = std::uint64_t{1} << 26;
  FamilyLimits limits{std::uint64_t{1} << 24};
  unsigned threads = 1;
};

struct Neighbor {
  std::uint32_t id = 0;
  std::uint32_t distance = 0;
  bool operator==(const Neighbor&) const = default;
};

struct QueryOutcome {
  std::optional<Neighbor> result;
  std::uint64_t masks_evaluated = 0;
  std::uint64_t candidates_inspected = 0;  // bucket entries touched
  std::uint64_t distance_computations = 0;

  /// Memory accesses in the |A| + kappa cost model.
  std::uint64_t cost() const noexcept { return masks_evaluated + candidates_inspected; }
};

struct RangeOutcome {
  std::vector<Neighbor> neighbors;  // sorted by id
  std::uint64_t masks_evaluated = 0;
  std::uint64_t candidates_inspected = 0;
  std::uint64_t distance_computations = 0;
};

enum class NearestMode : std::uint8_t { kExact = 0, kApprox = 1 };

class Index {
 public:
  Index() = default;

  /// Builds the bucket tables. The scheme's replication factor is applied to
  /// points here and to queries later, so callers use original coordinates.
  /// With parity_split, points are split by weight parity and each part is
  /// searched with radius r or r-1 depending on the query's parity.
  static Index build(const PointSet& points, const SchemeChoice& scheme, std::uint64_t seed,
                     const IndexOptions& options = {});
  /// Uses a prebuilt family (basic, partitioned, prime or classical).
  static Index build_with_family(const PointSet& points, const SchemeChoice& scheme, MaskFamily family,
                                 const IndexOptions& options = {});

  std::size_t dims() const noexcept { return points_.dims(); }
  std::size_t size() const noexcept { return points_.size(); }
  const PointSet& points() const noexcept { return points_; }
  const SchemeChoice& scheme() const noexcept { return scheme_; }
  std::uint32_t radius() const noexcept { return scheme_.radius; }
  std::uint32_t replication() const noexcept { return scheme_.chosen.replication; }
  bool parity_split() const noexcept { return parity_split_; }
  std::uint32_t digest_bits() const noexcept { return digest_bits_; }
  /// families()[0] has the full radius; a second radius r-1 family exists only
  /// for split partitioned indexes.
  const std::vector<MaskFamily>& families() const noexcept { return families_; }
  const MaskFamily& family() const { return families_.at(0); }
  std::uint64_t bucket_entries() const noexcept;
  /// Number of (table, mask) buckets containing id; equals |family| per
  /// table the point belongs to.
  std::uint64_t occurrences(std::uint32_t id) const;

  /// Exactly the points within distance r of y (r <= radius()).
  RangeOutcome query_all_within(const BitVector& y, std::uint32_t r) const;
  /// First verified candidate with distance < ceil(c r). Always answers when
  /// some point lies within r.
  QueryOutcome query_near(const BitVector& y, std::uint32_t r, double c) const;
  /// Scans masks v = 1, 2, 3, ... and stops once best <= floor(log2(v+1))
  /// (times c in approx mode). Basic families without parity split only.
  QueryOutcome nearest_neighbor(const BitVector& y, NearestMode mode = NearestMode::kExact, double c = 1.0) const;

  void write(std::ostream& out) const;
  static Index read(std::istream& in);
  void save(const std::filesystem::path& path) const;
  static Index load(const std::filesystem::path& path);

  struct Entry {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint32_t id = 0;
    auto operator<=>(const Entry&) const = default;
  };

  /// Bucket table of one point part under one family. Entries for mask h
  /// occupy [h * ids.size(), (h+1) * ids.size()), sorted by (digest, id).
  struct Table {
    std::uint32_t part = 0;    // 0 all points / even weight, 1 odd weight
    std::uint32_t family = 0;  // index into families()
    std::vector<std::uint32_t> ids;
    std::vector<Entry> entries;
    bool operator==(const Table&) const = default;
  };

  const std::vector<Table>& tables() const noexcept { return tables_; }

 private:
  template <class Visit>
  void scan(const BitVector& y, std::uint32_t r, std::uint64_t& masks, std::uint64_t& candidates, Visit&& visit) const;
  std::span<const Entry> bucket(const Table& table, std::size_t h, const Digest& key) const;
  BitVector expand(const BitVector& x) const;
  void check_query(const BitVector& y) const;
  void fill_tables(unsigned threads);

  SchemeChoice scheme_;
  PointSet points_;
  std::vector<MaskFamily> families_;
  std::vector<Table> tables_;
  bool parity_split_ = false;
  std::uint32_t digest_bits_ = 128;
};

/// CLSHA mask family dump.
void write_family(std::ostream& out, const MaskFamily& family);
MaskFamily read_family(std::istream& in);
void save_family(const std::filesystem::path& path, const MaskFamily& family);
MaskFamily load_family(const std::filesystem::path& path);

}  // namespace clsh
