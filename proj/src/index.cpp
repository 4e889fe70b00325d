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

#include "clsh/index.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <thread>
#include <unordered_set>

#include "clsh/baseline.hpp"
#include "clsh/error.hpp"
#include "clsh/rng.hpp"
#include "digest.hpp"

namespace clsh {
namespace {

Digest truncate(Digest d, std::uint32_t bits) noexcept {
  if (bits >= 128) return d;
  if (bits >= 64) {
    if (bits > 64) d[1] &= (~std::uint64_t{0}) >> (128 - bits);
    else d[1] = 0;
    return d;
  }
  d[0] &= (~std::uint64_t{0}) >> (64 - bits);
  d[1] = 0;
  return d;
}

Digest digest_and(std::uint64_t mask_id, std::span<const std::uint64_t> x, std::span<const std::uint64_t> a) {
  detail::Hasher h(mask_id);
  for (std::size_t i = 0; i < x.size(); ++i) h.add(x[i] & a[i]);
  return h.finish();
}

std::uint32_t floor_log2_plus1(std::uint64_t v) noexcept {
  // floor(log2(v + 1))
  return static_cast<std::uint32_t>(std::bit_width(v + 1) - 1);
}

bool digest_less(const Index::Entry& e, const Digest& key) {
  return e.lo != key[0] ? e.lo < key[0] : e.hi < key[1];
}
bool key_less(const Digest& key, const Index::Entry& e) {
  return key[0] != e.lo ? key[0] < e.lo : key[1] < e.hi;
}

}  // namespace

Digest digest_masked(std::uint64_t mask_id, std::span<const std::uint64_t> words) noexcept {
  detail::Hasher h(mask_id);
  for (const auto w : words) h.add(w);
  return h.finish();
}

Index Index::build(const PointSet& points, const SchemeChoice& scheme, std::uint64_t seed,
                   const IndexOptions& options) {
  if (scheme.dims != points.dims()) {
    throw Error(ErrorCode::kDimensionMismatch, "scheme has d=" + std::to_string(scheme.dims) +
                                                   " but points have d=" + std::to_string(points.dims()));
  }
  const auto& params = scheme.family();
  const double entries = params.family_size_real() * static_cast<double>(points.size());
  if (entries > static_cast<double>(options.max_bucket_entries)) {
    throw Error(ErrorCode::kInfeasible, "index needs n*|A| = " + std::to_string(points.size()) + "*" +
                                            std::to_string(params.family_size_real()) +
                                            " bucket entries, budget is " +
                                            std::to_string(options.max_bucket_entries));
  }
  const std::size_t wide = scheme.dims * scheme.replication();
  MaskFamily family = params.kind == FamilyKind::kClassical
                          ? build_classical(wide, params.k, params.L, seed)
                          : build_family(params, wide, seed, options.limits);
  return build_with_family(points, scheme, std::move(family), options);
}

Index Index::build_with_family(const PointSet& points, const SchemeChoice& scheme, MaskFamily family,
                               const IndexOptions& options) {
  if (points.dims() == 0) throw Error(ErrorCode::kZeroDims, "index needs d >= 1");
  if (scheme.dims != points.dims()) {
    throw Error(ErrorCode::kDimensionMismatch, "scheme has d=" + std::to_string(scheme.dims) +
                                                   " but points have d=" + std::to_string(points.dims()));
  }
  const std::uint32_t rep = scheme.replication();
  if (rep == 0) throw Error(ErrorCode::kInvalidArgument, "replication must be >= 1");
  if (family.dims() != points.dims() * rep) {
    throw Error(ErrorCode::kDimensionMismatch, "family has d=" + std::to_string(family.dims()) + ", expected " +
                                                   std::to_string(points.dims() * rep));
  }
  const auto kind = family.params().kind;
  if (kind != FamilyKind::kClassical && family.params().r < scheme.radius * rep) {
    throw Error(ErrorCode::kInvalidArgument, "family radius " + std::to_string(family.params().r) +
                                                 " is below the search radius " +
                                                 std::to_string(scheme.radius * rep));
  }
  if (options.digest_bits < 1 || options.digest_bits > 128) {
    throw Error(ErrorCode::kInvalidArgument, "digest_bits must lie in 1..128");
  }
  if (options.parity_split && kind == FamilyKind::kClassical) {
    throw Error(ErrorCode::kUnsupported, "parity split needs a covering family");
  }

  Index index;
  index.scheme_ = scheme;
  index.points_ = points;
  index.parity_split_ = options.parity_split;
  index.digest_bits_ = options.digest_bits;
  index.families_.push_back(std::move(family));

  const MaskFamily& full = index.families_[0];
  // Basic and prime families contain their radius r-1 subfamily as a prefix;
  // partitioned ones need a second family.
  if (options.parity_split && kind == FamilyKind::kPartitioned && scheme.radius >= 1) {
    FamilyParams lower = full.params();
    lower.r = (scheme.radius - 1) * rep;
    index.families_.push_back(build_family(lower, full.dims(), mix_seed(full.seed(), 1), options.limits));
  }

  std::uint64_t total = 0;
  for (const auto& f : index.families_) total += f.size() * points.size();
  if (total > options.max_bucket_entries) {
    throw Error(ErrorCode::kInfeasible, "index needs " + std::to_string(total) + " bucket entries, budget is " +
                                            std::to_string(options.max_bucket_entries));
  }

  if (!options.parity_split) {
    Table t;
    t.ids.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) t.ids[i] = static_cast<std::uint32_t>(i);
    index.tables_.push_back(std::move(t));
  } else {
    for (std::uint32_t part = 0; part < 2; ++part) {
      for (std::uint32_t f = 0; f < index.families_.size(); ++f) {
        Table t;
        t.part = part;
        t.family = f;
        for (std::size_t i = 0; i < points.size(); ++i) {
          if ((hamming_weight(points[i]) & 1u) == part) t.ids.push_back(static_cast<std::uint32_t>(i));
        }
        index.tables_.push_back(std::move(t));
      }
    }
  }
  index.fill_tables(std::max(1u, options.threads));
  return index;
}

BitVector Index::expand(const BitVector& x) const {
  const std::uint32_t rep = replication();
  return rep == 1 ? x : replicate(x, rep);
}

void Index::fill_tables(unsigned threads) {
  std::vector<BitVector> wide;
  wide.reserve(points_.size());
  for (const auto& x : points_) wide.push_back(expand(x));

  for (auto& table : tables_) {
    const MaskFamily& fam = families_[table.family];
    const std::size_t n = table.ids.size();
    table.entries.assign(fam.size() * n, Entry{});
    auto work = [&](std::size_t first, std::size_t stride) {
      for (std::size_t h = first; h < fam.size(); h += stride) {
        const auto a = fam[h].words();
        Entry* slice = table.entries.data() + h * n;
        for (std::size_t j = 0; j < n; ++j) {
          const std::uint32_t id = table.ids[j];
          const Digest d = truncate(digest_and(h, wide[id].words(), a), digest_bits_);
          slice[j] = Entry{d[0], d[1], id};
        }
        std::sort(slice, slice + n);
      }
    };
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, fam.size()));
    if (workers <= 1) {
      work(0, 1);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    }
  }
}

std::uint64_t Index::bucket_entries() const noexcept {
  std::uint64_t total = 0;
  for (const auto& t : tables_) total += t.entries.size();
  return total;
}

std::uint64_t Index::occurrences(std::uint32_t id) const {
  std::uint64_t count = 0;
  for (const auto& t : tables_) {
    for (const auto& e : t.entries) count += e.id == id;
  }
  return count;
}

void Index::check_query(const BitVector& y) const {
  if (y.dims() != dims()) {
    throw Error(ErrorCode::kDimensionMismatch, "query has d=" + std::to_string(y.dims()) + " but index has d=" +
                                                   std::to_string(dims()));
  }
}

std::span<const Index::Entry> Index::bucket(const Table& table, std::size_t h, const Digest& key) const {
  const std::size_t n = table.ids.size();
  const Entry* first = table.entries.data() + h * n;
  const Entry* last = first + n;
  const Entry* lo = std::lower_bound(first, last, key, digest_less);
  const Entry* hi = std::upper_bound(lo, last, key, key_less);
  return {lo, hi};
}

template <class Visit>
void Index::scan(const BitVector& y, std::uint32_t r, std::uint64_t& masks, std::uint64_t& candidates,
                 Visit&& visit) const {
  const BitVector wide = expand(y);
  const std::uint32_t rep = replication();
  const unsigned parity = hamming_weight(y) & 1u;
  for (const Table& table : tables_) {
    std::uint32_t part_radius = r;
    if (parity_split_) {
      // Distances from y to this part all have parity (|y| + part) mod 2.
      if ((r & 1u) != ((parity + table.part) & 1u)) {
        if (r == 0) continue;
        part_radius = r - 1;
      }
      const std::uint32_t wanted = (families_.size() > 1 && part_radius < radius()) ? 1 : 0;
      if (table.family != wanted) continue;
    }
    if (table.ids.empty()) continue;
    const MaskFamily& fam = families_[table.family];
    const std::size_t count = fam.prefix_for_radius(part_radius * rep);
    for (std::size_t h = 0; h < count; ++h) {
      ++masks;
      const Digest key = truncate(digest_and(h, wide.words(), fam[h].words()), digest_bits_);
      for (const Entry& e : bucket(table, h, key)) {
        ++candidates;
        if (visit(e.id)) return;
      }
    }
  }
}

RangeOutcome Index::query_all_within(const BitVector& y, std::uint32_t r) const {
  check_query(y);
  if (r > radius()) {
    throw Error(ErrorCode::kRadiusExceeded,
                "query radius " + std::to_string(r) + " exceeds the index radius " + std::to_string(radius()));
  }
  RangeOutcome out;
  std::unordered_set<std::uint32_t> seen;
  scan(y, r, out.masks_evaluated, out.candidates_inspected, [&](std::uint32_t id) {
    if (!seen.insert(id).second) return false;
    ++out.distance_computations;
    const auto dist = static_cast<std::uint32_t>(hamming_distance(points_[id], y));
    if (dist <= r) out.neighbors.push_back({id, dist});
    return false;
  });
  std::sort(out.neighbors.begin(), out.neighbors.end(),
            [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
  return out;
}

QueryOutcome Index::query_near(const BitVector& y, std::uint32_t r, double c) const {
  check_query(y);
  if (r > radius()) {
    throw Error(ErrorCode::kRadiusExceeded,
                "query radius " + std::to_string(r) + " exceeds the index radius " + std::to_string(radius()));
  }
  // Strict threshold ceil(c r); at r = 0 a duplicate must still qualify.
  const std::uint32_t threshold = std::max(rounded_cr(r, c), r + 1);
  QueryOutcome out;
  std::unordered_set<std::uint32_t> seen;
  scan(y, r, out.masks_evaluated, out.candidates_inspected, [&](std::uint32_t id) {
    if (!seen.insert(id).second) return false;
    ++out.distance_computations;
    const auto dist = static_cast<std::uint32_t>(hamming_distance(points_[id], y));
    if (dist < threshold) {
      out.result = Neighbor{id, dist};
      return true;
    }
    return false;
  });
  return out;
}

QueryOutcome Index::nearest_neighbor(const BitVector& y, NearestMode mode, double c) const {
  check_query(y);
  const MaskFamily& fam = family();
  if (fam.params().kind != FamilyKind::kBasic || parity_split_ || replication() != 1) {
    throw Error(ErrorCode::kUnsupported, "nearest_neighbor needs an unsplit basic-family index");
  }
  if (mode == NearestMode::kApprox && !(c > 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "approximate nearest neighbor needs c > 1");
  }
  const double factor = mode == NearestMode::kApprox ? c : 1.0;
  QueryOutcome out;
  const Table& table = tables_.at(0);
  std::optional<Neighbor> best;
  std::unordered_set<std::uint32_t> seen;
  const std::size_t count = fam.prefix_for_radius(radius());
  if (!table.ids.empty()) {
    for (std::size_t h = 0; h < count; ++h) {
      ++out.masks_evaluated;
      const Digest key = truncate(digest_and(h, y.words(), fam[h].words()), digest_bits_);
      for (const Entry& e : bucket(table, h, key)) {
        ++out.candidates_inspected;
        if (!seen.insert(e.id).second) continue;
        ++out.distance_computations;
        const auto dist = static_cast<std::uint32_t>(hamming_distance(points_[e.id], y));
        if (!best || dist < best->distance || (dist == best->distance && e.id < best->id)) best = Neighbor{e.id, dist};
      }
      // After v = h+1 masks every point within floor(log2(v+1)) - 1 has
      // collided, so unseen points are at least that far.
      if (best && best->distance <= factor * floor_log2_plus1(h + 1)) {
        out.result = best;
        return out;
      }
    }
  }
  if (best && best->distance <= factor * radius()) out.result = best;
  return out;
}

}  // namespace clsh
