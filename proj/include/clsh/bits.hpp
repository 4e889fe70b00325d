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

// Packed binary vectors in {0,1}^d and the CLSH1 dataset format.
//
// Bit j of a vector lives in word j/64 at position j%64 (LSB first). Bits at
// positions >= dims() in the last word are always zero; every mutating
// operation preserves that canonical form.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace clsh {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t dims);

  static BitVector ones(std::size_t dims);
  /// Parses a string of '0'/'1' characters; character j becomes bit j.
  static BitVector from_string(std::string_view bits);
  /// Unpacks ceil(dims/8) LSB-first bytes. Nonzero padding bits are rejected.
  static BitVector from_bytes(std::span<const std::uint8_t> bytes, std::size_t dims);
  /// Hex encoding of the byte payload, byte 0 first (two digits per byte).
  static BitVector from_hex(std::string_view hex, std::size_t dims);

  std::size_t dims() const noexcept { return dims_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::size_t byte_count() const noexcept { return (dims_ + 7) / 8; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> mutable_words() noexcept { return words_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value = true) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= bit;
    } else {
      words_[i >> 6] &= ~bit;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVector& operator^=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  BitVector& operator|=(const BitVector& other);
  /// Complement within the first dims() positions.
  BitVector operator~() const;

  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }

  bool operator==(const BitVector& other) const = default;

  bool none() const noexcept;
  bool is_canonical() const noexcept;

  void to_bytes(std::span<std::uint8_t> out) const;
  std::vector<std::uint8_t> to_bytes() const;
  std::string to_string() const;
  std::string to_hex() const;

 private:
  void require_same_dims(const BitVector& other) const;

  std::size_t dims_ = 0;
  std::vector<std::uint64_t> words_;
};

inline std::size_t popcount(std::uint64_t word) noexcept { return static_cast<std::size_t>(std::popcount(word)); }

std::size_t hamming_weight(const BitVector& x) noexcept;
/// |I(x xor y)|. Throws Error(kDimensionMismatch) naming both dims.
std::size_t hamming_distance(const BitVector& x, const BitVector& y);
/// True iff x AND mask is the zero vector. Dims must match (unchecked).
bool masked_zero(std::span<const std::uint64_t> x, std::span<const std::uint64_t> mask) noexcept;

/// Repeats x `times` times: bit i of copy j lands at j*dims + i.
BitVector replicate(const BitVector& x, std::size_t times);

/// Ordered point collection; a point's id is its position.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t dims);
  PointSet(std::size_t dims, std::vector<BitVector> points);

  std::size_t dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }

  void push_back(BitVector point);
  void reserve(std::size_t n) { points_.reserve(n); }

  const BitVector& operator[](std::size_t id) const { return points_[id]; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  bool operator==(const PointSet& other) const = default;

 private:
  std::size_t dims_ = 0;
  std::vector<BitVector> points_;
};

/// CLSH1: "CLSH1\0", u16 version, u64 n, u64 d (little-endian), then n rows
/// of ceil(d/8) LSB-first bytes with zero padding bits.
inline constexpr std::size_t kPointHeaderBytes = 24;

void write_points(std::ostream& out, const PointSet& points);
PointSet read_points(std::istream& in);
void save_points(const std::filesystem::path& path, const PointSet& points);
PointSet load_points(const std::filesystem::path& path);

}  // namespace clsh
