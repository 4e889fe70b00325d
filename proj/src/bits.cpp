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

#include "clsh/bits.hpp"

#include <fstream>

#include "clsh/error.hpp"
#include "wire.hpp"

namespace clsh {
namespace {

constexpr std::uint64_t tail_mask(std::size_t dims) noexcept {
  const std::size_t used = dims & 63;
  return used == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << used) - 1;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitVector::BitVector(std::size_t dims) : dims_(dims), words_((dims + 63) / 64, 0) {}

BitVector BitVector::ones(std::size_t dims) {
  BitVector v(dims);
  for (auto& w : v.words_) w = ~std::uint64_t{0};
  if (!v.words_.empty()) v.words_.back() &= tail_mask(dims);
  return v;
}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] == '1') {
      v.set(j);
    } else if (bits[j] != '0') {
      throw Error(ErrorCode::kInvalidArgument, "bit string may only contain '0' and '1'");
    }
  }
  return v;
}

BitVector BitVector::from_bytes(std::span<const std::uint8_t> bytes, std::size_t dims) {
  BitVector v(dims);
  if (bytes.size() != v.byte_count()) {
    throw Error(ErrorCode::kInvalidArgument, "expected " + std::to_string(v.byte_count()) + " bytes for d=" +
                                                 std::to_string(dims) + ", got " + std::to_string(bytes.size()));
  }
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    v.words_[i >> 3] |= std::uint64_t{bytes[i]} << (8 * (i & 7));
  }
  if (!v.is_canonical()) throw Error(ErrorCode::kCorrupt, "nonzero padding bits beyond d=" + std::to_string(dims));
  return v;
}

BitVector BitVector::from_hex(std::string_view hex, std::size_t dims) {
  const std::size_t nbytes = (dims + 7) / 8;
  if (hex.size() != 2 * nbytes) {
    throw Error(ErrorCode::kDimensionMismatch, "hex query has " + std::to_string(hex.size()) + " digits, d=" +
                                                   std::to_string(dims) + " needs " + std::to_string(2 * nbytes));
  }
  std::vector<std::uint8_t> bytes(nbytes);
  for (std::size_t i = 0; i < nbytes; ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::kInvalidArgument, "invalid hex digit");
    bytes[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return from_bytes(bytes, dims);
}

void BitVector::require_same_dims(const BitVector& other) const {
  if (dims_ != other.dims_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "operands have d=" + std::to_string(dims_) + " and d=" + std::to_string(other.dims_));
  }
}

BitVector& BitVector::operator^=(const BitVector& other) {
  require_same_dims(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  require_same_dims(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) {
  require_same_dims(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

BitVector BitVector::operator~() const {
  BitVector v(*this);
  for (auto& w : v.words_) w = ~w;
  if (!v.words_.empty()) v.words_.back() &= tail_mask(dims_);
  return v;
}

bool BitVector::none() const noexcept {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

bool BitVector::is_canonical() const noexcept {
  if (words_.size() != (dims_ + 63) / 64) return false;
  return words_.empty() || (words_.back() & ~tail_mask(dims_)) == 0;
}

void BitVector::to_bytes(std::span<std::uint8_t> out) const {
  for (std::size_t i = 0; i < byte_count(); ++i) {
    out[i] = static_cast<std::uint8_t>(words_[i >> 3] >> (8 * (i & 7)));
  }
}

std::vector<std::uint8_t> BitVector::to_bytes() const {
  std::vector<std::uint8_t> out(byte_count());
  to_bytes(out);
  return out;
}

std::string BitVector::to_string() const {
  std::string s(dims_, '0');
  for (std::size_t j = 0; j < dims_; ++j) {
    if (test(j)) s[j] = '1';
  }
  return s;
}

std::string BitVector::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(2 * byte_count());
  for (auto b : to_bytes()) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 15]);
  }
  return s;
}

std::size_t hamming_weight(const BitVector& x) noexcept {
  std::size_t total = 0;
  for (auto w : x.words()) total += popcount(w);
  return total;
}

std::size_t hamming_distance(const BitVector& x, const BitVector& y) {
  if (x.dims() != y.dims()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cannot compare d=" + std::to_string(x.dims()) + " with d=" + std::to_string(y.dims()));
  }
  const auto a = x.words();
  const auto b = y.words();
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += popcount(a[i] ^ b[i]);
  return total;
}

bool masked_zero(std::span<const std::uint64_t> x, std::span<const std::uint64_t> mask) noexcept {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if ((x[i] & mask[i]) != 0) return false;
  }
  return true;
}

BitVector replicate(const BitVector& x, std::size_t times) {
  if (times == 1) return x;
  const std::size_t d = x.dims();
  BitVector out(d * times);
  for (std::size_t j = 0; j < times; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      if (x.test(i)) out.set(j * d + i);
    }
  }
  return out;
}

PointSet::PointSet(std::size_t dims) : dims_(dims) {}

PointSet::PointSet(std::size_t dims, std::vector<BitVector> points) : dims_(dims) {
  points_.reserve(points.size());
  for (auto& p : points) push_back(std::move(p));
}

void PointSet::push_back(BitVector point) {
  if (point.dims() != dims_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "point has d=" + std::to_string(point.dims()) + ", set has d=" + std::to_string(dims_));
  }
  points_.push_back(std::move(point));
}

namespace {
constexpr std::string_view kPointMagic = "CLSH1";
constexpr std::uint16_t kPointVersion = 1;
}  // namespace

void write_points(std::ostream& out, const PointSet& points) {
  if (points.dims() == 0) throw Error(ErrorCode::kZeroDims, "cannot write a point set with d=0");
  wire::put_magic(out, kPointMagic);
  wire::put<std::uint16_t>(out, kPointVersion);
  wire::put<std::uint64_t>(out, points.size());
  wire::put<std::uint64_t>(out, points.dims());
  std::vector<std::uint8_t> row((points.dims() + 7) / 8);
  for (const auto& p : points) {
    p.to_bytes(row);
    wire::put_bytes(out, row);
  }
}

PointSet read_points(std::istream& in) {
  wire::expect_magic(in, kPointMagic);
  const auto version = wire::get<std::uint16_t>(in, "version");
  if (version != kPointVersion) {
    throw Error(ErrorCode::kUnsupportedVersion, "CLSH1 version " + std::to_string(version));
  }
  const auto n = wire::get<std::uint64_t>(in, "point count");
  const auto d = wire::get<std::uint64_t>(in, "dimension");
  if (d == 0) throw Error(ErrorCode::kZeroDims, "CLSH1 header declares d=0");
  const std::uint64_t row_bytes = (d / 8) + (d % 8 != 0 ? 1 : 0);
  if (n != 0 && row_bytes > UINT64_MAX / n) {
    throw Error(ErrorCode::kSizeOverflow, "n=" + std::to_string(n) + " rows of " + std::to_string(row_bytes) +
                                              " bytes overflow 64 bits");
  }
  if (row_bytes > (std::uint64_t{1} << 40)) throw Error(ErrorCode::kSizeOverflow, "d=" + std::to_string(d));
  PointSet points(static_cast<std::size_t>(d));
  points.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, 1u << 20)));
  std::vector<std::uint8_t> row(static_cast<std::size_t>(row_bytes));
  for (std::uint64_t i = 0; i < n; ++i) {
    wire::get_bytes(in, row, "point rows");
    points.push_back(BitVector::from_bytes(row, static_cast<std::size_t>(d)));
  }
  return points;
}

void save_points(const std::filesystem::path& path, const PointSet& points) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  write_points(out, points);
}

PointSet load_points(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return read_points(in);
}

}  // namespace clsh
