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

// Little-endian stream encoding shared by the file formats.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "clsh/error.hpp"

namespace clsh::wire {

inline void put_bytes(std::ostream& out, std::span<const std::uint8_t> bytes) {
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed");
}

template <typename T>
void put(std::ostream& out, T value) {
  static_assert(std::is_integral_v<T>);
  std::array<std::uint8_t, sizeof(T)> bytes{};
  auto u = static_cast<std::make_unsigned_t<T>>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<std::uint8_t>(u & 0xFFu);
    if constexpr (sizeof(T) > 1) u >>= 8;
  }
  put_bytes(out, bytes);
}

inline void put_f64(std::ostream& out, double value) { put(out, std::bit_cast<std::uint64_t>(value)); }

inline void put_magic(std::ostream& out, std::string_view magic) {
  out.write(magic.data(), static_cast<std::streamsize>(magic.size()));
  out.put('\0');
  if (!out) throw Error(ErrorCode::kIo, "write failed");
}

inline void get_bytes(std::istream& in, std::span<std::uint8_t> bytes, const char* what) {
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
    throw Error(ErrorCode::kTruncated, std::string("unexpected end of input reading ") + what);
  }
}

template <typename T>
T get(std::istream& in, const char* what) {
  static_assert(std::is_integral_v<T>);
  std::array<std::uint8_t, sizeof(T)> bytes{};
  get_bytes(in, bytes, what);
  std::make_unsigned_t<T> u = 0;
  for (std::size_t i = sizeof(T); i-- > 0;) {
    if constexpr (sizeof(T) > 1) u <<= 8;
    u |= bytes[i];
  }
  return static_cast<T>(u);
}

inline double get_f64(std::istream& in, const char* what) { return std::bit_cast<double>(get<std::uint64_t>(in, what)); }

/// Reads len(magic)+1 bytes and compares against magic followed by NUL.
inline void expect_magic(std::istream& in, std::string_view magic) {
  std::array<std::uint8_t, 16> buf{};
  const std::size_t n = magic.size() + 1;
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n));
  const auto got = static_cast<std::size_t>(in.gcount());
  const bool prefix_ok = std::memcmp(buf.data(), magic.data(), std::min(got, magic.size())) == 0 &&
                         (got <= magic.size() || buf[magic.size()] == 0);
  if (!prefix_ok) throw Error(ErrorCode::kBadMagic, std::string("expected ") + std::string(magic) + " header");
  if (got != n) throw Error(ErrorCode::kTruncated, "unexpected end of input reading header");
}

}  // namespace clsh::wire
