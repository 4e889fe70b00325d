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

// Streaming 128-bit digest used for bucket keys and file checksums.
//
// Two 64-bit lanes with the MurmurHash3 x64 mixing constants and finalizer.
// Not cryptographic; collisions only cost extra candidates.

#pragma once

#include <array>
#include <bit>
#include <cstdint>

namespace clsh::detail {

class Hasher {
 public:
  explicit Hasher(std::uint64_t seed) noexcept : a_(seed ^ kC1), b_(seed * kC2 + kC1) {}

  void add(std::uint64_t w) noexcept {
    a_ ^= std::rotl(w * kC1, 31) * kC2;
    a_ = std::rotl(a_, 27) + b_;
    a_ = a_ * 5 + 0x52dce729;
    b_ ^= std::rotl(w * kC2, 33) * kC1;
    b_ = std::rotl(b_, 31) + a_;
    b_ = b_ * 5 + 0x38495ab5;
    ++count_;
  }

  std::array<std::uint64_t, 2> finish() const noexcept {
    std::uint64_t a = a_ ^ count_;
    std::uint64_t b = b_ ^ count_;
    a += b;
    b += a;
    a = fmix(a);
    b = fmix(b);
    a += b;
    b += a;
    return {a, b};
  }

 private:
  static constexpr std::uint64_t kC1 = 0x87c37b91114253d5ull;
  static constexpr std::uint64_t kC2 = 0x4cf5ad432745937full;

  static std::uint64_t fmix(std::uint64_t k) noexcept {
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdull;
    k ^= k >> 33;
    k *= 0xc4ceb9fe1a85ec53ull;
    k ^= k >> 33;
    return k;
  }

  std::uint64_t a_;
  std::uint64_t b_;
  std::uint64_t count_ = 0;
};

}  // namespace clsh::detail
