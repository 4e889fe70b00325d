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

#include <cmath>
#include <limits>
#include <string>

#include "clsh/error.hpp"
#include "clsh/families.hpp"

namespace clsh {
namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1u) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// x^e > n, without overflow.
bool power_exceeds(std::uint64_t x, std::uint32_t e, std::uint64_t n) noexcept {
  u128 acc = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    acc *= x;
    if (acc > n) return true;
  }
  return acc > n;
}

std::uint64_t next_prime_from(std::uint64_t candidate) {
  for (std::uint64_t c = candidate; c >= candidate; ++c) {
    if (is_prime(c)) return c;
  }
  throw Error(ErrorCode::kOverflow, "no prime >= " + std::to_string(candidate) + " fits in 64 bits");
}

}  // namespace

// Miller-Rabin with the first twelve prime bases is exact below 3.3e24.
bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1u) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : kBases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime_above(double x) {
  if (!(x >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "next_prime_above needs x >= 1");
  if (x >= 18446744073709551557.0) {
    throw Error(ErrorCode::kOverflow, "no prime above " + std::to_string(x) + " fits in 64 bits");
  }
  const auto floor_x = static_cast<std::uint64_t>(std::floor(x));
  return next_prime_from(floor_x + 1);
}

std::uint64_t smallest_prime_with_power_above(std::uint64_t n, std::uint32_t exponent) {
  if (exponent == 0) throw Error(ErrorCode::kInvalidArgument, "exponent must be positive");
  // Smallest integer x with x^e > n, by binary search over [2, n+1].
  std::uint64_t lo = 2;
  std::uint64_t hi = n < std::numeric_limits<std::uint64_t>::max() ? n + 1 : n;
  if (hi < 2) hi = 2;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (power_exceeds(mid, exponent, n)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return next_prime_from(lo);
}

}  // namespace clsh
