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

#include "clsh/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "clsh/error.hpp"
#include "clsh/rng.hpp"

namespace clsh {
namespace {

constexpr std::uint32_t kMaxVectorWidth = 62;

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint32_t exponent) noexcept {
  std::uint64_t result = 1;
  for (std::uint32_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) return std::nullopt;
    result *= base;
  }
  return result;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, message);
}

std::uint64_t checked_size(const FamilyParams& params, std::size_t dims, FamilyLimits limits) {
  const auto size = params.family_size();
  if (!size || *size > limits.max_masks) {
    throw Error(ErrorCode::kInfeasible, std::string(to_string(params.kind)) + " family with " +
                                            std::to_string(params.family_size_real()) + " masks over d=" +
                                            std::to_string(dims) + " exceeds the limit of " +
                                            std::to_string(limits.max_masks) + " masks");
  }
  return *size;
}

void require_table(const MappingTable& m, FamilyKind kind, std::size_t dims) {
  if (m.params().kind != kind) {
    throw Error(ErrorCode::kInvalidArgument, std::string("mapping table is ") + to_string(m.params().kind) +
                                                 ", expected " + to_string(kind));
  }
  if (m.dims() != dims) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mapping table has d=" + std::to_string(m.dims()) + ", family needs d=" + std::to_string(dims));
  }
}

}  // namespace

const char* to_string(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::kBasic: return "basic";
    case FamilyKind::kPartitioned: return "partitioned";
    case FamilyKind::kPrime: return "prime";
    case FamilyKind::kClassical: return "classical";
  }
  return "unknown";
}

const char* to_string(Codomain codomain) noexcept {
  switch (codomain) {
    case Codomain::kNonzero: return "nonzero";
    case Codomain::kFull: return "full";
    case Codomain::kBalanced: return "balanced";
  }
  return "unknown";
}

FamilyParams FamilyParams::basic(std::uint32_t r, Codomain codomain) {
  FamilyParams p;
  p.kind = FamilyKind::kBasic;
  p.r = r;
  p.codomain = codomain;
  return p;
}

FamilyParams FamilyParams::partitioned(std::uint32_t r, std::uint32_t t, std::uint32_t b, std::uint32_t q) {
  FamilyParams p;
  p.kind = FamilyKind::kPartitioned;
  p.r = r;
  p.t = t;
  p.b = b;
  p.q = q;
  p.codomain = Codomain::kFull;
  return p;
}

FamilyParams FamilyParams::prime(std::uint32_t r, std::uint64_t modulus) {
  FamilyParams p;
  p.kind = FamilyKind::kPrime;
  p.r = r;
  p.p = modulus;
  p.codomain = Codomain::kFull;
  return p;
}

FamilyParams FamilyParams::classical(std::uint32_t k, std::uint64_t L) {
  FamilyParams p;
  p.kind = FamilyKind::kClassical;
  p.k = k;
  p.L = L;
  p.codomain = Codomain::kFull;
  return p;
}

std::uint32_t FamilyParams::reduced_radius() const noexcept {
  if (kind != FamilyKind::kPartitioned || b == 0) return r;
  return static_cast<std::uint32_t>((std::uint64_t{r} * q) / b);
}

std::uint32_t FamilyParams::vector_width() const noexcept {
  if (kind == FamilyKind::kPartitioned) return t * reduced_radius() + 1;
  return r + 1;
}

std::optional<std::uint64_t> FamilyParams::family_size() const noexcept {
  switch (kind) {
    case FamilyKind::kBasic:
      if (vector_width() > 63) return std::nullopt;
      return (std::uint64_t{1} << vector_width()) - 1;
    case FamilyKind::kPartitioned: {
      if (vector_width() > 63) return std::nullopt;
      const std::uint64_t per = (std::uint64_t{1} << vector_width()) - 1;
      if (b != 0 && per > std::numeric_limits<std::uint64_t>::max() / b) return std::nullopt;
      return per * b;
    }
    case FamilyKind::kPrime: {
      const auto pw = checked_pow(p, r + 1);
      if (!pw) return std::nullopt;
      return *pw - 1;
    }
    case FamilyKind::kClassical:
      return L;
  }
  return std::nullopt;
}

double FamilyParams::family_size_real() const noexcept {
  switch (kind) {
    case FamilyKind::kBasic:
      return std::exp2(static_cast<double>(vector_width())) - 1.0;
    case FamilyKind::kPartitioned:
      return static_cast<double>(b) * (std::exp2(static_cast<double>(vector_width())) - 1.0);
    case FamilyKind::kPrime:
      return std::pow(static_cast<double>(p), static_cast<double>(r) + 1.0) - 1.0;
    case FamilyKind::kClassical:
      return static_cast<double>(L);
  }
  return 0;
}

void FamilyParams::validate() const {
  switch (kind) {
    case FamilyKind::kBasic:
      require(vector_width() <= kMaxVectorWidth, "basic family needs r+1 <= 62, got r=" + std::to_string(r));
      return;
    case FamilyKind::kPartitioned:
      require(t >= 1, "partitioned family needs t >= 1");
      require(b >= 1, "partitioned family needs b >= 1");
      require(q >= 1 && q <= b, "partitioned family needs 1 <= q <= b, got q=" + std::to_string(q) +
                                    " b=" + std::to_string(b));
      require(static_cast<std::uint64_t>(t) * reduced_radius() + 1 <= kMaxVectorWidth,
              "partitioned family needs t*r'+1 <= 62");
      require(codomain == Codomain::kFull, "partitioned mapping values are always sampled from the full codomain");
      return;
    case FamilyKind::kPrime:
      require(is_prime(p), "modulus p=" + std::to_string(p) + " is not prime");
      require(p < (std::uint64_t{1} << 31), "modulus p must be below 2^31");
      require(r + 1 <= kMaxVectorWidth, "prime family needs r+1 <= 62");
      require(codomain == Codomain::kFull, "prime mapping values are always sampled from the full codomain");
      return;
    case FamilyKind::kClassical:
      require(k >= 1, "classical family needs k >= 1");
      require(L >= 1, "classical family needs L >= 1");
      return;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown family kind");
}

MappingTable MappingTable::sample(const FamilyParams& params, std::size_t dims, std::uint64_t seed) {
  params.validate();
  if (dims == 0) throw Error(ErrorCode::kZeroDims, "mapping table needs d >= 1");
  MappingTable m;
  m.params_ = params;
  m.dims_ = dims;
  m.seed_ = seed;
  Rng rng(seed);
  const std::uint32_t w = params.vector_width();
  const std::uint64_t codomain_size = std::uint64_t{1} << w;
  switch (params.kind) {
    case FamilyKind::kBasic:
      m.values_.resize(dims);
      if (params.codomain == Codomain::kBalanced) {
        for (std::size_t i = 0; i < dims; ++i) m.values_[i] = (i % (codomain_size - 1)) + 1;
        for (std::size_t i = dims; i-- > 1;) std::swap(m.values_[i], m.values_[rng.uniform(i + 1)]);
      } else if (params.codomain == Codomain::kFull) {
        for (auto& v : m.values_) v = rng.uniform(codomain_size);
      } else {
        for (auto& v : m.values_) v = 1 + rng.uniform(codomain_size - 1);
      }
      break;
    case FamilyKind::kPartitioned:
      m.values_.resize(dims * params.t);
      m.starts_.resize(dims);
      for (std::size_t i = 0; i < dims; ++i) {
        for (std::uint32_t j = 0; j < params.t; ++j) m.values_[i * params.t + j] = rng.uniform(codomain_size);
        m.starts_[i] = static_cast<std::uint32_t>(rng.uniform(params.b));
      }
      break;
    case FamilyKind::kPrime:
      m.digits_.resize(dims * (params.r + 1));
      for (auto& digit : m.digits_) digit = static_cast<std::uint32_t>(rng.uniform(params.p));
      break;
    case FamilyKind::kClassical:
      throw Error(ErrorCode::kUnsupported, "classical families have no mapping table; use build_classical");
  }
  return m;
}

MappingTable MappingTable::basic(std::uint32_t r, std::vector<std::uint64_t> values) {
  MappingTable m;
  m.params_ = FamilyParams::basic(r);
  m.params_.validate();
  m.dims_ = values.size();
  require(m.dims_ > 0, "mapping table needs d >= 1");
  const std::uint32_t w = m.params_.vector_width();
  for (auto v : values) require((v >> w) == 0, "mapping value wider than r+1 bits");
  m.values_ = std::move(values);
  return m;
}

MappingTable MappingTable::partitioned(std::uint32_t r, std::uint32_t t, std::uint32_t b, std::uint32_t q,
                                       std::vector<std::uint64_t> values, std::vector<std::uint32_t> starts) {
  MappingTable m;
  m.params_ = FamilyParams::partitioned(r, t, b, q);
  m.params_.validate();
  m.dims_ = starts.size();
  require(m.dims_ > 0, "mapping table needs d >= 1");
  require(values.size() == m.dims_ * t, "partitioned table needs t values per dimension");
  const std::uint32_t w = m.params_.vector_width();
  for (auto v : values) require((v >> w) == 0, "mapping value wider than t*r'+1 bits");
  for (auto s : starts) require(s < b, "interval start must be below b");
  m.values_ = std::move(values);
  m.starts_ = std::move(starts);
  return m;
}

MappingTable MappingTable::prime(std::uint32_t r, std::uint64_t p, std::vector<std::uint32_t> digits) {
  MappingTable m;
  m.params_ = FamilyParams::prime(r, p);
  m.params_.validate();
  require(!digits.empty() && digits.size() % (r + 1) == 0, "prime table needs r+1 residues per dimension");
  m.dims_ = digits.size() / (r + 1);
  for (auto digit : digits) require(digit < p, "residue must be below p");
  m.digits_ = std::move(digits);
  return m;
}

MaskFamily::MaskFamily(FamilyParams params, std::size_t dims, std::uint64_t seed, std::vector<BitVector> masks)
    : params_(params), dims_(dims), seed_(seed), masks_(std::move(masks)) {
  for (const auto& a : masks_) {
    if (a.dims() != dims_) throw Error(ErrorCode::kDimensionMismatch, "mask dims differ from family dims");
  }
}

std::size_t MaskFamily::prefix_for_radius(std::uint32_t radius) const {
  if (radius > params_.r && params_.kind != FamilyKind::kClassical) {
    throw Error(ErrorCode::kRadiusExceeded,
                "radius " + std::to_string(radius) + " exceeds the family radius " + std::to_string(params_.r));
  }
  switch (params_.kind) {
    case FamilyKind::kBasic:
      return std::min<std::size_t>(masks_.size(), (std::size_t{1} << (radius + 1)) - 1);
    case FamilyKind::kPrime: {
      const auto pw = checked_pow(params_.p, radius + 1);
      return pw ? std::min<std::size_t>(masks_.size(), *pw - 1) : masks_.size();
    }
    case FamilyKind::kPartitioned:
    case FamilyKind::kClassical:
      return masks_.size();
  }
  return masks_.size();
}

MaskFamily build_basic_masks(std::size_t dims, std::uint32_t r, const MappingTable& m, FamilyLimits limits) {
  require_table(m, FamilyKind::kBasic, dims);
  if (m.params().r != r) {
    throw Error(ErrorCode::kInvalidArgument, "mapping width r+1=" + std::to_string(m.params().r + 1) +
                                                 " does not match r=" + std::to_string(r));
  }
  const std::uint64_t count = checked_size(m.params(), dims, limits);
  std::vector<BitVector> masks;
  masks.reserve(count);
  for (std::uint64_t v = 1; v <= count; ++v) {
    BitVector a(dims);
    for (std::size_t i = 0; i < dims; ++i) {
      if (popcount(m.value(i) & v) & 1u) a.set(i);
    }
    masks.push_back(std::move(a));
  }
  return MaskFamily(m.params(), dims, m.seed(), std::move(masks));
}

MaskFamily build_partitioned_masks(std::size_t dims, std::uint32_t r, std::uint32_t t, std::uint32_t b,
                                   std::uint32_t q, const MappingTable& m, FamilyLimits limits) {
  require_table(m, FamilyKind::kPartitioned, dims);
  const auto& mp = m.params();
  if (mp.r != r || mp.t != t || mp.b != b || mp.q != q) {
    throw Error(ErrorCode::kInvalidArgument, "mapping table parameters do not match (r, t, b, q)");
  }
  const std::uint64_t count = checked_size(mp, dims, limits);
  const std::uint64_t per_partition = count / b;
  std::vector<BitVector> masks;
  masks.reserve(count);
  for (std::uint32_t k = 0; k < b; ++k) {
    for (std::uint64_t v = 1; v <= per_partition; ++v) {
      BitVector a(dims);
      for (std::size_t i = 0; i < dims; ++i) {
        if (!m.in_partition(i, k)) continue;
        for (std::uint32_t j = 0; j < t; ++j) {
          if (popcount(m.value(i, j) & v) & 1u) {
            a.set(i);
            break;
          }
        }
      }
      masks.push_back(std::move(a));
    }
  }
  return MaskFamily(mp, dims, m.seed(), std::move(masks));
}

MaskFamily build_prime_masks(std::size_t dims, std::uint32_t r, std::uint64_t p, const MappingTable& m,
                             FamilyLimits limits) {
  if (!is_prime(p)) throw Error(ErrorCode::kInvalidArgument, "modulus p=" + std::to_string(p) + " is not prime");
  require_table(m, FamilyKind::kPrime, dims);
  if (m.params().r != r || m.params().p != p) {
    throw Error(ErrorCode::kInvalidArgument, "mapping table parameters do not match (r, p)");
  }
  const std::uint64_t count = checked_size(m.params(), dims, limits);
  const std::size_t width = r + 1;
  std::vector<std::uint64_t> v(width, 0);
  std::vector<BitVector> masks;
  masks.reserve(count);
  for (std::uint64_t h = 0; h < count; ++h) {
    // v counts 1, 2, 3, ... in base p, least significant digit first.
    for (std::size_t j = 0; j < width; ++j) {
      if (++v[j] < p) break;
      v[j] = 0;
    }
    BitVector a(dims);
    for (std::size_t i = 0; i < dims; ++i) {
      const auto digits = m.digits(i);
      std::uint64_t dot = 0;
      for (std::size_t j = 0; j < width; ++j) dot = (dot + digits[j] * v[j]) % p;
      if (dot != 0) a.set(i);
    }
    masks.push_back(std::move(a));
  }
  return MaskFamily(m.params(), dims, m.seed(), std::move(masks));
}

MaskFamily build_family(const FamilyParams& params, std::size_t dims, std::uint64_t seed, FamilyLimits limits) {
  params.validate();
  if (params.kind == FamilyKind::kClassical) {
    throw Error(ErrorCode::kUnsupported, "classical families are built by build_classical");
  }
  checked_size(params, dims, limits);
  const MappingTable m = MappingTable::sample(params, dims, seed);
  switch (params.kind) {
    case FamilyKind::kBasic:
      return build_basic_masks(dims, params.r, m, limits);
    case FamilyKind::kPartitioned:
      return build_partitioned_masks(dims, params.r, params.t, params.b, params.q, m, limits);
    default:
      return build_prime_masks(dims, params.r, params.p, m, limits);
  }
}

CollisionEstimate collision_expectation(const FamilyParams& params, std::uint32_t distance, std::size_t dims) {
  const double D = distance;
  CollisionEstimate est;
  switch (params.kind) {
    case FamilyKind::kBasic: {
      const double size = params.family_size_real();
      const double r1 = static_cast<double>(params.r) + 1.0;
      est.bound = std::exp2(r1 - D);
      if (params.codomain == Codomain::kFull) {
        est.exact = size * std::exp2(-D);
      } else if (params.codomain == Codomain::kNonzero) {
        // P[<m, v> even] for m uniform over nonzero vectors and v != 0.
        const double zero = (std::exp2(r1 - 1.0) - 1.0) / size;
        est.exact = size * std::pow(zero, D);
      } else {
        throw Error(ErrorCode::kUnsupported, "no closed-form collision expectation for balanced mappings");
      }
      return est;
    }
    case FamilyKind::kPartitioned: {
      const double t = params.t;
      const double qb = static_cast<double>(params.q) / static_cast<double>(params.b);
      const double zero = 1.0 - (1.0 - std::exp2(-t)) * qb;
      const double decay = std::pow(zero, D);
      est.exact = decay * params.family_size_real();
      est.bound = decay * static_cast<double>(params.b) * std::exp2(t * params.r * qb + 1.0);
      return est;
    }
    case FamilyKind::kPrime: {
      const double p = static_cast<double>(params.p);
      est.exact = params.family_size_real() * std::pow(p, -D);
      est.bound = std::pow(p, static_cast<double>(params.r) + 1.0 - D);
      return est;
    }
    case FamilyKind::kClassical: {
      if (dims == 0) throw Error(ErrorCode::kInvalidArgument, "classical collision expectation needs d");
      const double per = std::pow(1.0 - std::min(D, static_cast<double>(dims)) / static_cast<double>(dims),
                                  static_cast<double>(params.k));
      est.exact = static_cast<double>(params.L) * per;
      est.bound = est.exact;
      return est;
    }
  }
  return est;
}

}  // namespace clsh
