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

// Choosing a covering construction and its parameters for (n, d, r, c).

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "clsh/error.hpp"
#include "clsh/families.hpp"

namespace clsh {

enum class SchemePreference : std::uint8_t { kAuto = 0, kBasic = 1, kPartitioned = 2, kPrime = 3 };

/// Growth class of the overhead f(n, r, c) relative to classical LSH.
enum class OverheadClass : std::uint8_t {
  kConstant = 0,  // log2(n)/(cr) is a positive integer
  kPolylog = 1,   // cr <= log2(n) / (3 log2 log2 n)
  kGeneral = 2,   // min(n^{0.4/c} r, 2^r)
};

const char* to_string(SchemePreference preference) noexcept;
const char* to_string(OverheadClass overhead) noexcept;

struct SchemeCandidate {
  std::string label;
  FamilyParams family;          // radius already multiplied by `replication`
  std::uint32_t replication = 1;
  double family_size = 0;       // |A|
  double kappa = 0;             // n * expected collisions at distance cr
  double cost = 0;              // |A| + kappa
  bool feasible = false;
  std::string note;
};

struct SchemeChoice {
  std::uint64_t n = 0;
  std::size_t dims = 0;
  std::uint32_t radius = 0;  // in original coordinates
  double c = 0;
  std::uint32_t cr = 0;      // ceil(c r)
  SchemeCandidate chosen;
  OverheadClass overhead = OverheadClass::kGeneral;
  std::vector<SchemeCandidate> candidates;

  const FamilyParams& family() const noexcept { return chosen.family; }
  std::uint32_t replication() const noexcept { return chosen.replication; }
};

struct SelectOptions {
  SchemePreference preference = SchemePreference::kAuto;
  Codomain codomain = Codomain::kNonzero;
  /// Upper limit on |A|.
  double max_masks = 4294967296.0;
  /// Upper limit on n * |A| bucket entries (the index footprint).
  double max_bucket_entries = std::numeric_limits<double>::infinity();
};

/// Thrown when every candidate violates the budget; carries the cheapest one.
class InfeasibleScheme : public Error {
 public:
  InfeasibleScheme(const std::string& message, SchemeCandidate best)
      : Error(ErrorCode::kInfeasible, message), best_(std::move(best)) {}
  const SchemeCandidate& best() const noexcept { return best_; }

 private:
  SchemeCandidate best_;
};

/// One-line summary: label, kind, parameters, |A| and kappa.
std::string describe_candidate(const SchemeCandidate& candidate);

/// ceil(c r), tolerant to floating error in c r.
std::uint32_t rounded_cr(std::uint32_t r, double c);

/// Evaluates A1 (b=q=1, t=ceil(log2 n/(cr))), A2 (b=r, q=2 ceil(ln n/c),
/// t=1), A3 (prime field, p the smallest prime with p^{cr} > n, with
/// dimension replication for small cr) and a bounded (t, b, q) grid, and
/// returns the feasible candidate minimizing |A| + kappa.
SchemeChoice select_scheme(std::uint64_t n, std::size_t dims, std::uint32_t r, double c,
                           const SelectOptions& options = {});

/// Wraps explicit family parameters (r taken from `family`) as a choice.
SchemeChoice fixed_scheme(std::uint64_t n, std::size_t dims, double c, const FamilyParams& family,
                          std::uint32_t replication = 1, const SelectOptions& options = {});

/// Classical bit sampling with L masks of k samples, searched at radius r.
/// No recall guarantee; used for baseline comparisons.
SchemeChoice classical_scheme(std::uint64_t n, std::size_t dims, std::uint32_t r, double c, std::uint32_t k,
                              std::uint64_t L);

/// A1: b = q = 1, t = ceil(log2 n / ceil(c r)).
FamilyParams a1_params(std::uint64_t n, std::uint32_t r, double c);
/// A2: t = 1, b = r, q = 2 ceil(ln n / c); nullopt when q > r.
std::optional<FamilyParams> a2_params(std::uint64_t n, std::uint32_t r, double c);

OverheadClass overhead_class(std::uint64_t n, std::uint32_t r, double c);

/// (|A| + kappa) / (2 n^{1/c}): multiplicative overhead over classical LSH.
double overhead_estimate(const SchemeChoice& choice);

/// Replication factor used by the prime-field scheme for small cr: the
/// largest t with cr t <= log2(n)/(3 log2 log2 n), at least 1.
std::uint32_t prime_replication(std::uint64_t n, std::uint32_t cr);

}  // namespace clsh
