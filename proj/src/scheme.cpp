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

#include "clsh/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace clsh {
namespace {

constexpr double kEps = 1e-9;

double log2n(std::uint64_t n) { return std::log2(static_cast<double>(n)); }

// log2(n) / (3 log2 log2 n), or 0 when log2 log2 n <= 0.
double small_radius_limit(std::uint64_t n) {
  const double l = log2n(n);
  if (l <= 1.0) return 0.0;
  return l / (3.0 * std::log2(l));
}

SchemeCandidate evaluate(std::string label, const FamilyParams& family, std::uint32_t replication,
                         std::uint64_t n, std::size_t dims, std::uint32_t cr, const SelectOptions& options) {
  SchemeCandidate c;
  c.label = std::move(label);
  c.family = family;
  c.replication = replication;
  c.family_size = family.family_size_real();
  try {
    family.validate();
  } catch (const Error& e) {
    c.cost = std::numeric_limits<double>::infinity();
    c.note = e.what();
    return c;
  }
  c.kappa = static_cast<double>(n) * collision_expectation(family, cr * replication, dims * replication).exact;
  c.cost = c.family_size + c.kappa;
  c.feasible = true;
  if (c.family_size > options.max_masks + kEps) {
    c.feasible = false;
    c.note = "|A| above mask budget";
  } else if (static_cast<double>(n) * c.family_size > options.max_bucket_entries) {
    c.feasible = false;
    c.note = "n*|A| above bucket-entry budget";
  }
  return c;
}

std::uint32_t a1_t(std::uint64_t n, std::uint32_t cr) {
  return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::ceil(log2n(n) / cr - kEps)));
}

std::uint32_t a2_q(std::uint64_t n, double c) {
  return std::max<std::uint32_t>(1, 2 * static_cast<std::uint32_t>(std::ceil(std::log(static_cast<double>(n)) / c - kEps)));
}

bool better(const SchemeCandidate& a, const SchemeCandidate& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  return a.family_size < b.family_size;
}

}  // namespace

std::string describe_candidate(const SchemeCandidate& c) {
  std::ostringstream os;
  os << c.label << " " << to_string(c.family.kind) << " r=" << c.family.r;
  switch (c.family.kind) {
    case FamilyKind::kPartitioned:
      os << " t=" << c.family.t << " b=" << c.family.b << " q=" << c.family.q;
      break;
    case FamilyKind::kPrime:
      os << " p=" << c.family.p << " replication=" << c.replication;
      break;
    default:
      break;
  }
  os << " |A|=";
  if (const auto exact = c.family.family_size()) {
    os << *exact;
  } else {
    os << c.family_size;
  }
  if (c.family.kind == FamilyKind::kBasic) os << " (2^" << c.family.r + 1 << "-1)";
  os << " kappa=" << c.kappa;
  return os.str();
}

const char* to_string(SchemePreference preference) noexcept {
  switch (preference) {
    case SchemePreference::kAuto: return "auto";
    case SchemePreference::kBasic: return "basic";
    case SchemePreference::kPartitioned: return "partitioned";
    case SchemePreference::kPrime: return "prime";
  }
  return "unknown";
}

const char* to_string(OverheadClass overhead) noexcept {
  switch (overhead) {
    case OverheadClass::kConstant: return "O(1)";
    case OverheadClass::kPolylog: return "polylog";
    case OverheadClass::kGeneral: return "min(n^{0.4/c} r, 2^r)";
  }
  return "unknown";
}

std::uint32_t rounded_cr(std::uint32_t r, double c) {
  if (!(c > 1.0)) throw Error(ErrorCode::kInvalidArgument, "approximation factor c must exceed 1");
  return static_cast<std::uint32_t>(std::ceil(c * r - kEps));
}

std::uint32_t prime_replication(std::uint64_t n, std::uint32_t cr) {
  const double limit = small_radius_limit(n);
  return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::floor(limit / cr + kEps)));
}

OverheadClass overhead_class(std::uint64_t n, std::uint32_t r, double c) {
  const std::uint32_t cr = rounded_cr(r, c);
  const double ratio = log2n(n) / cr;
  if (ratio >= 1.0 - kEps && std::abs(ratio - std::round(ratio)) < 1e-9) return OverheadClass::kConstant;
  if (cr <= small_radius_limit(n) + kEps) return OverheadClass::kPolylog;
  return OverheadClass::kGeneral;
}

SchemeChoice select_scheme(std::uint64_t n, std::size_t dims, std::uint32_t r, double c,
                           const SelectOptions& options) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "select_scheme needs n >= 1");
  if (dims == 0) throw Error(ErrorCode::kZeroDims, "select_scheme needs d >= 1");
  if (r == 0) throw Error(ErrorCode::kInvalidArgument, "select_scheme needs r >= 1");
  const std::uint32_t cr = rounded_cr(r, c);

  SchemeChoice choice;
  choice.n = n;
  choice.dims = dims;
  choice.radius = r;
  choice.c = c;
  choice.cr = cr;
  choice.overhead = overhead_class(n, r, c);

  const auto pref = options.preference;
  const bool want_partitioned = pref == SchemePreference::kAuto || pref == SchemePreference::kPartitioned;
  auto& cands = choice.candidates;

  // A1.
  if (pref == SchemePreference::kBasic) {
    cands.push_back(evaluate("basic", FamilyParams::basic(r, options.codomain), 1, n, dims, cr, options));
  } else if (want_partitioned) {
    FamilyParams a1 = a1_params(n, r, c);
    if (a1.t == 1 && pref == SchemePreference::kAuto) a1 = FamilyParams::basic(r, options.codomain);
    cands.push_back(evaluate("A1", a1, 1, n, dims, cr, options));
  }

  // A2.
  if (want_partitioned) {
    if (const auto a2 = a2_params(n, r, c)) cands.push_back(evaluate("A2", *a2, 1, n, dims, cr, options));
  }

  // A3.
  const bool small_cr = cr <= small_radius_limit(n) + kEps;
  if (pref == SchemePreference::kPrime || (pref == SchemePreference::kAuto && small_cr)) {
    const std::uint32_t rep = prime_replication(n, cr);
    try {
      const std::uint64_t p = smallest_prime_with_power_above(n, cr * rep);
      cands.push_back(evaluate("A3", FamilyParams::prime(r * rep, p), rep, n, dims, cr, options));
    } catch (const Error& e) {
      SchemeCandidate bad;
      bad.label = "A3";
      bad.note = e.what();
      bad.cost = std::numeric_limits<double>::infinity();
      cands.push_back(bad);
    }
  }

  // Bounded grid refining A1/A2.
  if (want_partitioned) {
    const std::uint32_t t_cap = a1_t(n, cr) + 1;
    const std::uint32_t b_cap = std::max<std::uint32_t>(r, 64);
    const std::uint32_t q_cap = a2_q(n, c) + 2;
    for (std::uint32_t t = 1; t <= t_cap; ++t) {
      for (std::uint32_t b = 1; b <= b_cap; ++b) {
        for (std::uint32_t q = 1; q <= std::min(b, q_cap); ++q) {
          FamilyParams fp = FamilyParams::partitioned(r, t, b, q);
          if (static_cast<std::uint64_t>(t) * fp.reduced_radius() + 1 > 62) continue;
          if (t == 1 && b == 1 && pref == SchemePreference::kAuto) fp = FamilyParams::basic(r, options.codomain);
          cands.push_back(evaluate("grid", fp, 1, n, dims, cr, options));
        }
      }
    }
  }

  const SchemeCandidate* best = nullptr;
  const SchemeCandidate* best_any = nullptr;
  for (const auto& cand : cands) {
    if (!best_any || better(cand, *best_any)) best_any = &cand;
    if (cand.feasible && (!best || better(cand, *best))) best = &cand;
  }
  if (!best) {
    if (!best_any) throw Error(ErrorCode::kInfeasible, "no candidate scheme for the requested preference");
    throw InfeasibleScheme("no scheme fits the budget; cheapest candidate: " + describe_candidate(*best_any), *best_any);
  }
  choice.chosen = *best;
  return choice;
}

SchemeChoice fixed_scheme(std::uint64_t n, std::size_t dims, double c, const FamilyParams& family,
                          std::uint32_t replication, const SelectOptions& options) {
  if (dims == 0) throw Error(ErrorCode::kZeroDims, "fixed_scheme needs d >= 1");
  if (replication == 0) throw Error(ErrorCode::kInvalidArgument, "replication must be >= 1");
  if (family.r % replication != 0) {
    throw Error(ErrorCode::kInvalidArgument, "family radius must be a multiple of the replication factor");
  }
  SchemeChoice choice;
  choice.n = n;
  choice.dims = dims;
  choice.radius = family.r / replication;
  choice.c = c;
  choice.cr = rounded_cr(choice.radius, c);
  choice.overhead = overhead_class(std::max<std::uint64_t>(n, 1), std::max<std::uint32_t>(choice.radius, 1), c);
  family.validate();
  if (family.kind == FamilyKind::kClassical) {
    throw Error(ErrorCode::kInvalidArgument, "classical families carry no radius; use classical_scheme");
  }
  const auto cand = evaluate("fixed", family, replication, n, dims, choice.cr, options);
  if (!cand.feasible) throw InfeasibleScheme(describe_candidate(cand) + ": " + cand.note, cand);
  choice.chosen = cand;
  choice.candidates.push_back(cand);
  return choice;
}

SchemeChoice classical_scheme(std::uint64_t n, std::size_t dims, std::uint32_t r, double c, std::uint32_t k,
                              std::uint64_t L) {
  if (dims == 0) throw Error(ErrorCode::kZeroDims, "classical_scheme needs d >= 1");
  SchemeChoice choice;
  choice.n = n;
  choice.dims = dims;
  choice.radius = r;
  choice.c = c;
  choice.cr = rounded_cr(r, c);
  choice.overhead = OverheadClass::kGeneral;
  SelectOptions options;
  options.max_masks = std::numeric_limits<double>::infinity();
  choice.chosen = evaluate("classical", FamilyParams::classical(k, L), 1, n, dims, choice.cr, options);
  if (!choice.chosen.feasible) throw Error(ErrorCode::kInvalidArgument, choice.chosen.note);
  choice.candidates.push_back(choice.chosen);
  return choice;
}

FamilyParams a1_params(std::uint64_t n, std::uint32_t r, double c) {
  return FamilyParams::partitioned(r, a1_t(n, rounded_cr(r, c)), 1, 1);
}

std::optional<FamilyParams> a2_params(std::uint64_t n, std::uint32_t r, double c) {
  rounded_cr(r, c);  // validates c
  const std::uint32_t q = a2_q(n, c);
  if (q > r) return std::nullopt;
  return FamilyParams::partitioned(r, 1, r, q);
}

double overhead_estimate(const SchemeChoice& choice) {
  const double classical = 2.0 * std::pow(static_cast<double>(choice.n), 1.0 / choice.c);
  return choice.chosen.cost / classical;
}

}  // namespace clsh
