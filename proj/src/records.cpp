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
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "clsh/harness.hpp"

namespace clsh {
namespace {

std::string six_digits(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_field(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return six_digits(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string quoted = "\"";
          for (const char ch : v) {
            if (ch == '"') quoted += '"';
            quoted += ch;
          }
          return quoted + "\"";
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

nlohmann::json json_field(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return std::stod(six_digits(v));
        } else {
          return v;
        }
      },
      cell);
}

Record family_columns(const FamilyParams& p, std::size_t dims) {
  return {{"kind", std::string(to_string(p.kind))},
          {"d", std::uint64_t{dims}},
          {"r", std::uint64_t{p.r}},
          {"t", std::uint64_t{p.t}},
          {"b", std::uint64_t{p.b}},
          {"q", std::uint64_t{p.q}},
          {"p", std::uint64_t{p.p}}};
}

}  // namespace

void write_records(std::ostream& out, const std::vector<Record>& records, OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    if (records.empty()) return;
    const Record& head = records.front();
    for (std::size_t i = 0; i < head.size(); ++i) out << (i ? "," : "") << head[i].first;
    out << '\n';
    for (const auto& rec : records) {
      for (std::size_t i = 0; i < rec.size(); ++i) out << (i ? "," : "") << csv_field(rec[i].second);
      out << '\n';
    }
    return;
  }
  for (const auto& rec : records) {
    nlohmann::ordered_json line = nlohmann::ordered_json::object();
    for (const auto& [name, cell] : rec) line[name] = json_field(cell);
    out << line.dump() << '\n';
  }
}

Record to_record(const CollisionStats& s) {
  Record rec = family_columns(s.params, s.dims);
  rec.emplace_back("distance", std::uint64_t{s.distance});
  rec.emplace_back("trials", s.trials);
  rec.emplace_back("mean_collisions", s.mean);
  rec.emplace_back("exact_expectation", s.exact);
  rec.emplace_back("paper_bound", s.bound);
  return rec;
}

Record to_record(const FalseNegativeStats& s) {
  Record rec = family_columns(s.params, s.dims);
  rec.emplace_back("k", std::uint64_t{s.params.k});
  rec.emplace_back("L", s.params.L);
  rec.emplace_back("distance", std::uint64_t{s.distance});
  rec.emplace_back("trials", s.trials);
  rec.emplace_back("misses", s.misses);
  rec.emplace_back("rate", s.rate());
  rec.emplace_back("expected_rate", s.expected_rate);
  return rec;
}

Record to_record(const TradeoffRow& row) {
  return {{"n", row.n},
          {"d", std::uint64_t{row.dims}},
          {"r", std::uint64_t{row.r}},
          {"c", row.c},
          {"method", row.method},
          {"detail", row.detail},
          {"predicted_cost", row.predicted_cost},
          {"measured_cost", row.measured_cost},
          {"measured_stderr", row.measured_stderr},
          {"trials", row.trials},
          {"fn_trials", row.fn_trials},
          {"false_negatives", row.false_negatives},
          {"fn_expected", row.fn_expected}};
}

Record to_record(const CoveringRow& row) {
  Record rec = family_columns(row.params, row.dims);
  rec.emplace_back("radius", std::uint64_t{row.radius});
  rec.emplace_back("seed", row.seed);
  rec.emplace_back("masks", row.masks);
  rec.emplace_back("weight_ones", row.weight.ones);
  rec.emplace_back("weight_dims", row.weight.dims);
  rec.emplace_back("weight", row.weight.value());
  rec.emplace_back("covering", row.covering);
  rec.emplace_back("patterns_checked", row.patterns_checked);
  rec.emplace_back("witness", row.witness);
  return rec;
}

Record to_record(const ParitySplitStats& s, std::size_t dims, std::uint32_t r) {
  return {{"d", std::uint64_t{dims}},
          {"r", std::uint64_t{r}},
          {"trials", s.trials},
          {"unsplit_mean", s.unsplit_mean},
          {"unsplit_exact", s.unsplit_exact},
          {"split_mean", s.split_mean},
          {"split_exact", s.split_exact},
          {"ratio", s.unsplit_mean > 0 ? s.split_mean / s.unsplit_mean : 0.0}};
}

}  // namespace clsh
