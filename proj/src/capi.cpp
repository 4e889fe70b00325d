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

#include "clsh/clsh.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <new>
#include <string>

#include <json.hpp>

#include "clsh/baseline.hpp"
#include "clsh/error.hpp"
#include "clsh/harness.hpp"
#include "clsh/index.hpp"
#include "clsh/scheme.hpp"

struct clsh_points {
  clsh::PointSet set;
};

struct clsh_index {
  clsh::Index index;
};

struct clsh_family {
  clsh::MaskFamily family;
};

namespace {

using clsh::ErrorCode;
using json = nlohmann::json;

thread_local std::string last_error;

template <class Fn>
clsh_status guard(Fn&& fn) noexcept {
  try {
    fn();
    last_error.clear();
    return CLSH_OK;
  } catch (const clsh::Error& e) {
    last_error = e.what();
    return static_cast<clsh_status>(e.code());
  } catch (const json::exception& e) {
    last_error = std::string("bad experiment parameters: ") + e.what();
    return CLSH_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CLSH_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CLSH_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return CLSH_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw clsh::Error(ErrorCode::kInvalidArgument, what);
}

void copy_string(const std::string& s, char* buf, std::size_t capacity) {
  if (capacity == 0) return;
  const std::size_t n = std::min(s.size(), capacity - 1);
  std::memcpy(buf, s.data(), n);
  buf[n] = '\0';
}

void write_exact(const std::string& s, char* buf, std::size_t capacity) {
  require(buf != nullptr, "output buffer is null");
  if (capacity < s.size() + 1) {
    throw clsh::Error(ErrorCode::kInvalidArgument,
                      "buffer too small: need " + std::to_string(s.size() + 1) + " chars");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
}

clsh::Codomain codomain_of(int value) {
  require(value >= 0 && value <= 2, "codomain must be 0, 1 or 2");
  return static_cast<clsh::Codomain>(value);
}

clsh::SelectOptions select_options(const clsh_build_options& o) {
  clsh::SelectOptions s;
  require(o.scheme >= CLSH_SCHEME_AUTO && o.scheme <= CLSH_SCHEME_PRIME, "unknown scheme kind");
  s.preference = static_cast<clsh::SchemePreference>(o.scheme);
  s.codomain = codomain_of(o.codomain);
  s.max_masks = o.max_masks;
  s.max_bucket_entries = o.max_bucket_entries;
  return s;
}

clsh::SchemeChoice resolve_scheme(std::uint64_t n, std::size_t dims, const clsh_build_options& o) {
  const clsh::SelectOptions s = select_options(o);
  const std::uint64_t m = std::max<std::uint64_t>(n, 1);
  if (o.scheme == CLSH_SCHEME_PARTITIONED && o.t && o.b && o.q) {
    return clsh::fixed_scheme(m, dims, o.c, clsh::FamilyParams::partitioned(o.radius, o.t, o.b, o.q), 1, s);
  }
  if (o.scheme == CLSH_SCHEME_PRIME && o.p) {
    const std::uint32_t rep = o.replication ? o.replication : 1;
    return clsh::fixed_scheme(m, dims, o.c, clsh::FamilyParams::prime(o.radius * rep, o.p), rep, s);
  }
  return clsh::select_scheme(m, dims, o.radius, o.c, s);
}

clsh::IndexOptions index_options(const clsh_build_options& o) {
  clsh::IndexOptions x;
  x.parity_split = o.parity_split != 0;
  x.digest_bits = o.digest_bits;
  x.threads = std::max<std::uint32_t>(o.threads, 1);
  if (o.max_bucket_entries < static_cast<double>(x.max_bucket_entries)) {
    x.max_bucket_entries = static_cast<std::uint64_t>(o.max_bucket_entries);
  }
  return x;
}

void fill_scheme(const clsh::SchemeChoice& choice, clsh_scheme_info* out) {
  *out = clsh_scheme_info{};
  const auto& c = choice.chosen;
  copy_string(c.label, out->label, sizeof out->label);
  out->family_kind = static_cast<int>(c.family.kind);
  out->r = c.family.r;
  out->t = c.family.t;
  out->b = c.family.b;
  out->q = c.family.q;
  out->p = c.family.p;
  out->replication = c.replication;
  out->cr = choice.cr;
  out->family_size = c.family_size;
  out->kappa = c.kappa;
  out->cost = c.cost;
  out->overhead_estimate = clsh::overhead_estimate(choice);
  out->overhead_class = static_cast<int>(choice.overhead);
  copy_string(clsh::describe_candidate(c), out->description, sizeof out->description);
}

void fill_query(const clsh::QueryOutcome& q, clsh_query_result* out) {
  *out = clsh_query_result{};
  if (q.result) {
    out->found = 1;
    out->id = q.result->id;
    out->distance = q.result->distance;
  }
  out->masks_evaluated = q.masks_evaluated;
  out->candidates_inspected = q.candidates_inspected;
  out->distance_computations = q.distance_computations;
}

clsh::BitVector parse_query(const char* hex, std::size_t dims) {
  require(hex != nullptr, "query is null");
  return clsh::BitVector::from_hex(hex, dims);
}

// ---- experiment parameters ----

clsh::FamilyParams family_from_json(const json& j) {
  const std::string kind = j.value("kind", std::string("basic"));
  const auto r = j.value("r", 0u);
  if (kind == "basic") {
    const std::string cod = j.value("codomain", std::string("nonzero"));
    clsh::Codomain c = clsh::Codomain::kNonzero;
    if (cod == "full") {
      c = clsh::Codomain::kFull;
    } else if (cod == "balanced") {
      c = clsh::Codomain::kBalanced;
    } else {
      require(cod == "nonzero", "codomain must be nonzero, full or balanced");
    }
    return clsh::FamilyParams::basic(r, c);
  }
  if (kind == "partitioned") {
    return clsh::FamilyParams::partitioned(r, j.value("t", 1u), j.value("b", 1u), j.value("q", 1u));
  }
  if (kind == "prime") return clsh::FamilyParams::prime(r, j.value("p", std::uint64_t{3}));
  if (kind == "classical") return clsh::FamilyParams::classical(j.value("k", 1u), j.value("L", std::uint64_t{1}));
  throw clsh::Error(ErrorCode::kInvalidArgument, "unknown family kind '" + kind + "'");
}

std::vector<clsh::FamilyParams> families_from_json(const json& j) {
  std::vector<clsh::FamilyParams> out;
  if (j.contains("families")) {
    for (const auto& f : j.at("families")) out.push_back(family_from_json(f));
  } else {
    out.push_back(family_from_json(j.at("family")));
  }
  return out;
}

template <class T>
std::vector<T> list_or_single(const json& j, const char* many, const char* one) {
  if (j.contains(many)) return j.at(many).get<std::vector<T>>();
  return {j.at(one).get<T>()};
}

std::vector<clsh::Record> run_experiment(const std::string& kind, const json& j) {
  std::vector<clsh::Record> records;
  const std::uint64_t seed = j.value("seed", std::uint64_t{1});
  if (kind == "collisions" || kind == "false-negatives") {
    const std::size_t dims = j.at("dims").get<std::size_t>();
    const auto trials = j.value("trials", std::uint64_t{1000});
    const auto distances = list_or_single<std::uint32_t>(j, "distances", "distance");
    std::uint64_t stream = 0;
    for (const auto& params : families_from_json(j)) {
      for (const auto D : distances) {
        const std::uint64_t s = clsh::mix_seed(seed, stream++);
        if (kind == "collisions") {
          require(params.kind != clsh::FamilyKind::kClassical, "collision experiments take covering families");
          records.push_back(clsh::to_record(clsh::measure_collisions(params, dims, D, trials, s)));
        } else {
          records.push_back(clsh::to_record(clsh::measure_false_negatives(params, dims, D, trials, s)));
        }
      }
    }
  } else if (kind == "tradeoff") {
    clsh::TradeoffSpec spec;
    spec.ns = j.value("ns", spec.ns);
    spec.dims = j.value("dims", spec.dims);
    spec.radii = j.value("radii", spec.radii);
    spec.cs = j.value("cs", spec.cs);
    spec.trials = j.value("trials", spec.trials);
    spec.classical_trials = j.value("classical_trials", spec.classical_trials);
    spec.fn_trials = j.value("fn_trials", spec.fn_trials);
    spec.max_work = j.value("max_work", spec.max_work);
    spec.seed = seed;
    for (const auto& row : clsh::run_tradeoff(spec)) records.push_back(clsh::to_record(row));
  } else if (kind == "covering") {
    const std::size_t dims = j.at("dims").get<std::size_t>();
    const auto radius = j.at("radius").get<std::uint32_t>();
    const auto seeds = j.value("seeds", std::uint64_t{1});
    clsh::CoveringOptions opts;
    opts.max_patterns = j.value("max_patterns", opts.max_patterns);
    for (const auto& params : families_from_json(j)) {
      for (std::uint64_t s = 0; s < seeds; ++s) {
        records.push_back(clsh::to_record(clsh::run_covering(params, dims, radius, seed + s, opts)));
      }
    }
  } else if (kind == "parity") {
    const std::size_t dims = j.at("dims").get<std::size_t>();
    const auto r = j.at("r").get<std::uint32_t>();
    const auto codomain = j.value("codomain", std::string("nonzero")) == "full" ? clsh::Codomain::kFull
                                                                                : clsh::Codomain::kNonzero;
    const auto s = clsh::measure_parity_split(dims, r, j.value("points_per_trial", std::size_t{20}),
                                              j.value("trials", std::uint64_t{1000}), seed, codomain);
    records.push_back(clsh::to_record(s, dims, r));
  } else {
    throw clsh::Error(ErrorCode::kInvalidArgument, "unknown experiment '" + kind + "'");
  }
  return records;
}

}  // namespace

extern "C" {

const char* clsh_version(void) { return "0.1.0"; }

const char* clsh_status_name(clsh_status status) {
  switch (status) {
    case CLSH_OK: return "ok";
    case CLSH_OUT_OF_MEMORY: return "out of memory";
    case CLSH_INTERNAL: return "internal error";
    default: return clsh::to_string(static_cast<ErrorCode>(status));
  }
}

const char* clsh_last_error(void) { return last_error.c_str(); }

// ---- points ----

clsh_status clsh_points_create(size_t dims, clsh_points** out) {
  return guard([&] {
    require(out != nullptr, "out is null");
    if (dims == 0) throw clsh::Error(ErrorCode::kZeroDims, "point sets need d >= 1");
    *out = new clsh_points{clsh::PointSet(dims)};
  });
}

clsh_status clsh_points_load(const char* path, clsh_points** out) {
  return guard([&] {
    require(path != nullptr && out != nullptr, "path or out is null");
    *out = new clsh_points{clsh::load_points(path)};
  });
}

clsh_status clsh_points_save(const clsh_points* points, const char* path) {
  return guard([&] {
    require(points != nullptr && path != nullptr, "points or path is null");
    clsh::save_points(path, points->set);
  });
}

void clsh_points_free(clsh_points* points) { delete points; }

size_t clsh_points_dims(const clsh_points* points) { return points ? points->set.dims() : 0; }

uint64_t clsh_points_count(const clsh_points* points) { return points ? points->set.size() : 0; }

clsh_status clsh_points_append_hex(clsh_points* points, const char* hex) {
  return guard([&] {
    require(points != nullptr, "points is null");
    points->set.push_back(parse_query(hex, points->set.dims()));
  });
}

clsh_status clsh_points_get_hex(const clsh_points* points, uint64_t id, char* buf, size_t capacity) {
  return guard([&] {
    require(points != nullptr, "points is null");
    require(id < points->set.size(), "point id out of range");
    write_exact(points->set[id].to_hex(), buf, capacity);
  });
}

clsh_status clsh_points_gen_random(uint64_t n, size_t dims, uint64_t seed, clsh_points** out) {
  return guard([&] {
    require(out != nullptr, "out is null");
    if (dims == 0) throw clsh::Error(ErrorCode::kZeroDims, "point sets need d >= 1");
    *out = new clsh_points{clsh::gen_random(n, dims, seed)};
  });
}

clsh_status clsh_points_gen_worst_case(const char* query_hex, size_t dims, uint64_t n, uint32_t r, uint64_t seed,
                                       clsh_points** out) {
  return guard([&] {
    require(out != nullptr, "out is null");
    if (dims == 0) throw clsh::Error(ErrorCode::kZeroDims, "point sets need d >= 1");
    *out = new clsh_points{clsh::gen_worst_case(parse_query(query_hex, dims), n, r, seed)};
  });
}

clsh_status clsh_points_plant(clsh_points* points, const char* query_hex, const uint32_t* distances, size_t count,
                              uint64_t seed, uint32_t* ids_out) {
  return guard([&] {
    require(points != nullptr, "points is null");
    require(count == 0 || distances != nullptr, "distances is null");
    const auto y = parse_query(query_hex, points->set.dims());
    clsh::Planted planted = clsh::plant_near(points->set, y, std::span<const std::uint32_t>(distances, count), seed);
    points->set = std::move(planted.points);
    if (ids_out) std::copy(planted.ids.begin(), planted.ids.end(), ids_out);
  });
}

// ---- schemes and indexes ----

void clsh_build_options_init(clsh_build_options* options) {
  if (!options) return;
  *options = clsh_build_options{};
  options->radius = 1;
  options->c = 2.0;
  options->scheme = CLSH_SCHEME_AUTO;
  options->codomain = CLSH_CODOMAIN_NONZERO;
  options->digest_bits = 128;
  options->threads = 1;
  options->max_masks = clsh::SelectOptions{}.max_masks;
  // Selection ignores the footprint by default; builds still enforce the
  // index entry budget.
  options->max_bucket_entries = std::numeric_limits<double>::infinity();
}

clsh_status clsh_select_scheme(uint64_t n, size_t dims, const clsh_build_options* options, clsh_scheme_info* out) {
  return guard([&] {
    require(options != nullptr && out != nullptr, "options or out is null");
    fill_scheme(resolve_scheme(n, dims, *options), out);
  });
}

clsh_status clsh_index_build(const clsh_points* points, const clsh_build_options* options, clsh_index** out) {
  return guard([&] {
    require(points != nullptr && options != nullptr && out != nullptr, "points, options or out is null");
    const auto scheme = resolve_scheme(points->set.size(), points->set.dims(), *options);
    *out = new clsh_index{clsh::Index::build(points->set, scheme, options->seed, index_options(*options))};
  });
}

clsh_status clsh_index_save(const clsh_index* index, const char* path) {
  return guard([&] {
    require(index != nullptr && path != nullptr, "index or path is null");
    index->index.save(path);
  });
}

clsh_status clsh_index_load(const char* path, clsh_index** out) {
  return guard([&] {
    require(path != nullptr && out != nullptr, "path or out is null");
    *out = new clsh_index{clsh::Index::load(path)};
  });
}

void clsh_index_free(clsh_index* index) { delete index; }

clsh_status clsh_index_info_get(const clsh_index* index, clsh_index_info* out) {
  return guard([&] {
    require(index != nullptr && out != nullptr, "index or out is null");
    const clsh::Index& x = index->index;
    *out = clsh_index_info{};
    out->n = x.size();
    out->dims = x.dims();
    out->radius = x.radius();
    out->c = x.scheme().c;
    out->parity_split = x.parity_split() ? 1 : 0;
    out->digest_bits = x.digest_bits();
    out->bucket_entries = x.bucket_entries();
    for (const auto& f : x.families()) out->masks += f.size();
    fill_scheme(x.scheme(), &out->scheme);
  });
}

clsh_status clsh_index_query_near(const clsh_index* index, const char* query_hex, uint32_t r, double c,
                                  clsh_query_result* out) {
  return guard([&] {
    require(index != nullptr && out != nullptr, "index or out is null");
    fill_query(index->index.query_near(parse_query(query_hex, index->index.dims()), r, c), out);
  });
}

clsh_status clsh_index_nearest(const clsh_index* index, const char* query_hex, int approx, double c,
                               clsh_query_result* out) {
  return guard([&] {
    require(index != nullptr && out != nullptr, "index or out is null");
    const auto mode = approx ? clsh::NearestMode::kApprox : clsh::NearestMode::kExact;
    fill_query(index->index.nearest_neighbor(parse_query(query_hex, index->index.dims()), mode, c), out);
  });
}

clsh_status clsh_index_query_all(const clsh_index* index, const char* query_hex, uint32_t r, uint32_t* ids,
                                 uint32_t* distances, size_t capacity, size_t* count, clsh_query_result* counters) {
  return guard([&] {
    require(index != nullptr && count != nullptr, "index or count is null");
    const auto got = index->index.query_all_within(parse_query(query_hex, index->index.dims()), r);
    *count = got.neighbors.size();
    const std::size_t n = std::min(capacity, got.neighbors.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (ids) ids[i] = got.neighbors[i].id;
      if (distances) distances[i] = got.neighbors[i].distance;
    }
    if (counters) {
      *counters = clsh_query_result{};
      counters->found = got.neighbors.empty() ? 0 : 1;
      if (!got.neighbors.empty()) {
        counters->id = got.neighbors.front().id;
        counters->distance = got.neighbors.front().distance;
      }
      counters->masks_evaluated = got.masks_evaluated;
      counters->candidates_inspected = got.candidates_inspected;
      counters->distance_computations = got.distance_computations;
    }
  });
}

// ---- families ----

void clsh_family_options_init(clsh_family_options* options) {
  if (!options) return;
  *options = clsh_family_options{};
  options->kind = CLSH_FAMILY_BASIC;
  options->t = options->b = options->q = 1;
  options->p = 3;
  options->max_masks = clsh::FamilyLimits{}.max_masks;
}

clsh_status clsh_family_build(const clsh_family_options* o, clsh_family** out) {
  return guard([&] {
    require(o != nullptr && out != nullptr, "options or out is null");
    if (o->dims == 0) throw clsh::Error(ErrorCode::kZeroDims, "families need d >= 1");
    const clsh::FamilyLimits limits{o->max_masks};
    clsh::FamilyParams params;
    switch (o->kind) {
      case CLSH_FAMILY_BASIC: params = clsh::FamilyParams::basic(o->r, codomain_of(o->codomain)); break;
      case CLSH_FAMILY_PARTITIONED: params = clsh::FamilyParams::partitioned(o->r, o->t, o->b, o->q); break;
      case CLSH_FAMILY_PRIME: params = clsh::FamilyParams::prime(o->r, o->p); break;
      case CLSH_FAMILY_CLASSICAL:
        *out = new clsh_family{clsh::build_classical(o->dims, o->k, o->L, o->seed)};
        return;
      default: throw clsh::Error(ErrorCode::kInvalidArgument, "unknown family kind");
    }
    if (o->mapping == CLSH_MAPPING_BINARY) {
      require(o->kind == CLSH_FAMILY_BASIC, "the binary mapping is defined for basic families only");
      params.validate();
      const std::uint64_t slots = (std::uint64_t{1} << (o->r + 1)) - 1;
      if (o->dims > slots) {
        throw clsh::Error(ErrorCode::kInvalidArgument, "the binary mapping needs d <= 2^(r+1)-1 = " +
                                                           std::to_string(slots));
      }
      std::vector<std::uint64_t> values(o->dims);
      for (std::size_t i = 0; i < o->dims; ++i) values[i] = i + 1;
      const auto m = clsh::MappingTable::basic(o->r, std::move(values));
      *out = new clsh_family{clsh::build_basic_masks(o->dims, o->r, m, limits)};
      return;
    }
    require(o->mapping == CLSH_MAPPING_RANDOM, "unknown mapping");
    *out = new clsh_family{clsh::build_family(params, o->dims, o->seed, limits)};
  });
}

clsh_status clsh_family_load(const char* path, clsh_family** out) {
  return guard([&] {
    require(path != nullptr && out != nullptr, "path or out is null");
    *out = new clsh_family{clsh::load_family(path)};
  });
}

clsh_status clsh_family_save(const clsh_family* family, const char* path) {
  return guard([&] {
    require(family != nullptr && path != nullptr, "family or path is null");
    clsh::save_family(path, family->family);
  });
}

void clsh_family_free(clsh_family* family) { delete family; }

uint64_t clsh_family_size(const clsh_family* family) { return family ? family->family.size() : 0; }

size_t clsh_family_dims(const clsh_family* family) { return family ? family->family.dims() : 0; }

clsh_status clsh_family_mask_bits(const clsh_family* family, uint64_t h, char* buf, size_t capacity) {
  return guard([&] {
    require(family != nullptr, "family is null");
    require(h < family->family.size(), "mask index out of range");
    write_exact(family->family[h].to_string(), buf, capacity);
  });
}

clsh_status clsh_family_weight(const clsh_family* family, uint64_t* ones, uint64_t* dims) {
  return guard([&] {
    require(family != nullptr && ones != nullptr && dims != nullptr, "null argument");
    const auto w = clsh::family_weight(family->family);
    *ones = w.ones;
    *dims = w.dims;
  });
}

clsh_status clsh_family_verify(const clsh_family* family, uint32_t r, uint64_t max_patterns, clsh_verify_result* out,
                               char* witness, size_t capacity) {
  return guard([&] {
    require(family != nullptr && out != nullptr, "family or out is null");
    clsh::CoveringOptions opts;
    if (max_patterns) opts.max_patterns = max_patterns;
    const auto res = clsh::is_r_covering(family->family.masks(), family->family.dims(), r, opts);
    *out = clsh_verify_result{};
    out->covering = res.covering ? 1 : 0;
    out->patterns_checked = res.patterns_checked;
    if (res.witness) {
      out->witness_weight = static_cast<std::uint32_t>(clsh::hamming_weight(*res.witness));
      if (witness) write_exact(res.witness->to_string(), witness, capacity);
    }
  });
}

// ---- experiments ----

clsh_status clsh_experiment_run(const char* kind, const char* json_params, const char* out_path, int format) {
  return guard([&] {
    require(kind != nullptr, "experiment kind is null");
    require(format == CLSH_FORMAT_CSV || format == CLSH_FORMAT_JSONL, "format must be csv or jsonl");
    const json params = json::parse(json_params ? json_params : "{}");
    require(params.is_object(), "experiment parameters must be a JSON object");
    const auto records = run_experiment(kind, params);
    const auto fmt = static_cast<clsh::OutputFormat>(format);
    if (out_path == nullptr || std::strcmp(out_path, "-") == 0) {
      clsh::write_records(std::cout, records, fmt);
      std::cout.flush();
      return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw clsh::Error(ErrorCode::kIo, std::string("cannot open ") + out_path + " for writing");
    clsh::write_records(out, records, fmt);
    if (!out.flush()) throw clsh::Error(ErrorCode::kIo, std::string("write failed: ") + out_path);
  });
}

clsh_status clsh_bench(uint64_t n, size_t dims, const clsh_build_options* options, uint64_t queries,
                       clsh_bench_result* out) {
  return guard([&] {
    require(options != nullptr && out != nullptr, "options or out is null");
    const auto b = clsh::run_bench(n, dims, options->radius, options->c, queries, options->seed,
                                   index_options(*options), select_options(*options));
    *out = clsh_bench_result{};
    out->n = b.n;
    out->dims = b.dims;
    out->r = b.r;
    out->c = b.c;
    out->queries = b.queries;
    out->found = b.found;
    out->build_seconds = b.build_seconds;
    out->query_seconds = b.query_seconds;
    out->queries_per_second = b.queries_per_second;
    for (std::size_t i = 0; i < 5 && i < b.masks_percentiles.size(); ++i) {
      out->masks[i] = b.masks_percentiles[i];
      out->candidates[i] = b.candidates_percentiles[i];
      out->distances[i] = b.distance_percentiles[i];
    }
    copy_string(b.scheme, out->scheme, sizeof out->scheme);
  });
}

}  // extern "C"
