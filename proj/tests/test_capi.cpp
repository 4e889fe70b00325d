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

// Exercises the shared library through clsh.h only.

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "clsh/clsh.h"

namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / ("clsh_capi_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string hex_of(const clsh_points* p, uint64_t id) {
  std::string buf(2 * ((clsh_points_dims(p) + 7) / 8) + 1, '\0');
  REQUIRE(clsh_points_get_hex(p, id, buf.data(), buf.size()) == CLSH_OK);
  buf.pop_back();
  return buf;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("status codes and messages") {
  CHECK(CLSH_OK == 0);
  CHECK(std::string(clsh_status_name(CLSH_OK)) == "ok");
  CHECK(std::string(clsh_version()).size() > 0);
  clsh_points* p = nullptr;
  CHECK(clsh_points_create(0, &p) == CLSH_ZERO_DIMS);
  CHECK(std::string(clsh_last_error()).size() > 0);
  CHECK(clsh_points_load("/nonexistent/clsh/file", &p) == CLSH_IO);
  CHECK(p == nullptr);
}

TEST_CASE("point sets round trip through files") {
  clsh_points* p = nullptr;
  REQUIRE(clsh_points_create(12, &p) == CLSH_OK);
  CHECK(clsh_points_append_hex(p, "ff0f") == CLSH_OK);
  CHECK(clsh_points_append_hex(p, "0100") == CLSH_OK);
  CHECK(clsh_points_append_hex(p, "ff1f") == CLSH_CORRUPT);  // padding bit set
  CHECK(clsh_points_count(p) == 2);
  CHECK(hex_of(p, 0) == "ff0f");
  char small[2];
  CHECK(clsh_points_get_hex(p, 0, small, sizeof small) == CLSH_INVALID_ARGUMENT);
  CHECK(clsh_points_get_hex(p, 5, small, sizeof small) == CLSH_INVALID_ARGUMENT);

  const fs::path file = temp_dir() / "points.clsh";
  REQUIRE(clsh_points_save(p, file.c_str()) == CLSH_OK);
  clsh_points* q = nullptr;
  REQUIRE(clsh_points_load(file.c_str(), &q) == CLSH_OK);
  CHECK(clsh_points_dims(q) == 12);
  CHECK(hex_of(q, 1) == "0100");
  clsh_points_free(p);
  clsh_points_free(q);
  clsh_points_free(nullptr);
}

TEST_CASE("scheme selection through the C API") {
  clsh_build_options o;
  clsh_build_options_init(&o);
  o.radius = 10;
  o.c = 3.0;
  clsh_scheme_info info;
  REQUIRE(clsh_select_scheme(uint64_t{1} << 30, 128, &o, &info) == CLSH_OK);
  CHECK(info.family_size == 2047.0);
  CHECK(info.family_kind == CLSH_FAMILY_BASIC);
  CHECK(info.cr == 30);
  CHECK(info.overhead_class == 0);

  o.scheme = CLSH_SCHEME_BASIC;
  o.radius = 40;
  CHECK(clsh_select_scheme(1000, 128, &o, &info) == CLSH_INFEASIBLE);
  CHECK(std::string(clsh_last_error()).find("2199023255551") != std::string::npos);

  o.scheme = CLSH_SCHEME_PRIME;
  o.radius = 2;
  o.p = 5;
  REQUIRE(clsh_select_scheme(1000, 64, &o, &info) == CLSH_OK);
  CHECK(info.family_kind == CLSH_FAMILY_PRIME);
  CHECK(info.family_size == 124.0);
}

TEST_CASE("build, query, save and load an index") {
  clsh_points* p = nullptr;
  REQUIRE(clsh_points_gen_random(500, 64, 7, &p) == CLSH_OK);
  const std::string y = hex_of(p, 0);
  const uint32_t dists[] = {1, 2, 3};
  uint32_t planted[3];
  REQUIRE(clsh_points_plant(p, y.c_str(), dists, 3, 8, planted) == CLSH_OK);
  CHECK(planted[0] == 500);

  clsh_build_options o;
  clsh_build_options_init(&o);
  o.radius = 3;
  o.seed = 9;
  clsh_index* idx = nullptr;
  REQUIRE(clsh_index_build(p, &o, &idx) == CLSH_OK);

  clsh_index_info info;
  REQUIRE(clsh_index_info_get(idx, &info) == CLSH_OK);
  CHECK(info.n == 503);
  CHECK(info.bucket_entries == info.n * info.masks);

  clsh_query_result r;
  REQUIRE(clsh_index_nearest(idx, y.c_str(), 0, 1.0, &r) == CLSH_OK);
  CHECK(r.found == 1);
  CHECK(r.id == 0);
  CHECK(r.distance == 0);

  uint32_t ids[2];
  uint32_t ds[2];
  size_t count = 0;
  REQUIRE(clsh_index_query_all(idx, y.c_str(), 3, ids, ds, 2, &count, &r) == CLSH_OK);
  CHECK(count == 4);
  CHECK(ids[0] == 0);
  CHECK(ids[1] == 500);
  CHECK(ds[1] == 1);

  REQUIRE(clsh_index_query_near(idx, y.c_str(), 3, 2.0, &r) == CLSH_OK);
  CHECK(r.found == 1);
  CHECK(r.distance < 6);
  CHECK(clsh_index_query_near(idx, "00", 3, 2.0, &r) == CLSH_DIMENSION_MISMATCH);
  CHECK(clsh_index_query_all(idx, y.c_str(), 4, ids, ds, 2, &count, nullptr) == CLSH_RADIUS_EXCEEDED);

  const fs::path a = temp_dir() / "a.clshi";
  const fs::path b = temp_dir() / "b.clshi";
  REQUIRE(clsh_index_save(idx, a.c_str()) == CLSH_OK);
  clsh_index* again = nullptr;
  REQUIRE(clsh_index_build(p, &o, &again) == CLSH_OK);
  REQUIRE(clsh_index_save(again, b.c_str()) == CLSH_OK);
  CHECK(slurp(a) == slurp(b));

  clsh_index* loaded = nullptr;
  REQUIRE(clsh_index_load(a.c_str(), &loaded) == CLSH_OK);
  size_t count2 = 0;
  REQUIRE(clsh_index_query_all(loaded, y.c_str(), 3, nullptr, nullptr, 0, &count2, nullptr) == CLSH_OK);
  CHECK(count2 == count);

  std::string bytes = slurp(a);
  bytes.resize(bytes.size() / 2);
  std::ofstream(b, std::ios::binary) << bytes;
  clsh_index* broken = nullptr;
  CHECK(clsh_index_load(b.c_str(), &broken) == CLSH_TRUNCATED);

  clsh_index_free(idx);
  clsh_index_free(again);
  clsh_index_free(loaded);
  clsh_points_free(p);
}

TEST_CASE("the seven mask family") {
  clsh_family_options o;
  clsh_family_options_init(&o);
  o.dims = 7;
  o.r = 2;
  o.mapping = CLSH_MAPPING_BINARY;
  clsh_family* f = nullptr;
  REQUIRE(clsh_family_build(&o, &f) == CLSH_OK);
  CHECK(clsh_family_size(f) == 7);
  uint64_t ones = 0;
  uint64_t dims = 0;
  REQUIRE(clsh_family_weight(f, &ones, &dims) == CLSH_OK);
  CHECK(ones == 4);
  CHECK(dims == 7);

  const fs::path file = temp_dir() / "a7.clsha";
  REQUIRE(clsh_family_save(f, file.c_str()) == CLSH_OK);
  clsh_family* g = nullptr;
  REQUIRE(clsh_family_load(file.c_str(), &g) == CLSH_OK);

  clsh_verify_result v;
  char witness[8];
  REQUIRE(clsh_family_verify(g, 2, 0, &v, witness, sizeof witness) == CLSH_OK);
  CHECK(v.covering == 1);
  CHECK(v.patterns_checked == 21);
  REQUIRE(clsh_family_verify(g, 3, 0, &v, witness, sizeof witness) == CLSH_OK);
  CHECK(v.covering == 0);
  CHECK(v.witness_weight == 3);
  CHECK(std::string(witness).size() == 7);

  o.dims = 8;
  clsh_family* bad = nullptr;
  CHECK(clsh_family_build(&o, &bad) == CLSH_INVALID_ARGUMENT);
  clsh_family_free(f);
  clsh_family_free(g);
}

TEST_CASE("experiments write records") {
  const fs::path out = temp_dir() / "collisions.csv";
  const char* params = R"({"dims": 32, "family": {"kind": "basic", "r": 2}, "distances": [3, 5], "trials": 50})";
  REQUIRE(clsh_experiment_run("collisions", params, out.c_str(), CLSH_FORMAT_CSV) == CLSH_OK);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("kind,d,r,t,b,q,p,distance,trials,mean_collisions,exact_expectation,paper_bound\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  const fs::path jl = temp_dir() / "cover.jsonl";
  const char* cover = R"({"dims": 10, "radius": 2, "family": {"kind": "basic", "r": 2}, "seeds": 3})";
  REQUIRE(clsh_experiment_run("covering", cover, jl.c_str(), CLSH_FORMAT_JSONL) == CLSH_OK);
  const std::string lines = slurp(jl);
  CHECK(std::count(lines.begin(), lines.end(), '\n') == 3);

  CHECK(clsh_experiment_run("collisions", "{not json", out.c_str(), CLSH_FORMAT_CSV) == CLSH_INVALID_ARGUMENT);
  CHECK(clsh_experiment_run("nope", "{}", out.c_str(), CLSH_FORMAT_CSV) == CLSH_INVALID_ARGUMENT);
}

TEST_CASE("bench") {
  clsh_build_options o;
  clsh_build_options_init(&o);
  o.radius = 4;
  o.seed = 3;
  clsh_bench_result b;
  REQUIRE(clsh_bench(1000, 64, &o, 20, &b) == CLSH_OK);
  CHECK(b.found == 20);
  CHECK(b.masks[0] <= b.masks[4]);
}
