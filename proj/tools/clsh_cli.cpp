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

// clsh command-line tool. Talks to the library through clsh.h only.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clsh/clsh.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotFound = 1;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitUsage = 64;

// Thrown from command bodies; carries the process exit code.
struct Failure {
  int code;
};

int exit_code(clsh_status s) {
  if (s == CLSH_OK) return kExitOk;
  if (s == CLSH_INFEASIBLE) return kExitInfeasible;
  return kExitInput;
}

void check(clsh_status s, const std::string& what) {
  if (s == CLSH_OK) return;
  std::cerr << "clsh: " << what << ": " << clsh_last_error() << " [" << clsh_status_name(s) << "]\n";
  throw Failure{exit_code(s)};
}

[[noreturn]] void input_error(const std::string& message) {
  std::cerr << "clsh: " << message << "\n";
  throw Failure{kExitInput};
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using Points = Handle<clsh_points, clsh_points_free>;
using IndexHandle = Handle<clsh_index, clsh_index_free>;
using Family = Handle<clsh_family, clsh_family_free>;

std::string point_hex(const clsh_points* p, std::uint64_t id) {
  std::string buf(2 * ((clsh_points_dims(p) + 7) / 8) + 1, '\0');
  check(clsh_points_get_hex(p, id, buf.data(), buf.size()), "reading point");
  buf.pop_back();
  return buf;
}

struct Seed {
  std::uint64_t value = 0;
  std::string source;
};

Seed resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return {*flag, "flag"};
  if (const char* env = std::getenv("CLSH_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(env, &used, 0);
      if (used == std::string(env).size()) return {v, "CLSH_SEED"};
    } catch (const std::exception&) {
    }
    std::cerr << "clsh: CLSH_SEED is not an integer: " << env << "\n";
    throw Failure{kExitUsage};
  }
  std::random_device rd;
  const std::uint64_t v = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  return {v, "entropy"};
}

// One line per run with the seed and every option value, on stderr.
void print_header(const CLI::App& cmd, const Seed& seed) {
  std::ostringstream os;
  std::string name = cmd.get_name();
  if (const CLI::App* parent = cmd.get_parent(); parent && parent->get_parent()) name = parent->get_name() + " " + name;
  os << "# clsh " << clsh_version() << " " << name << " seed=" << seed.value << " (" << seed.source << ")";
  for (const CLI::Option* opt : cmd.get_options()) {
    const std::string key = opt->get_single_name();
    if (key == "help" || key == "seed" || key.empty()) continue;
    std::string value;
    if (opt->count() > 0) {
      const auto results = opt->results();
      for (std::size_t i = 0; i < results.size(); ++i) value += (i ? "," : "") + results[i];
      if (results.empty() || (opt->get_expected_max() == 0)) value = "true";
    } else {
      value = opt->get_default_str();
    }
    if (value.empty() || value == "{}" || value == "[]") continue;
    os << " " << key << "=" << value;
  }
  std::cerr << os.str() << "\n";
}

int parse_format(const std::string& f) { return f == "jsonl" ? CLSH_FORMAT_JSONL : CLSH_FORMAT_CSV; }

int parse_scheme(const std::string& s) {
  if (s == "basic") return CLSH_SCHEME_BASIC;
  if (s == "partitioned") return CLSH_SCHEME_PARTITIONED;
  if (s == "prime") return CLSH_SCHEME_PRIME;
  return CLSH_SCHEME_AUTO;
}

int parse_codomain(const std::string& s) {
  if (s == "full") return CLSH_CODOMAIN_FULL;
  if (s == "balanced") return CLSH_CODOMAIN_BALANCED;
  return CLSH_CODOMAIN_NONZERO;
}

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---- gen ----

struct GenPointsArgs {
  std::uint64_t n = 1000;
  std::size_t dims = 128;
  std::string out;
  std::string worst_case;  // query hex
  std::uint32_t radius = 0;
  std::string plant;       // query hex
  std::vector<std::uint32_t> distances;
};

int run_gen_points(const GenPointsArgs& a, const Seed& seed) {
  Points p;
  if (!a.worst_case.empty()) {
    check(clsh_points_gen_worst_case(a.worst_case.c_str(), a.dims, a.n, a.radius, seed.value, p.out()),
          "generating worst-case points");
  } else {
    check(clsh_points_gen_random(a.n, a.dims, seed.value, p.out()), "generating points");
  }
  if (!a.plant.empty()) {
    std::vector<std::uint32_t> ids(a.distances.size());
    check(clsh_points_plant(p.get(), a.plant.c_str(), a.distances.data(), a.distances.size(), seed.value ^ 0x9e37,
                            ids.data()),
          "planting points");
    for (std::size_t i = 0; i < ids.size(); ++i) {
      std::cout << "planted id=" << ids[i] << " distance=" << a.distances[i] << "\n";
    }
  }
  check(clsh_points_save(p.get(), a.out.c_str()), "writing " + a.out);
  std::cout << "wrote " << clsh_points_count(p.get()) << " points of " << a.dims << " dims to " << a.out << "\n";
  return kExitOk;
}

struct GenFamilyArgs {
  std::string kind = "basic";
  std::size_t dims = 0;
  std::uint32_t r = 0, t = 1, b = 1, q = 1, k = 1;
  std::uint64_t p = 3, L = 1;
  std::string codomain = "nonzero";
  std::string mapping = "random";
  std::string out;
};

int run_gen_family(const GenFamilyArgs& a, const Seed& seed) {
  clsh_family_options o;
  clsh_family_options_init(&o);
  if (a.kind == "basic") {
    o.kind = CLSH_FAMILY_BASIC;
  } else if (a.kind == "partitioned") {
    o.kind = CLSH_FAMILY_PARTITIONED;
  } else if (a.kind == "prime") {
    o.kind = CLSH_FAMILY_PRIME;
  } else {
    o.kind = CLSH_FAMILY_CLASSICAL;
  }
  o.dims = a.dims;
  o.r = a.r;
  o.t = a.t;
  o.b = a.b;
  o.q = a.q;
  o.p = a.p;
  o.k = a.k;
  o.L = a.L;
  o.codomain = parse_codomain(a.codomain);
  o.mapping = a.mapping == "binary" ? CLSH_MAPPING_BINARY : CLSH_MAPPING_RANDOM;
  o.seed = seed.value;
  Family f;
  check(clsh_family_build(&o, f.out()), "building family");
  check(clsh_family_save(f.get(), a.out.c_str()), "writing " + a.out);
  std::cout << "wrote " << clsh_family_size(f.get()) << " masks of " << a.dims << " dims to " << a.out << "\n";
  return kExitOk;
}

// ---- build ----

struct BuildArgs {
  std::string input;
  std::string out;
  std::uint32_t radius = 1;
  double approx = 2.0;
  std::string scheme = "auto";
  bool parity_split = false;
  std::uint32_t t = 0, b = 0, q = 0, replication = 0;
  std::uint64_t p = 0;
  std::string codomain = "nonzero";
  std::uint32_t digest_bits = 128;
  std::uint32_t threads = 1;
  double max_masks = 4294967296.0;
};

clsh_build_options build_options(const BuildArgs& a, const Seed& seed) {
  clsh_build_options o;
  clsh_build_options_init(&o);
  o.radius = a.radius;
  o.c = a.approx;
  o.scheme = parse_scheme(a.scheme);
  o.codomain = parse_codomain(a.codomain);
  o.t = a.t;
  o.b = a.b;
  o.q = a.q;
  o.p = a.p;
  o.replication = a.replication;
  o.parity_split = a.parity_split ? 1 : 0;
  o.digest_bits = a.digest_bits;
  o.threads = a.threads;
  o.max_masks = a.max_masks;
  o.seed = seed.value;
  return o;
}

void print_scheme(const clsh_scheme_info& s) {
  static const char* classes[] = {"O(1)", "polylog", "min(n^{0.4/c} r, 2^r)"};
  std::cout << "scheme: " << s.description << "\n"
            << "masks: " << fixed6(s.family_size) << "\n"
            << "predicted kappa: " << fixed6(s.kappa) << "\n"
            << "predicted cost: " << fixed6(s.cost) << "\n"
            << "overhead estimate: " << fixed6(s.overhead_estimate) << " (class "
            << classes[s.overhead_class < 0 || s.overhead_class > 2 ? 2 : s.overhead_class] << ")\n";
}

int run_build(const BuildArgs& a, const Seed& seed) {
  Points p;
  check(clsh_points_load(a.input.c_str(), p.out()), "reading " + a.input);
  const clsh_build_options o = build_options(a, seed);
  clsh_scheme_info info;
  check(clsh_select_scheme(clsh_points_count(p.get()), clsh_points_dims(p.get()), &o, &info), "choosing a scheme");
  IndexHandle idx;
  check(clsh_index_build(p.get(), &o, idx.out()), "building the index");
  clsh_index_info x;
  check(clsh_index_info_get(idx.get(), &x), "reading index info");
  check(clsh_index_save(idx.get(), a.out.c_str()), "writing " + a.out);
  print_scheme(x.scheme);
  std::cout << "points: " << x.n << "\n"
            << "bucket entries: " << x.bucket_entries << "\n"
            << "wrote " << a.out << "\n";
  return kExitOk;
}

// ---- query ----

struct QueryArgs {
  std::string index;
  std::string query;
  std::string mode = "near";
  bool approx = false;
  std::optional<double> c;
  std::optional<std::uint32_t> radius;
  std::string format = "csv";
};

int run_query(const QueryArgs& a) {
  IndexHandle idx;
  check(clsh_index_load(a.index.c_str(), idx.out()), "reading " + a.index);
  clsh_index_info info;
  check(clsh_index_info_get(idx.get(), &info), "reading index info");

  std::vector<std::string> queries;
  if (std::filesystem::is_regular_file(a.query)) {
    Points qp;
    check(clsh_points_load(a.query.c_str(), qp.out()), "reading " + a.query);
    for (std::uint64_t i = 0; i < clsh_points_count(qp.get()); ++i) queries.push_back(point_hex(qp.get(), i));
  } else {
    queries.push_back(a.query);
  }
  const std::uint32_t r = a.radius.value_or(info.radius);
  const double c = a.c.value_or(info.c);
  const bool jsonl = a.format == "jsonl";

  if (!jsonl) {
    std::cout << (a.mode == "all" ? "query,id,distance\n"
                                  : "query,found,id,distance,masks_evaluated,candidates_inspected,"
                                    "distance_computations\n");
  }
  bool all_found = true;
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    const char* hex = queries[qi].c_str();
    clsh_query_result res{};
    if (a.mode == "all") {
      std::size_t count = 0;
      check(clsh_index_query_all(idx.get(), hex, r, nullptr, nullptr, 0, &count, nullptr), "query");
      std::vector<std::uint32_t> ids(count), ds(count);
      check(clsh_index_query_all(idx.get(), hex, r, ids.data(), ds.data(), count, &count, &res), "query");
      if (jsonl) {
        nlohmann::ordered_json j;
        j["query"] = qi;
        j["ids"] = ids;
        j["distances"] = ds;
        j["masks_evaluated"] = res.masks_evaluated;
        j["candidates_inspected"] = res.candidates_inspected;
        j["distance_computations"] = res.distance_computations;
        std::cout << j.dump() << "\n";
      } else {
        for (std::size_t i = 0; i < count; ++i) std::cout << qi << "," << ids[i] << "," << ds[i] << "\n";
      }
      all_found = all_found && count > 0;
      continue;
    }
    if (a.mode == "nn") {
      check(clsh_index_nearest(idx.get(), hex, a.approx ? 1 : 0, c, &res), "query");
    } else {
      check(clsh_index_query_near(idx.get(), hex, r, c, &res), "query");
    }
    if (jsonl) {
      nlohmann::ordered_json j;
      j["query"] = qi;
      j["found"] = res.found != 0;
      j["id"] = res.found ? nlohmann::ordered_json(res.id) : nlohmann::ordered_json(nullptr);
      j["distance"] = res.found ? nlohmann::ordered_json(res.distance) : nlohmann::ordered_json(nullptr);
      j["masks_evaluated"] = res.masks_evaluated;
      j["candidates_inspected"] = res.candidates_inspected;
      j["distance_computations"] = res.distance_computations;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << qi << "," << (res.found ? "true" : "false") << ",";
      if (res.found) std::cout << res.id;
      std::cout << ",";
      if (res.found) std::cout << res.distance;
      std::cout << "," << res.masks_evaluated << "," << res.candidates_inspected << "," << res.distance_computations
                << "\n";
    }
    all_found = all_found && res.found;
  }
  return all_found ? kExitOk : kExitNotFound;
}

// ---- verify ----

struct VerifyArgs {
  std::string family;
  std::uint32_t radius = 1;
  std::uint64_t max_patterns = 100'000'000;
};

int run_verify(const VerifyArgs& a) {
  Family f;
  check(clsh_family_load(a.family.c_str(), f.out()), "reading " + a.family);
  clsh_verify_result v;
  std::string witness(clsh_family_dims(f.get()) + 1, '\0');
  check(clsh_family_verify(f.get(), a.radius, a.max_patterns, &v, witness.data(), witness.size()),
        "verifying " + a.family);
  std::uint64_t ones = 0, dims = 0;
  check(clsh_family_weight(f.get(), &ones, &dims), "weighing " + a.family);
  std::cout << "masks: " << clsh_family_size(f.get()) << "\n"
            << "weight: " << ones << "/" << dims << "\n"
            << "patterns checked: " << v.patterns_checked << "\n"
            << "covering: " << (v.covering ? "true" : "false") << "\n";
  if (!v.covering) {
    std::cout << "witness: " << witness.c_str() << " (weight " << v.witness_weight << ")\n";
    return kExitNotFound;
  }
  return kExitOk;
}

// ---- experiment ----

nlohmann::json default_params(const std::string& kind) {
  using nlohmann::json;
  if (kind == "collisions") {
    return json{{"dims", 128},
                {"family", {{"kind", "basic"}, {"r", 10}}},
                {"distances", {11, 15, 20, 25, 30, 31}},
                {"trials", 1000}};
  }
  if (kind == "false-negatives") {
    return json{{"dims", 128},
                {"families", json::array({json{{"kind", "basic"}, {"r", 10}},
                                          json{{"kind", "classical"}, {"k", 78}, {"L", 2047}}})},
                {"distances", {10}},
                {"trials", 1000}};
  }
  if (kind == "covering") {
    return json{{"dims", 16}, {"radius", 4}, {"family", {{"kind", "basic"}, {"r", 4}}}, {"seeds", 20}};
  }
  if (kind == "parity") return json{{"dims", 64}, {"r", 6}, {"trials", 1000}};
  return json::object();  // tradeoff: library defaults
}

struct ExperimentArgs {
  std::string kind;
  std::string params;
  std::string config;
  std::string out = "-";
  std::string format = "csv";
};

int run_experiment(const ExperimentArgs& a, const Seed& seed) {
  nlohmann::json params;
  try {
    if (!a.config.empty()) {
      std::ifstream in(a.config);
      if (!in) input_error("cannot read " + a.config);
      params = nlohmann::json::parse(in);
    } else if (!a.params.empty()) {
      params = nlohmann::json::parse(a.params);
    } else {
      params = default_params(a.kind);
    }
  } catch (const nlohmann::json::exception& e) {
    input_error(std::string("bad experiment parameters: ") + e.what());
  }
  if (!params.is_object()) input_error("experiment parameters must be a JSON object");
  if (!params.contains("seed")) params["seed"] = seed.value;
  std::cerr << "# params " << params.dump() << "\n";
  check(clsh_experiment_run(a.kind.c_str(), params.dump().c_str(), a.out.c_str(), parse_format(a.format)),
        "experiment " + a.kind);
  return kExitOk;
}

// ---- bench ----

struct BenchArgs {
  BuildArgs build;
  std::uint64_t n = 10000;
  std::size_t dims = 128;
  std::uint64_t queries = 1000;
};

int run_bench(const BenchArgs& a, const Seed& seed) {
  const clsh_build_options o = build_options(a.build, seed);
  clsh_bench_result b;
  check(clsh_bench(a.n, a.dims, &o, a.queries, &b), "bench");
  auto row = [](const char* name, const std::uint64_t* v) {
    std::cout << name << " p0/p50/p90/p99/p100: " << v[0] << " " << v[1] << " " << v[2] << " " << v[3] << " "
              << v[4] << "\n";
  };
  std::cout << "scheme: " << b.scheme << "\n"
            << "build seconds: " << fixed6(b.build_seconds) << "\n"
            << "queries: " << b.queries << " found: " << b.found << "\n"
            << "queries/sec: " << fixed6(b.queries_per_second) << "\n";
  row("masks evaluated", b.masks);
  row("candidates inspected", b.candidates);
  row("distance computations", b.distances);
  return kExitOk;
}

void add_build_flags(CLI::App* cmd, BuildArgs& a) {
  cmd->add_option("--radius,-r", a.radius, "Search radius r")->check(CLI::PositiveNumber);
  cmd->add_option("--approx,-c", a.approx, "Approximation factor c > 1");
  cmd->add_option("--scheme", a.scheme, "Construction to use")
      ->check(CLI::IsMember({"auto", "basic", "partitioned", "prime"}));
  cmd->add_flag("--parity-split", a.parity_split, "Split points by weight parity");
  cmd->add_option("--t", a.t, "Partitioned: parity checks per dimension (with --b and --q)");
  cmd->add_option("--b", a.b, "Partitioned: number of partitions");
  cmd->add_option("--q", a.q, "Partitioned: partitions per dimension");
  cmd->add_option("--p", a.p, "Prime: field size");
  cmd->add_option("--replication", a.replication, "Prime: dimension replication factor");
  cmd->add_option("--codomain", a.codomain, "Basic: distribution of mapping values")
      ->check(CLI::IsMember({"nonzero", "full", "balanced"}));
  cmd->add_option("--digest-bits", a.digest_bits, "Bucket key width, 1..128")->check(CLI::Range(1, 128));
  cmd->add_option("--threads", a.threads, "Build threads")->check(CLI::PositiveNumber);
  cmd->add_option("--max-masks", a.max_masks, "Largest family size the selector may pick");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clsh: Hamming-space similarity search without false negatives"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--seed", seed_flag, "Random seed (else $CLSH_SEED, else OS entropy)");

  auto* gen = app.add_subcommand("gen", "Generate point sets or mask families");
  gen->require_subcommand(1);
  GenPointsArgs gp;
  auto* gen_points = gen->add_subcommand("points", "Write a random CLSH1 point set");
  gen_points->add_option("--n", gp.n, "Number of points");
  gen_points->add_option("--dims,-d", gp.dims, "Dimensions")->check(CLI::PositiveNumber);
  gen_points->add_option("--out,-o", gp.out, "Output file")->required();
  gen_points->add_option("--worst-case", gp.worst_case, "Query hex: place every point at distance 2r from it");
  gen_points->add_option("--radius,-r", gp.radius, "r for --worst-case");
  gen_points->add_option("--plant", gp.plant, "Query hex to plant neighbors around");
  gen_points->add_option("--distances", gp.distances, "Distances of the planted neighbors")->delimiter(',');

  GenFamilyArgs gf;
  auto* gen_family = gen->add_subcommand("family", "Write a CLSHA mask family");
  gen_family->add_option("--kind", gf.kind, "Family kind")
      ->check(CLI::IsMember({"basic", "partitioned", "prime", "classical"}));
  gen_family->add_option("--dims,-d", gf.dims, "Dimensions")->required()->check(CLI::PositiveNumber);
  gen_family->add_option("--radius,-r", gf.r, "Covering radius");
  gen_family->add_option("--t", gf.t, "Partitioned: parity checks per dimension");
  gen_family->add_option("--b", gf.b, "Partitioned: number of partitions");
  gen_family->add_option("--q", gf.q, "Partitioned: partitions per dimension");
  gen_family->add_option("--p", gf.p, "Prime: field size");
  gen_family->add_option("--k", gf.k, "Classical: samples per mask");
  gen_family->add_option("--L", gf.L, "Classical: number of masks");
  gen_family->add_option("--codomain", gf.codomain, "Basic: distribution of mapping values")
      ->check(CLI::IsMember({"nonzero", "full", "balanced"}));
  gen_family->add_option("--mapping", gf.mapping, "random, or binary (dimension i gets i+1 in base 2)")
      ->check(CLI::IsMember({"random", "binary"}));
  gen_family->add_option("--out,-o", gf.out, "Output file")->required();

  BuildArgs ba;
  auto* build = app.add_subcommand("build", "Build a CLSHI index from a CLSH1 point set");
  build->add_option("--input,-i", ba.input, "Input points (CLSH1)")->required();
  build->add_option("--out,-o", ba.out, "Output index (CLSHI)")->required();
  add_build_flags(build, ba);

  QueryArgs qa;
  auto* query = app.add_subcommand("query", "Query an index");
  query->add_option("--index", qa.index, "Index file (CLSHI)")->required();
  query->add_option("--query,-q", qa.query, "Hex vector, or a CLSH1 file of queries")->required();
  query->add_option("--mode", qa.mode, "nn, near or all")->check(CLI::IsMember({"nn", "near", "all"}));
  auto* exact_flag = query->add_flag("--exact", "Exact nearest neighbor (default)");
  auto* approx_flag = query->add_flag("--approx", qa.approx, "c-approximate nearest neighbor");
  exact_flag->excludes(approx_flag);
  query->add_option("--c", qa.c, "Approximation factor (defaults to the index's)");
  query->add_option("--radius,-r", qa.radius, "Search radius (defaults to the index's)");
  query->add_option("--format", qa.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Exhaustively check that a family is r-covering");
  verify->add_option("--family,-f", va.family, "Family file (CLSHA)")->required();
  verify->add_option("--radius,-r", va.radius, "Radius to check");
  verify->add_option("--max-patterns", va.max_patterns, "Refuse checks larger than this");

  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "Run a measurement and write CSV or JSON lines");
  experiment->add_option("kind", ea.kind, "collisions, false-negatives, tradeoff, covering or parity")
      ->required()
      ->check(CLI::IsMember({"collisions", "false-negatives", "tradeoff", "covering", "parity"}));
  experiment->add_option("--params", ea.params, "Parameters as a JSON object");
  experiment->add_option("--config", ea.config, "Parameters from a JSON file");
  experiment->add_option("--out,-o", ea.out, "Output file, - for stdout");
  experiment->add_option("--format", ea.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Throughput on random data with planted neighbors");
  bench->add_option("--n", bench_args.n, "Number of points");
  bench->add_option("--dims,-d", bench_args.dims, "Dimensions")->check(CLI::PositiveNumber);
  bench->add_option("--queries", bench_args.queries, "Number of queries");
  add_build_flags(bench, bench_args.build);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Seed seed = resolve_seed(seed_flag);
    if (gen_points->parsed()) {
      print_header(*gen_points, seed);
      return run_gen_points(gp, seed);
    }
    if (gen_family->parsed()) {
      print_header(*gen_family, seed);
      return run_gen_family(gf, seed);
    }
    if (build->parsed()) {
      print_header(*build, seed);
      return run_build(ba, seed);
    }
    if (query->parsed()) {
      print_header(*query, seed);
      return run_query(qa);
    }
    if (verify->parsed()) {
      print_header(*verify, seed);
      return run_verify(va);
    }
    if (experiment->parsed()) {
      print_header(*experiment, seed);
      return run_experiment(ea, seed);
    }
    if (bench->parsed()) {
      print_header(*bench, seed);
      return run_bench(bench_args, seed);
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return kExitUsage;
}
