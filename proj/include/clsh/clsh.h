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

/* C interface to the clsh library.
 *
 * Every fallible call returns a clsh_status; CLSH_OK is 0 and the other
 * values match clsh::ErrorCode. After a failure clsh_last_error() describes
 * it (thread local, valid until the next call on the same thread).
 * Bit vectors cross the boundary as hex strings: byte j of the LSB-first
 * payload is written as two digits, byte 0 first.
 */

#ifndef CLSH_CLSH_H_
#define CLSH_CLSH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CLSH_BUILDING_LIBRARY)
#define CLSH_API __declspec(dllexport)
#else
#define CLSH_API __declspec(dllimport)
#endif
#else
#define CLSH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum clsh_status {
  CLSH_OK = 0,
  CLSH_INVALID_ARGUMENT = 1,
  CLSH_DIMENSION_MISMATCH = 2,
  CLSH_IO = 3,
  CLSH_BAD_MAGIC = 4,
  CLSH_TRUNCATED = 5,
  CLSH_ZERO_DIMS = 6,
  CLSH_SIZE_OVERFLOW = 7,
  CLSH_UNSUPPORTED_VERSION = 8,
  CLSH_CORRUPT = 9,
  CLSH_RADIUS_EXCEEDED = 10,
  CLSH_TOO_LARGE_TO_VERIFY = 11,
  CLSH_INFEASIBLE = 12,
  CLSH_OVERFLOW = 13,
  CLSH_UNSUPPORTED = 14,
  CLSH_OUT_OF_MEMORY = 100,
  CLSH_INTERNAL = 101
} clsh_status;

typedef struct clsh_points clsh_points;
typedef struct clsh_index clsh_index;
typedef struct clsh_family clsh_family;

CLSH_API const char* clsh_version(void);
CLSH_API const char* clsh_status_name(clsh_status status);
CLSH_API const char* clsh_last_error(void);

/* ---- Point sets (CLSH1 files) ---- */

CLSH_API clsh_status clsh_points_create(size_t dims, clsh_points** out);
CLSH_API clsh_status clsh_points_load(const char* path, clsh_points** out);
CLSH_API clsh_status clsh_points_save(const clsh_points* points, const char* path);
CLSH_API void clsh_points_free(clsh_points* points);
CLSH_API size_t clsh_points_dims(const clsh_points* points);
CLSH_API uint64_t clsh_points_count(const clsh_points* points);
CLSH_API clsh_status clsh_points_append_hex(clsh_points* points, const char* hex);
/* Hex of point `id`; `capacity` must hold 2*ceil(dims/8)+1 chars. */
CLSH_API clsh_status clsh_points_get_hex(const clsh_points* points, uint64_t id, char* buf, size_t capacity);
CLSH_API clsh_status clsh_points_gen_random(uint64_t n, size_t dims, uint64_t seed, clsh_points** out);
/* n points at distance exactly 2r from the query. */
CLSH_API clsh_status clsh_points_gen_worst_case(const char* query_hex, size_t dims, uint64_t n, uint32_t r,
                                                uint64_t seed, clsh_points** out);
/* Appends one point per entry of `distances` at that distance from the
 * query; their ids go to `ids_out` (may be NULL). */
CLSH_API clsh_status clsh_points_plant(clsh_points* points, const char* query_hex, const uint32_t* distances,
                                       size_t count, uint64_t seed, uint32_t* ids_out);

/* ---- Schemes and index builds ---- */

typedef enum clsh_scheme_kind {
  CLSH_SCHEME_AUTO = 0,
  CLSH_SCHEME_BASIC = 1,
  CLSH_SCHEME_PARTITIONED = 2,
  CLSH_SCHEME_PRIME = 3
} clsh_scheme_kind;

typedef enum clsh_family_kind {
  CLSH_FAMILY_BASIC = 1,
  CLSH_FAMILY_PARTITIONED = 2,
  CLSH_FAMILY_PRIME = 3,
  CLSH_FAMILY_CLASSICAL = 4
} clsh_family_kind;

typedef enum clsh_codomain {
  CLSH_CODOMAIN_NONZERO = 0,
  CLSH_CODOMAIN_FULL = 1,
  CLSH_CODOMAIN_BALANCED = 2
} clsh_codomain;

typedef struct clsh_build_options {
  uint32_t radius;
  double c;                /* approximation factor, > 1 */
  int scheme;              /* clsh_scheme_kind */
  int codomain;            /* clsh_codomain, basic families */
  /* Explicit parameters. With scheme PARTITIONED and t, b, q all nonzero,
   * or PRIME and p nonzero, the family is fixed instead of selected. */
  uint32_t t, b, q;
  uint64_t p;
  uint32_t replication;    /* prime only; 0 picks the default */
  int parity_split;
  uint32_t digest_bits;    /* 1..128 */
  uint32_t threads;
  double max_masks;
  double max_bucket_entries;
  uint64_t seed;
} clsh_build_options;

CLSH_API void clsh_build_options_init(clsh_build_options* options);

typedef struct clsh_scheme_info {
  char label[16];
  int family_kind; /* clsh_family_kind */
  uint32_t r, t, b, q;
  uint64_t p;
  uint32_t replication;
  uint32_t cr;
  double family_size;
  double kappa;
  double cost;
  double overhead_estimate;
  int overhead_class; /* 0 constant, 1 polylog, 2 general */
  char description[192];
} clsh_scheme_info;

CLSH_API clsh_status clsh_select_scheme(uint64_t n, size_t dims, const clsh_build_options* options,
                                        clsh_scheme_info* out);

CLSH_API clsh_status clsh_index_build(const clsh_points* points, const clsh_build_options* options,
                                      clsh_index** out);
CLSH_API clsh_status clsh_index_save(const clsh_index* index, const char* path);
CLSH_API clsh_status clsh_index_load(const char* path, clsh_index** out);
CLSH_API void clsh_index_free(clsh_index* index);

typedef struct clsh_index_info {
  uint64_t n;
  size_t dims;
  uint32_t radius;
  double c;
  int parity_split;
  uint32_t digest_bits;
  uint64_t bucket_entries;
  uint64_t masks; /* over all families */
  clsh_scheme_info scheme;
} clsh_index_info;

CLSH_API clsh_status clsh_index_info_get(const clsh_index* index, clsh_index_info* out);

typedef struct clsh_query_result {
  int found;
  uint32_t id;
  uint32_t distance;
  uint64_t masks_evaluated;
  uint64_t candidates_inspected;
  uint64_t distance_computations;
} clsh_query_result;

/* First point with distance < ceil(c r); always found when one lies within r. */
CLSH_API clsh_status clsh_index_query_near(const clsh_index* index, const char* query_hex, uint32_t r, double c,
                                           clsh_query_result* out);
/* approx = 0 for exact search; c is used only when approx != 0. */
CLSH_API clsh_status clsh_index_nearest(const clsh_index* index, const char* query_hex, int approx, double c,
                                        clsh_query_result* out);
/* All points within r, sorted by id. `*count` receives the total; at most
 * `capacity` ids and distances are written. `counters` may be NULL. */
CLSH_API clsh_status clsh_index_query_all(const clsh_index* index, const char* query_hex, uint32_t r,
                                          uint32_t* ids, uint32_t* distances, size_t capacity, size_t* count,
                                          clsh_query_result* counters);

/* ---- Mask families (CLSHA files) ---- */

typedef enum clsh_mapping {
  CLSH_MAPPING_RANDOM = 0,
  /* Basic families only: dimension i maps to the binary form of i + 1. */
  CLSH_MAPPING_BINARY = 1
} clsh_mapping;

typedef struct clsh_family_options {
  int kind; /* clsh_family_kind */
  size_t dims;
  uint32_t r, t, b, q;
  uint64_t p;
  uint32_t k;
  uint64_t L;
  int codomain;
  int mapping; /* clsh_mapping */
  uint64_t seed;
  uint64_t max_masks;
} clsh_family_options;

CLSH_API void clsh_family_options_init(clsh_family_options* options);
CLSH_API clsh_status clsh_family_build(const clsh_family_options* options, clsh_family** out);
CLSH_API clsh_status clsh_family_load(const char* path, clsh_family** out);
CLSH_API clsh_status clsh_family_save(const clsh_family* family, const char* path);
CLSH_API void clsh_family_free(clsh_family* family);
CLSH_API uint64_t clsh_family_size(const clsh_family* family);
CLSH_API size_t clsh_family_dims(const clsh_family* family);
/* Mask h as a '0'/'1' string; `capacity` must hold dims + 1 chars. */
CLSH_API clsh_status clsh_family_mask_bits(const clsh_family* family, uint64_t h, char* buf, size_t capacity);
CLSH_API clsh_status clsh_family_weight(const clsh_family* family, uint64_t* ones, uint64_t* dims);

typedef struct clsh_verify_result {
  int covering;
  uint64_t patterns_checked;
  uint32_t witness_weight;
} clsh_verify_result;

/* Exhaustive r-covering check. On failure the witness pattern is written
 * as a '0'/'1' string when `witness` is non-NULL (dims + 1 chars). */
CLSH_API clsh_status clsh_family_verify(const clsh_family* family, uint32_t r, uint64_t max_patterns,
                                        clsh_verify_result* out, char* witness, size_t capacity);

/* ---- Experiments ---- */

typedef enum clsh_format { CLSH_FORMAT_CSV = 0, CLSH_FORMAT_JSONL = 1 } clsh_format;

/* Runs a harness experiment described by a JSON object and writes its
 * records to `out_path` (NULL or "-" for stdout). Kinds: "collisions",
 * "false-negatives", "tradeoff", "covering", "parity". The accepted keys are
 * listed in the README. */
CLSH_API clsh_status clsh_experiment_run(const char* kind, const char* json_params, const char* out_path,
                                         int format);

typedef struct clsh_bench_result {
  uint64_t n;
  size_t dims;
  uint32_t r;
  double c;
  uint64_t queries;
  uint64_t found;
  double build_seconds;
  double query_seconds;
  double queries_per_second;
  /* Percentiles 0, 50, 90, 99 and 100 of the per-query counters. */
  uint64_t masks[5];
  uint64_t candidates[5];
  uint64_t distances[5];
  char scheme[192];
} clsh_bench_result;

CLSH_API clsh_status clsh_bench(uint64_t n, size_t dims, const clsh_build_options* options, uint64_t queries,
                                clsh_bench_result* out);

#ifdef __cplusplus
}
#endif

#endif /* CLSH_CLSH_H_ */
