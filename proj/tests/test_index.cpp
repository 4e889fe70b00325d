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

#include <doctest.h>

#include <sstream>

#include "clsh/error.hpp"
#include "clsh/harness.hpp"
#include "clsh/index.hpp"

using namespace clsh;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInvalidArgument;
}

std::string bytes_of(const Index& index) {
  std::stringstream out;
  index.write(out);
  return out.str();
}

struct Case {
  const char* name;
  SchemeChoice scheme;
};

std::vector<Case> schemes(std::uint64_t n, std::size_t d, std::uint32_t r) {
  return {
      {"basic", fixed_scheme(n, d, 2.0, FamilyParams::basic(r))},
      {"basic-full", fixed_scheme(n, d, 2.0, FamilyParams::basic(r, Codomain::kFull))},
      {"partitioned", fixed_scheme(n, d, 2.0, FamilyParams::partitioned(r, 2, 3, 2))},
      {"prime", fixed_scheme(n, d, 2.0, FamilyParams::prime(r, 3))},
      {"prime-replicated", fixed_scheme(n, d, 2.0, FamilyParams::prime(2 * r, 2), 2)},
      {"auto", select_scheme(n, d, r, 2.0)},
  };
}

}  // namespace

TEST_CASE("empty index answers nothing") {
  const PointSet none(32);
  const Index index = Index::build(none, fixed_scheme(1, 32, 2.0, FamilyParams::basic(3)), 1);
  Rng rng(1);
  const BitVector y = random_vector(32, rng);
  CHECK(index.size() == 0);
  CHECK(index.bucket_entries() == 0);
  CHECK(index.query_all_within(y, 3).neighbors.empty());
  CHECK_FALSE(index.query_near(y, 3, 2.0).result);
  CHECK_FALSE(index.nearest_neighbor(y).result);
}

TEST_CASE("single point is stored once per mask") {
  PointSet points(16);
  Rng rng(2);
  points.push_back(random_vector(16, rng));
  const Index index = Index::build(points, fixed_scheme(1, 16, 2.0, FamilyParams::basic(1)), 3);
  CHECK(index.family().size() == 3);
  CHECK(index.bucket_entries() == 3);
  CHECK(index.occurrences(0) == 3);
}

TEST_CASE("bucket keys are the digests of the masked points") {
  const PointSet points = gen_random(50, 70, 4);
  const Index index = Index::build(points, fixed_scheme(50, 70, 2.0, FamilyParams::partitioned(4, 1, 2, 1)), 5);
  const Index::Table& t = index.tables().at(0);
  const MaskFamily& fam = index.family();
  for (std::size_t h = 0; h < fam.size(); ++h) {
    std::vector<Index::Entry> expected;
    for (std::uint32_t id = 0; id < points.size(); ++id) {
      const Digest d = digest_masked(h, (points[id] & fam[h]).words());
      expected.push_back({d[0], d[1], id});
    }
    std::sort(expected.begin(), expected.end());
    const std::vector<Index::Entry> got(t.entries.begin() + h * 50, t.entries.begin() + (h + 1) * 50);
    CHECK(got == expected);
  }
  for (std::uint32_t id = 0; id < 50; ++id) CHECK(index.occurrences(id) == fam.size());
}

TEST_CASE("range queries equal the linear scan") {
  const std::size_t d = 96;
  const std::uint32_t r = 4;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const PointSet base = gen_random(400, d, 10 + seed);
    Rng rng(20 + seed);
    for (const auto& c : schemes(400, d, r)) {
      for (bool split : {false, true}) {
        IndexOptions opts;
        opts.parity_split = split;
        const BitVector y = random_vector(d, rng);
        const std::uint32_t dists[] = {0, 1, 2, 3, 4, 5, 6};
        const Planted planted = plant_near(base, y, dists, rng.next());
        const Index index = Index::build(planted.points, c.scheme, seed, opts);
        CAPTURE(c.name);
        CAPTURE(split);
        for (std::uint32_t R = 0; R <= r; ++R) {
          const auto got = index.query_all_within(y, R);
          CHECK(got.neighbors == brute_force_within(planted.points, y, R));
        }
        // Far query: nothing within r.
        const BitVector far = ~y;
        CHECK(index.query_all_within(far, r).neighbors == brute_force_within(planted.points, far, r));
      }
    }
  }
}

TEST_CASE("near queries answer whenever a point lies within r") {
  const std::size_t d = 128;
  const std::uint32_t r = 6;
  const PointSet base = gen_random(500, d, 31);
  Rng rng(32);
  for (const auto& c : schemes(500, d, r)) {
    const Index index = Index::build(base, c.scheme, 33);
    for (int q = 0; q < 40; ++q) {
      const BitVector y = flip_random(base[rng.uniform(500)], static_cast<std::uint32_t>(rng.uniform(r + 1)), rng);
      const QueryOutcome o = index.query_near(y, r, 2.0);
      CAPTURE(c.name);
      REQUIRE(o.result);
      CHECK(o.result->distance < 2 * r);
      CHECK(o.result->distance == hamming_distance(base[o.result->id], y));
    }
  }
}

TEST_CASE("near query with only far points") {
  Rng rng(40);
  const BitVector y = random_vector(64, rng);
  const PointSet far = gen_worst_case(y, 200, 8, 41);  // all at 16 = c r
  const Index index = Index::build(far, fixed_scheme(200, 64, 2.0, FamilyParams::basic(8)), 42);
  const QueryOutcome o = index.query_near(y, 8, 2.0);
  CHECK_FALSE(o.result);
  CHECK(o.masks_evaluated == index.family().size());
}

TEST_CASE("exact duplicate answers on the first mask") {
  const PointSet base = gen_random(100, 64, 50);
  const Index index = Index::build(base, fixed_scheme(100, 64, 2.0, FamilyParams::basic(5)), 51);
  const QueryOutcome o = index.query_near(base[17], 5, 2.0);
  REQUIRE(o.result);
  CHECK(o.result->distance == 0);
  CHECK(o.masks_evaluated == 1);
  const QueryOutcome nn = index.nearest_neighbor(base[17]);
  REQUIRE(nn.result);
  CHECK(nn.result->distance == 0);
  CHECK(nn.masks_evaluated == 1);
}

TEST_CASE("nearest neighbor matches the oracle") {
  const std::size_t d = 64;
  const std::uint32_t r = 10;
  const PointSet base = gen_random(2000, d, 60);
  const Index index = Index::build(base, fixed_scheme(2000, d, 2.0, FamilyParams::basic(r)), 61);
  Rng rng(62);
  int checked = 0;
  for (int q = 0; q < 150; ++q) {
    const BitVector y = flip_random(base[rng.uniform(2000)], static_cast<std::uint32_t>(rng.uniform(14)), rng);
    const auto truth = brute_force_nearest(base, y);
    const QueryOutcome o = index.nearest_neighbor(y);
    if (truth->distance <= r) {
      ++checked;
      REQUIRE(o.result);
      CHECK(o.result->distance == truth->distance);
      CHECK(o.masks_evaluated <= (std::uint64_t{2} << truth->distance) - 1);
    } else if (o.result) {
      // The stopping rule may fire at r + 1; the answer is still exact.
      CHECK(o.result->distance == truth->distance);
    }
  }
  CHECK(checked > 100);
  const QueryOutcome approx = index.nearest_neighbor(base[3], NearestMode::kApprox, 2.0);
  REQUIRE(approx.result);
  CHECK(approx.result->distance == 0);
  CHECK(code_of([&] { (void)index.nearest_neighbor(base[3], NearestMode::kApprox, 1.0); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("nearest neighbor needs an unsplit basic index") {
  const PointSet base = gen_random(30, 32, 70);
  const Index part = Index::build(base, fixed_scheme(30, 32, 2.0, FamilyParams::partitioned(3, 1, 2, 1)), 1);
  CHECK(code_of([&] { (void)part.nearest_neighbor(base[0]); }) == ErrorCode::kUnsupported);
  IndexOptions split;
  split.parity_split = true;
  const Index halves = Index::build(base, fixed_scheme(30, 32, 2.0, FamilyParams::basic(3)), 1, split);
  CHECK(code_of([&] { (void)halves.nearest_neighbor(base[0]); }) == ErrorCode::kUnsupported);
}

TEST_CASE("argument errors") {
  const PointSet base = gen_random(30, 32, 80);
  const Index index = Index::build(base, fixed_scheme(30, 32, 2.0, FamilyParams::basic(3)), 1);
  CHECK(code_of([&] { (void)index.query_all_within(base[0], 4); }) == ErrorCode::kRadiusExceeded);
  CHECK(code_of([&] { (void)index.query_near(BitVector(31), 3, 2.0); }) == ErrorCode::kDimensionMismatch);
  CHECK(code_of([&] { (void)Index::build(base, fixed_scheme(30, 33, 2.0, FamilyParams::basic(3)), 1); }) ==
        ErrorCode::kDimensionMismatch);
  IndexOptions tight;
  tight.max_bucket_entries = 100;
  CHECK(code_of([&] { (void)Index::build(base, fixed_scheme(30, 32, 2.0, FamilyParams::basic(3)), 1, tight); }) ==
        ErrorCode::kInfeasible);
}

TEST_CASE("digest collisions never change answers") {
  const std::size_t d = 80;
  const PointSet base = gen_random(600, d, 90);
  Rng rng(91);
  const auto scheme = fixed_scheme(600, d, 2.0, FamilyParams::basic(5));
  const Index exact = Index::build(base, scheme, 92);
  IndexOptions coarse;
  coarse.digest_bits = 3;
  const Index merged = Index::build(base, scheme, 92, coarse);
  std::uint64_t extra = 0;
  for (int q = 0; q < 60; ++q) {
    const BitVector y = flip_random(base[rng.uniform(600)], static_cast<std::uint32_t>(rng.uniform(8)), rng);
    const auto a = exact.query_all_within(y, 5);
    const auto b = merged.query_all_within(y, 5);
    CHECK(a.neighbors == b.neighbors);
    CHECK(b.candidates_inspected >= a.candidates_inspected);
    extra += b.candidates_inspected - a.candidates_inspected;
    const auto na = exact.nearest_neighbor(y);
    const auto nb = merged.nearest_neighbor(y);
    CHECK(na.result.has_value() == nb.result.has_value());
    if (na.result && nb.result) CHECK(na.result->distance == nb.result->distance);
  }
  CHECK(extra > 0);
}

TEST_CASE("parity split stores each point once per mask of its part") {
  const PointSet base = gen_random(200, 40, 100);
  IndexOptions split;
  split.parity_split = true;
  for (const auto& p : {FamilyParams::basic(4), FamilyParams::partitioned(4, 1, 2, 1)}) {
    const Index index = Index::build(base, fixed_scheme(200, 40, 2.0, p), 101, split);
    std::uint64_t per_point = 0;
    for (const auto& f : index.families()) per_point += f.size();
    for (std::uint32_t id = 0; id < 200; id += 17) CHECK(index.occurrences(id) == per_point);
    CHECK(index.families().size() == (p.kind == FamilyKind::kPartitioned ? 2u : 1u));
  }
}

TEST_CASE("parity split halves collisions at distance r + 1") {
  const auto s = measure_parity_split(48, 4, 20, 300, 7);
  CHECK(s.split_exact <= 0.5 * s.unsplit_exact);
  const double se = std::sqrt(s.split_variance / s.trials + 0.25 * s.unsplit_variance / s.trials);
  CHECK(s.split_mean <= 0.5 * s.unsplit_mean + 4 * se);
  CHECK(std::abs(s.unsplit_mean - s.unsplit_exact) <= 4 * std::sqrt(s.unsplit_variance / s.trials));
  CHECK(std::abs(s.split_mean - s.split_exact) <= 4 * std::sqrt(s.split_variance / s.trials));
}

TEST_CASE("save, load and query give identical answers") {
  const PointSet base = gen_random(300, 72, 110);
  Rng rng(111);
  for (bool split : {false, true}) {
    IndexOptions opts;
    opts.parity_split = split;
    const Index index = Index::build(base, select_scheme(300, 72, 4, 2.0), 112, opts);
    std::stringstream buf;
    index.write(buf);
    const Index back = Index::read(buf);
    CHECK(back.tables() == index.tables());
    CHECK(back.families() == index.families());
    CHECK(back.points() == index.points());
    CHECK(bytes_of(back) == bytes_of(index));
    for (int q = 0; q < 100; ++q) {
      const BitVector y = flip_random(base[rng.uniform(300)], static_cast<std::uint32_t>(rng.uniform(7)), rng);
      CHECK(back.query_all_within(y, 4).neighbors == index.query_all_within(y, 4).neighbors);
      const auto a = back.query_near(y, 4, 2.0);
      const auto b = index.query_near(y, 4, 2.0);
      CHECK(a.result == b.result);
      CHECK(a.cost() == b.cost());
    }
  }
}

TEST_CASE("damaged index files are rejected") {
  const PointSet base = gen_random(40, 24, 120);
  const Index index = Index::build(base, fixed_scheme(40, 24, 2.0, FamilyParams::basic(3)), 121);
  const std::string good = bytes_of(index);
  for (std::size_t cut : {std::size_t{3}, std::size_t{40}, good.size() / 2, good.size() - 1}) {
    std::stringstream in(good.substr(0, cut));
    CHECK(code_of([&] { (void)Index::read(in); }) == ErrorCode::kTruncated);
  }
  // Flip one byte inside the bucket table.
  std::string bad = good;
  bad[good.size() - kPointHeaderBytes - 40 * 3 - 30] ^= 0x10;
  std::stringstream in(bad);
  CHECK(code_of([&] { (void)Index::read(in); }) == ErrorCode::kCorrupt);
  std::string version = good;
  version[6] = 9;
  std::stringstream vin(version);
  CHECK(code_of([&] { (void)Index::read(vin); }) == ErrorCode::kUnsupportedVersion);
  std::stringstream magic("CLSH1" + good.substr(5));
  CHECK(code_of([&] { (void)Index::read(magic); }) == ErrorCode::kBadMagic);
}

TEST_CASE("a loaded family still covers") {
  const PointSet base = gen_random(20, 14, 130);
  const Index index = Index::build(base, fixed_scheme(20, 14, 2.0, FamilyParams::partitioned(5, 1, 2, 1)), 131);
  std::stringstream buf;
  index.write(buf);
  const Index back = Index::read(buf);
  CHECK(is_r_covering(back.family(), 5).covering);
}

TEST_CASE("family dump round trip") {
  const MaskFamily fam = build_family(FamilyParams::prime(2, 3), 30, 7);
  std::stringstream buf;
  write_family(buf, fam);
  CHECK(read_family(buf) == fam);
  std::string bytes;
  {
    std::stringstream again;
    write_family(again, fam);
    bytes = again.str();
  }
  bytes[7 + 1 + 4 * 0] ^= 1;  // r field no longer matches the mask count
  std::stringstream in(bytes);
  CHECK(code_of([&] { (void)read_family(in); }) == ErrorCode::kCorrupt);
}

TEST_CASE("builds are deterministic and thread independent") {
  const PointSet base = gen_random(500, 100, 140);
  const auto scheme = select_scheme(500, 100, 5, 2.0);
  IndexOptions one;
  IndexOptions three;
  three.threads = 3;
  const std::string a = bytes_of(Index::build(base, scheme, 141, one));
  const std::string b = bytes_of(Index::build(base, scheme, 141, one));
  const std::string c = bytes_of(Index::build(base, scheme, 141, three));
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a != bytes_of(Index::build(base, scheme, 142, one)));
}
