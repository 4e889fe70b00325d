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

#include <fstream>
#include <string>

#include "clsh/error.hpp"
#include "clsh/index.hpp"
#include "digest.hpp"
#include "wire.hpp"

namespace clsh {
namespace {

constexpr std::string_view kFamilyMagic = "CLSHA";
constexpr std::string_view kIndexMagic = "CLSHI";
constexpr std::uint16_t kFamilyVersion = 1;
constexpr std::uint16_t kIndexVersion = 1;
constexpr std::size_t kChunk = 1 << 16;

void corrupt_if(bool bad, const std::string& what) {
  if (bad) throw Error(ErrorCode::kCorrupt, what);
}

void write_params(std::ostream& out, const FamilyParams& p) {
  wire::put<std::uint8_t>(out, static_cast<std::uint8_t>(p.kind));
  wire::put<std::uint32_t>(out, p.r);
  wire::put<std::uint32_t>(out, p.t);
  wire::put<std::uint32_t>(out, p.b);
  wire::put<std::uint32_t>(out, p.q);
  wire::put<std::uint64_t>(out, p.p);
  wire::put<std::uint32_t>(out, p.k);
  wire::put<std::uint64_t>(out, p.L);
  wire::put<std::uint8_t>(out, static_cast<std::uint8_t>(p.codomain));
}

FamilyParams read_params(std::istream& in) {
  FamilyParams p;
  const auto kind = wire::get<std::uint8_t>(in, "family kind");
  corrupt_if(kind < 1 || kind > 4, "unknown family kind " + std::to_string(kind));
  p.kind = static_cast<FamilyKind>(kind);
  p.r = wire::get<std::uint32_t>(in, "r");
  p.t = wire::get<std::uint32_t>(in, "t");
  p.b = wire::get<std::uint32_t>(in, "b");
  p.q = wire::get<std::uint32_t>(in, "q");
  p.p = wire::get<std::uint64_t>(in, "p");
  p.k = wire::get<std::uint32_t>(in, "k");
  p.L = wire::get<std::uint64_t>(in, "L");
  const auto codomain = wire::get<std::uint8_t>(in, "codomain");
  corrupt_if(codomain > 2, "unknown codomain " + std::to_string(codomain));
  p.codomain = static_cast<Codomain>(codomain);
  try {
    p.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kCorrupt, std::string("invalid family parameters: ") + e.what());
  }
  return p;
}

void write_string(std::ostream& out, const std::string& s) {
  wire::put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  wire::put_bytes(out, std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

std::string read_string(std::istream& in) {
  const auto len = wire::get<std::uint32_t>(in, "string length");
  corrupt_if(len > 4096, "string field too long");
  std::string s(len, '\0');
  wire::get_bytes(in, std::span(reinterpret_cast<std::uint8_t*>(s.data()), s.size()), "string");
  return s;
}

void write_scheme(std::ostream& out, const SchemeChoice& s) {
  wire::put<std::uint64_t>(out, s.n);
  wire::put<std::uint64_t>(out, s.dims);
  wire::put<std::uint32_t>(out, s.radius);
  wire::put_f64(out, s.c);
  wire::put<std::uint32_t>(out, s.cr);
  wire::put<std::uint8_t>(out, static_cast<std::uint8_t>(s.overhead));
  write_string(out, s.chosen.label);
  write_params(out, s.chosen.family);
  wire::put<std::uint32_t>(out, s.chosen.replication);
  wire::put_f64(out, s.chosen.family_size);
  wire::put_f64(out, s.chosen.kappa);
  wire::put_f64(out, s.chosen.cost);
}

SchemeChoice read_scheme(std::istream& in) {
  SchemeChoice s;
  s.n = wire::get<std::uint64_t>(in, "scheme n");
  s.dims = wire::get<std::uint64_t>(in, "scheme d");
  s.radius = wire::get<std::uint32_t>(in, "scheme radius");
  s.c = wire::get_f64(in, "scheme c");
  s.cr = wire::get<std::uint32_t>(in, "scheme cr");
  const auto overhead = wire::get<std::uint8_t>(in, "overhead class");
  corrupt_if(overhead > 2, "unknown overhead class");
  s.overhead = static_cast<OverheadClass>(overhead);
  s.chosen.label = read_string(in);
  s.chosen.family = read_params(in);
  s.chosen.replication = wire::get<std::uint32_t>(in, "replication");
  corrupt_if(s.chosen.replication == 0, "replication 0");
  s.chosen.family_size = wire::get_f64(in, "family size");
  s.chosen.kappa = wire::get_f64(in, "kappa");
  s.chosen.cost = wire::get_f64(in, "cost");
  s.chosen.feasible = true;
  s.candidates.push_back(s.chosen);
  return s;
}

void put_u32_le(std::uint8_t* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}
void put_u64_le(std::uint8_t* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}
std::uint32_t get_u32_le(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}
std::uint64_t get_u64_le(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

constexpr std::size_t kEntryBytes = 20;

}  // namespace

void write_family(std::ostream& out, const MaskFamily& family) {
  wire::put_magic(out, kFamilyMagic);
  wire::put<std::uint16_t>(out, kFamilyVersion);
  write_params(out, family.params());
  wire::put<std::uint64_t>(out, family.dims());
  wire::put<std::uint64_t>(out, family.seed());
  wire::put<std::uint64_t>(out, family.size());
  std::vector<std::uint8_t> row((family.dims() + 7) / 8);
  for (const auto& a : family.masks()) {
    a.to_bytes(row);
    wire::put_bytes(out, row);
  }
}

MaskFamily read_family(std::istream& in) {
  wire::expect_magic(in, kFamilyMagic);
  const auto version = wire::get<std::uint16_t>(in, "version");
  if (version != kFamilyVersion) {
    throw Error(ErrorCode::kUnsupportedVersion, "CLSHA version " + std::to_string(version));
  }
  const FamilyParams params = read_params(in);
  const auto d = wire::get<std::uint64_t>(in, "dimension");
  if (d == 0) throw Error(ErrorCode::kZeroDims, "CLSHA header declares d=0");
  if (d > (std::uint64_t{1} << 40)) throw Error(ErrorCode::kSizeOverflow, "d=" + std::to_string(d));
  const auto seed = wire::get<std::uint64_t>(in, "seed");
  const auto count = wire::get<std::uint64_t>(in, "mask count");
  const std::uint64_t expected = params.kind == FamilyKind::kClassical ? params.L : params.family_size().value_or(0);
  corrupt_if(count != expected, "mask count " + std::to_string(count) + " does not match the parameters (" +
                                    std::to_string(expected) + ")");
  const std::uint64_t row_bytes = (d + 7) / 8;
  if (count != 0 && row_bytes > UINT64_MAX / count) throw Error(ErrorCode::kSizeOverflow, "mask payload overflows");
  std::vector<BitVector> masks;
  masks.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, kChunk)));
  std::vector<std::uint8_t> row(static_cast<std::size_t>(row_bytes));
  for (std::uint64_t h = 0; h < count; ++h) {
    wire::get_bytes(in, row, "mask rows");
    masks.push_back(BitVector::from_bytes(row, static_cast<std::size_t>(d)));
  }
  return MaskFamily(params, static_cast<std::size_t>(d), seed, std::move(masks));
}

void save_family(const std::filesystem::path& path, const MaskFamily& family) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  write_family(out, family);
}

MaskFamily load_family(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return read_family(in);
}

void Index::write(std::ostream& out) const {
  wire::put_magic(out, kIndexMagic);
  wire::put<std::uint16_t>(out, kIndexVersion);
  write_scheme(out, scheme_);
  wire::put<std::uint8_t>(out, parity_split_ ? 1 : 0);
  wire::put<std::uint32_t>(out, digest_bits_);
  wire::put<std::uint32_t>(out, static_cast<std::uint32_t>(families_.size()));
  for (const auto& f : families_) write_family(out, f);

  detail::Hasher check(0x434c534849ull);
  wire::put<std::uint32_t>(out, static_cast<std::uint32_t>(tables_.size()));
  std::vector<std::uint8_t> buf;
  for (const auto& t : tables_) {
    wire::put<std::uint32_t>(out, t.part);
    wire::put<std::uint32_t>(out, t.family);
    wire::put<std::uint64_t>(out, t.ids.size());
    check.add(t.part);
    check.add(t.family);
    check.add(t.ids.size());
    buf.resize(t.ids.size() * 4);
    for (std::size_t i = 0; i < t.ids.size(); ++i) {
      put_u32_le(buf.data() + 4 * i, t.ids[i]);
      check.add(t.ids[i]);
    }
    wire::put_bytes(out, buf);
    wire::put<std::uint64_t>(out, t.entries.size());
    for (std::size_t start = 0; start < t.entries.size(); start += kChunk) {
      const std::size_t end = std::min(t.entries.size(), start + kChunk);
      buf.resize((end - start) * kEntryBytes);
      for (std::size_t i = start; i < end; ++i) {
        const Entry& e = t.entries[i];
        std::uint8_t* p = buf.data() + (i - start) * kEntryBytes;
        put_u64_le(p, e.lo);
        put_u64_le(p + 8, e.hi);
        put_u32_le(p + 16, e.id);
        check.add(e.lo);
        check.add(e.hi);
        check.add(e.id);
      }
      wire::put_bytes(out, buf);
    }
  }
  const auto sum = check.finish();
  wire::put<std::uint64_t>(out, sum[0]);
  wire::put<std::uint64_t>(out, sum[1]);
  write_points(out, points_);
}

Index Index::read(std::istream& in) {
  wire::expect_magic(in, kIndexMagic);
  const auto version = wire::get<std::uint16_t>(in, "version");
  if (version != kIndexVersion) {
    throw Error(ErrorCode::kUnsupportedVersion, "CLSHI version " + std::to_string(version));
  }
  Index index;
  index.scheme_ = read_scheme(in);
  const auto split = wire::get<std::uint8_t>(in, "parity flag");
  corrupt_if(split > 1, "bad parity flag");
  index.parity_split_ = split == 1;
  index.digest_bits_ = wire::get<std::uint32_t>(in, "digest bits");
  corrupt_if(index.digest_bits_ < 1 || index.digest_bits_ > 128, "bad digest width");
  const auto nfam = wire::get<std::uint32_t>(in, "family count");
  corrupt_if(nfam < 1 || nfam > 2, "bad family count");
  const std::size_t wide = index.scheme_.dims * index.scheme_.chosen.replication;
  for (std::uint32_t f = 0; f < nfam; ++f) {
    index.families_.push_back(read_family(in));
    corrupt_if(index.families_.back().dims() != wide, "family dims do not match the scheme");
  }

  detail::Hasher check(0x434c534849ull);
  const auto ntables = wire::get<std::uint32_t>(in, "table count");
  corrupt_if(ntables < 1 || ntables > 4, "bad table count");
  std::vector<std::uint8_t> buf;
  for (std::uint32_t ti = 0; ti < ntables; ++ti) {
    Table t;
    t.part = wire::get<std::uint32_t>(in, "table part");
    t.family = wire::get<std::uint32_t>(in, "table family");
    corrupt_if(t.part > 1 || t.family >= nfam, "bad table header");
    const auto nids = wire::get<std::uint64_t>(in, "id count");
    corrupt_if(nids > UINT32_MAX, "id count too large");
    check.add(t.part);
    check.add(t.family);
    check.add(nids);
    for (std::uint64_t start = 0; start < nids; start += kChunk) {
      const std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(nids - start, kChunk));
      buf.resize(len * 4);
      wire::get_bytes(in, buf, "table ids");
      for (std::size_t i = 0; i < len; ++i) {
        t.ids.push_back(get_u32_le(buf.data() + 4 * i));
        check.add(t.ids.back());
      }
    }
    const auto nentries = wire::get<std::uint64_t>(in, "entry count");
    corrupt_if(nentries != index.families_[t.family].size() * nids, "entry count does not match |A| * ids");
    for (std::uint64_t start = 0; start < nentries; start += kChunk) {
      const std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(nentries - start, kChunk));
      buf.resize(len * kEntryBytes);
      wire::get_bytes(in, buf, "bucket entries");
      for (std::size_t i = 0; i < len; ++i) {
        const std::uint8_t* p = buf.data() + i * kEntryBytes;
        Entry e{get_u64_le(p), get_u64_le(p + 8), get_u32_le(p + 16)};
        check.add(e.lo);
        check.add(e.hi);
        check.add(e.id);
        t.entries.push_back(e);
      }
    }
    index.tables_.push_back(std::move(t));
  }
  const auto sum = check.finish();
  const auto lo = wire::get<std::uint64_t>(in, "checksum");
  const auto hi = wire::get<std::uint64_t>(in, "checksum");
  corrupt_if(lo != sum[0] || hi != sum[1], "bucket table checksum mismatch");
  index.points_ = read_points(in);
  corrupt_if(index.points_.dims() != index.scheme_.dims, "point dims do not match the scheme");

  for (const auto& t : index.tables_) {
    const std::size_t n = t.ids.size();
    for (std::size_t i = 0; i < n; ++i) {
      corrupt_if(t.ids[i] >= index.points_.size(), "table id out of range");
      corrupt_if(i > 0 && t.ids[i] <= t.ids[i - 1], "table ids not strictly increasing");
    }
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
      corrupt_if(t.entries[i].id >= index.points_.size(), "bucket id out of range");
      corrupt_if(i % n != 0 && t.entries[i] < t.entries[i - 1], "bucket slice not sorted");
    }
  }
  return index;
}

void Index::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  write(out);
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write to " + path.string() + " failed");
}

Index Index::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return read(in);
}

}  // namespace clsh
