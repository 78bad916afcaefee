#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <vector>

#include "curveann/error.hpp"
#include "curveann/index.hpp"

namespace curveann {

inline constexpr char kIndexMagic[8] = {'C', 'V', 'A', 'N', 'N', 'I', 'X', '\0'};
inline constexpr std::uint32_t kIndexFormatVersion = 1;

namespace detail {

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) { put(v, 4); }
  void i64(std::int64_t v) { put(static_cast<std::uint64_t>(v), 8); }
  void bytes(const char* p, std::size_t n) { out_.append(p, n); }
  std::string take() { return std::move(out_); }

 private:
  void put(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::int64_t i64() { return static_cast<std::int64_t>(get(8)); }
  std::string_view bytes(std::size_t n) {
    need(n);
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  [[nodiscard]] bool done() const { return pos_ == in_.size(); }
  /// Guards element counts against the bytes that remain.
  void expect_at_least(std::uint64_t count, std::size_t min_bytes_each) {
    if (count > (in_.size() - pos_) / std::max<std::size_t>(min_bytes_each, 1)) {
      throw DecodeError("element count exceeds payload size");
    }
  }

 private:
  void need(std::size_t n) {
    if (in_.size() - pos_ < n) throw DecodeError("truncated index payload");
  }
  std::uint64_t get(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(in_[pos_ + i])) << (8 * i);
    }
    pos_ += static_cast<std::size_t>(n);
    return v;
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

inline Coord read_coord(Reader& r) {
  try {
    return Coord(r.i64());
  } catch (const OverflowError&) {
    throw DecodeError("coordinate out of range");
  }
}

}  // namespace detail

/// Little-endian binary image of an index. `scale` records the decimal
/// fixed-point exponent of the coordinates and `labels` optional names of the
/// inputs (empty, or one per input); both come back from deserialize.
/// Keys are written in ascending order, so equal indexes give equal bytes.
inline std::string serialize(const AnnIndex& ix, std::uint32_t scale = 0,
                             const std::vector<std::string>& labels = {}) {
  if (!labels.empty() && labels.size() != ix.inputs().size()) {
    throw InvalidInput("need one label per input");
  }
  detail::Writer w;
  w.bytes(kIndexMagic, sizeof kIndexMagic);
  w.u32(kIndexFormatVersion);
  w.u32(scale);
  const auto& p = ix.params();
  w.i64(p.delta.raw());
  w.i64(p.eps.num);
  w.i64(p.eps.den);
  w.u32(static_cast<std::uint32_t>(p.k));
  w.u8(static_cast<std::uint8_t>(p.variant));
  w.u32(static_cast<std::uint32_t>(ix.inputs().size()));
  for (const auto& c : ix.inputs()) {
    w.u32(static_cast<std::uint32_t>(c.size()));
    for (Coord x : c.xs()) w.i64(x.raw());
  }
  w.u32(static_cast<std::uint32_t>(labels.size()));
  for (const auto& l : labels) {
    w.u32(static_cast<std::uint32_t>(l.size()));
    w.bytes(l.data(), l.size());
  }
  w.u32(static_cast<std::uint32_t>(ix.skipped().size()));
  for (auto id : ix.skipped()) w.u32(id);
  const auto entries = ix.entries();
  w.u32(static_cast<std::uint32_t>(entries.size()));
  for (const auto& [key, id] : entries) {
    w.u32(static_cast<std::uint32_t>(key.size()));
    for (auto c : key.cells) w.i64(c);
    w.u32(id);
  }
  return w.take();
}

struct LoadedIndex {
  AnnIndex index;
  std::uint32_t scale = 0;
  std::vector<std::string> labels;
};

inline LoadedIndex deserialize(std::string_view bytes) {
  detail::Reader r(bytes);
  if (r.bytes(sizeof kIndexMagic) != std::string_view(kIndexMagic, sizeof kIndexMagic)) {
    throw DecodeError("not an index file");
  }
  const auto version = r.u32();
  if (version != kIndexFormatVersion) {
    throw DecodeError("unsupported index format version " + std::to_string(version));
  }
  LoadedIndex out;
  out.scale = r.u32();
  IndexParams p;
  p.delta = detail::read_coord(r);
  const auto num = r.i64();
  const auto den = r.i64();
  p.k = r.u32();
  const auto variant = r.u8();
  if (variant > 4) throw DecodeError("unknown variant tag");
  p.variant = static_cast<Variant>(variant);
  try {
    p.eps = Ratio(num, den);
    p.validate();
  } catch (const Error& e) {
    throw DecodeError(std::string("invalid parameters: ") + e.what());
  }
  const auto n = r.u32();
  r.expect_at_least(n, 4);
  std::vector<Curve> inputs;
  inputs.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto m = r.u32();
    r.expect_at_least(m, 8);
    std::vector<Coord> xs;
    xs.reserve(m);
    for (std::uint32_t j = 0; j < m; ++j) xs.push_back(detail::read_coord(r));
    inputs.push_back(Curve::line(std::move(xs)));
  }
  const auto nl = r.u32();
  if (nl != 0 && nl != n) throw DecodeError("label count does not match input count");
  r.expect_at_least(nl, 4);
  for (std::uint32_t i = 0; i < nl; ++i) {
    const auto len = r.u32();
    out.labels.emplace_back(r.bytes(len));
  }
  const auto ns = r.u32();
  r.expect_at_least(ns, 4);
  std::vector<std::uint32_t> skipped(ns);
  for (auto& s : skipped) {
    s = r.u32();
    if (s >= n) throw DecodeError("skipped id out of range");
  }
  const auto nk = r.u32();
  r.expect_at_least(nk, 8);
  std::vector<std::pair<GridKey, std::uint32_t>> entries;
  entries.reserve(nk);
  for (std::uint32_t i = 0; i < nk; ++i) {
    const auto len = r.u32();
    r.expect_at_least(len, 8);
    GridKey key;
    key.cells.resize(len);
    for (auto& c : key.cells) c = r.i64();
    entries.emplace_back(std::move(key), r.u32());
  }
  if (!r.done()) throw DecodeError("trailing bytes after key table");
  try {
    out.index = AnnIndex::from_parts(p, std::move(inputs), std::move(skipped), entries);
  } catch (const DecodeError&) {
    throw;
  } catch (const Error& e) {
    throw DecodeError(std::string("inconsistent index: ") + e.what());
  }
  return out;
}

}  // namespace curveann
