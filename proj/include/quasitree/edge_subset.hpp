#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "quasitree/errors.hpp"

namespace quasitree {

// Subset of the edge set [n], stored as a bitmask with bit i-1 <-> edge i.
// Ground sizes up to 63 are supported.
class EdgeSubset {
 public:
  static constexpr int max_ground = 63;

  constexpr EdgeSubset() = default;
  constexpr explicit EdgeSubset(std::uint64_t mask) : mask_(mask) {}

  static constexpr EdgeSubset full(int n) {
    return EdgeSubset(n <= 0 ? 0 : (~std::uint64_t{0} >> (64 - n)));
  }

  static EdgeSubset of(std::initializer_list<int> indices) {
    EdgeSubset s;
    for (int i : indices) s = s.with(i);
    return s;
  }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int count() const { return std::popcount(mask_); }

  constexpr bool contains(int i) const {
    return i >= 1 && i <= 64 && ((mask_ >> (i - 1)) & 1u) != 0;
  }

  EdgeSubset with(int i) const {
    check_index(i);
    return EdgeSubset(mask_ | (std::uint64_t{1} << (i - 1)));
  }

  EdgeSubset without(int i) const {
    check_index(i);
    return EdgeSubset(mask_ & ~(std::uint64_t{1} << (i - 1)));
  }

  constexpr bool subset_of(EdgeSubset other) const { return (mask_ & ~other.mask_) == 0; }

  friend constexpr EdgeSubset operator^(EdgeSubset a, EdgeSubset b) {
    return EdgeSubset(a.mask_ ^ b.mask_);
  }
  friend constexpr EdgeSubset operator|(EdgeSubset a, EdgeSubset b) {
    return EdgeSubset(a.mask_ | b.mask_);
  }
  friend constexpr EdgeSubset operator&(EdgeSubset a, EdgeSubset b) {
    return EdgeSubset(a.mask_ & b.mask_);
  }
  friend constexpr bool operator==(EdgeSubset a, EdgeSubset b) { return a.mask_ == b.mask_; }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
    return out;
  }

  // Order used for all reported set families: cardinality first, then
  // lexicographic on the increasing index sequences.
  friend bool canonical_less(EdgeSubset a, EdgeSubset b) {
    int ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    std::uint64_t x = a.mask_, y = b.mask_;
    while (x != 0 && y != 0) {
      int i = std::countr_zero(x), j = std::countr_zero(y);
      if (i != j) return i < j;
      x &= x - 1;
      y &= y - 1;
    }
    return false;
  }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (int i : elements()) {
      if (!first) out += ' ';
      out += std::to_string(i);
      first = false;
    }
    out += '}';
    return out;
  }

 private:
  static void check_index(int i) {
    if (i < 1 || i > max_ground)
      throw Error(errc::index_out_of_range,
                  "edge index " + std::to_string(i) + " outside supported range [1, 63]");
  }

  std::uint64_t mask_ = 0;
};

// Parses "{1, 3 5}" / "1 3 5" / "{}" / "" into a subset. Indices must be >= 1.
inline EdgeSubset parse_edge_subset(const std::string& text) {
  EdgeSubset out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() &&
           (text[i] == ' ' || text[i] == ',' || text[i] == '\t' || text[i] == '\n'))
      ++i;
  };
  skip();
  bool braced = i < text.size() && text[i] == '{';
  if (braced) ++i;
  for (;;) {
    skip();
    if (i >= text.size()) break;
    if (text[i] == '}') {
      ++i;
      break;
    }
    if (text[i] < '0' || text[i] > '9')
      throw ParseError(errc::malformed_token, "expected an edge index", i);
    std::size_t start = i;
    long v = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      v = v * 10 + (text[i] - '0');
      if (v > EdgeSubset::max_ground)
        throw ParseError(errc::malformed_token, "edge index too large", start);
      ++i;
    }
    if (v < 1) throw ParseError(errc::malformed_token, "edge indices start at 1", start);
    out = out.with(static_cast<int>(v));
  }
  skip();
  if (i != text.size())
    throw ParseError(errc::malformed_token, "trailing characters after subset", i);
  return out;
}

}  // namespace quasitree
