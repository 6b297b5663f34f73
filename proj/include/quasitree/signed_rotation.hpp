#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quasitree/edge_subset.hpp"
#include "quasitree/errors.hpp"

namespace quasitree {

enum class End : std::uint8_t { a = 0, b = 1 };

inline char end_letter(End e) { return e == End::a ? 'a' : 'b'; }
inline End other_end(End e) { return e == End::a ? End::b : End::a; }

struct HalfEdgeLabel {
  int edge = 0;  // 1-based
  End end = End::a;
  int sign = 1;  // +1 or -1

  friend bool operator==(const HalfEdgeLabel&, const HalfEdgeLabel&) = default;
};

// Cyclic sequence of 2n signed half-edge labels encoding the order of loop
// ends around a bouquet's vertex. Edge indices are canonical (1..n); the
// original input labels are kept so reports can refer back to them.
class SignedRotation {
 public:
  SignedRotation() = default;  // empty rotation, n = 0

  // Builds from labels carrying raw (possibly non-contiguous) edge indices.
  // Indices are relabelled to 1..n by increasing original value.
  static SignedRotation from_labels(const std::vector<HalfEdgeLabel>& raw) {
    return build(raw, nullptr);
  }

  int n() const { return n_; }
  const std::vector<HalfEdgeLabel>& sequence() const { return seq_; }
  const std::vector<int>& original_labels() const { return original_; }

  bool relabelled() const {
    for (int i = 0; i < n_; ++i)
      if (original_[static_cast<std::size_t>(i)] != i + 1) return true;
    return false;
  }

  int position(int edge, End end) const {
    check_edge(edge);
    return pos_[static_cast<std::size_t>(2 * (edge - 1) + static_cast<int>(end))];
  }

  int sign_of(int edge, End end) const {
    return seq_[static_cast<std::size_t>(position(edge, end))].sign;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t k = 0; k < seq_.size(); ++k) {
      if (k > 0) out += ", ";
      if (seq_[k].sign < 0) out += '-';
      out += std::to_string(seq_[k].edge);
      out += end_letter(seq_[k].end);
    }
    out += ']';
    return out;
  }

  // Re-encodings of the same bouquet: start-point rotation, direction
  // reversal, and a/b marker swap on one loop.
  SignedRotation rotated(int offset) const {
    if (seq_.empty()) return *this;
    int len = static_cast<int>(seq_.size());
    offset = ((offset % len) + len) % len;
    std::vector<HalfEdgeLabel> out(seq_.begin() + offset, seq_.end());
    out.insert(out.end(), seq_.begin(), seq_.begin() + offset);
    return rebuild(std::move(out));
  }

  SignedRotation reversed() const {
    std::vector<HalfEdgeLabel> out(seq_.rbegin(), seq_.rend());
    return rebuild(std::move(out));
  }

  SignedRotation with_ab_swapped(int edge) const {
    check_edge(edge);
    std::vector<HalfEdgeLabel> out = seq_;
    for (auto& l : out)
      if (l.edge == edge) l.end = other_end(l.end);
    return rebuild(std::move(out));
  }

  friend bool operator==(const SignedRotation& x, const SignedRotation& y) {
    return x.seq_ == y.seq_;
  }

 private:
  friend SignedRotation parse_signed_rotation(std::string_view);

  // offsets, when given, holds the text offset of each raw label for
  // caret-accurate parse errors.
  static SignedRotation build(const std::vector<HalfEdgeLabel>& raw,
                              const std::vector<std::size_t>* offsets) {
    auto at = [&](std::size_t k) { return offsets ? (*offsets)[k] : std::size_t{0}; };
    struct Seen {
      std::array<int, 2> count{0, 0};
      std::size_t first_offset = 0;
    };
    std::map<int, Seen> seen;  // keyed by original edge index
    for (std::size_t k = 0; k < raw.size(); ++k) {
      const auto& l = raw[k];
      if (l.edge < 1)
        throw ParseError(errc::malformed_token, "edge indices start at 1", at(k));
      if (l.sign != 1 && l.sign != -1)
        throw ParseError(errc::malformed_token, "sign must be +1 or -1", at(k));
      auto [it, fresh] = seen.try_emplace(l.edge);
      if (fresh) it->second.first_offset = at(k);
      if (++it->second.count[static_cast<std::size_t>(l.end)] > 1)
        throw ParseError(errc::duplicate_end,
                         "label " + std::to_string(l.edge) + end_letter(l.end) +
                             " appears more than once",
                         at(k));
    }
    for (const auto& [edge, info] : seen) {
      for (int e = 0; e < 2; ++e) {
        if (info.count[static_cast<std::size_t>(e)] == 0)
          throw ParseError(errc::missing_end,
                           "edge " + std::to_string(edge) + " is missing its " +
                               end_letter(static_cast<End>(e)) + " end",
                           info.first_offset);
      }
    }
    SignedRotation rot;
    rot.n_ = static_cast<int>(seen.size());
    if (rot.n_ > EdgeSubset::max_ground)
      throw Error(errc::size_cap_exceeded, "more than 63 edges are not supported");
    std::map<int, int> relabel;  // increasing original value -> 1..n
    for (const auto& [edge, info] : seen) {
      relabel[edge] = static_cast<int>(relabel.size()) + 1;
      rot.original_.push_back(edge);
    }
    rot.seq_.reserve(raw.size());
    for (const auto& l : raw)
      rot.seq_.push_back({relabel.at(l.edge), l.end, l.sign});
    rot.index();
    return rot;
  }

  static SignedRotation rebuild(std::vector<HalfEdgeLabel> seq) {
    SignedRotation rot;
    rot.seq_ = std::move(seq);
    rot.n_ = static_cast<int>(rot.seq_.size() / 2);
    for (int i = 1; i <= rot.n_; ++i) rot.original_.push_back(i);
    rot.index();
    return rot;
  }

  void index() {
    pos_.assign(static_cast<std::size_t>(2 * n_), -1);
    for (std::size_t k = 0; k < seq_.size(); ++k)
      pos_[static_cast<std::size_t>(2 * (seq_[k].edge - 1) +
                                    static_cast<int>(seq_[k].end))] = static_cast<int>(k);
  }

  void check_edge(int edge) const {
    if (edge < 1 || edge > n_)
      throw Error(errc::index_out_of_range,
                  "edge " + std::to_string(edge) + " outside [1, " + std::to_string(n_) + "]");
  }

  std::vector<HalfEdgeLabel> seq_;
  std::vector<int> pos_;       // pos_[2*(e-1) + end] = index into seq_
  std::vector<int> original_;  // original_[e-1] = input label of canonical edge e
  int n_ = 0;
};

// Token grammar: optional '-' (ASCII or U+2212), decimal integer >= 1, then
// 'a' or 'b'; a '^' before the end letter is tolerated. Tokens are separated
// by commas or whitespace; the whole list may be bracketed.
inline SignedRotation parse_signed_rotation(std::string_view text) {
  std::vector<HalfEdgeLabel> labels;
  std::vector<std::size_t> offsets;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '\t' ||
                               text[i] == '\n' || text[i] == '\r'))
      ++i;
  };
  skip();
  bool bracketed = i < text.size() && text[i] == '[';
  if (bracketed) ++i;
  bool closed = false;
  while (true) {
    skip();
    if (i >= text.size()) break;
    if (text[i] == ']') {
      if (!bracketed) throw ParseError(errc::malformed_token, "unexpected ']'", i);
      ++i;
      closed = true;
      break;
    }
    std::size_t start = i;
    int sign = 1;
    if (text[i] == '-') {
      sign = -1;
      ++i;
    } else if (text.compare(i, 3, "\xe2\x88\x92") == 0) {  // U+2212 minus sign
      sign = -1;
      i += 3;
    }
    if (i >= text.size() || text[i] < '0' || text[i] > '9')
      throw ParseError(errc::malformed_token, "expected an edge index", i);
    long edge = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      edge = edge * 10 + (text[i] - '0');
      if (edge > 1'000'000)
        throw ParseError(errc::malformed_token, "edge index too large", start);
      ++i;
    }
    if (edge < 1) throw ParseError(errc::malformed_token, "edge indices start at 1", start);
    if (i < text.size() && text[i] == '^') ++i;
    if (i >= text.size() || (text[i] != 'a' && text[i] != 'b'))
      throw ParseError(errc::malformed_token, "expected end marker 'a' or 'b'", i);
    End end = text[i] == 'a' ? End::a : End::b;
    ++i;
    labels.push_back({static_cast<int>(edge), end, sign});
    offsets.push_back(start);
  }
  if (bracketed && !closed)
    throw ParseError(errc::malformed_token, "missing closing ']'", text.size());
  skip();
  if (i != text.size())
    throw ParseError(errc::malformed_token, "trailing characters after rotation", i);
  return SignedRotation::build(labels, &offsets);
}

// A one-vertex ribbon graph; every edge is a loop.
class Bouquet {
 public:
  Bouquet() = default;
  explicit Bouquet(SignedRotation rotation) : rotation_(std::move(rotation)) {}

  int n() const { return rotation_.n(); }
  const SignedRotation& rotation() const { return rotation_; }

  friend bool operator==(const Bouquet&, const Bouquet&) = default;

 private:
  SignedRotation rotation_;
};

inline Bouquet parse_bouquet(std::string_view text) {
  return Bouquet(parse_signed_rotation(text));
}

enum class LoopType { orientable, non_orientable };

// A loop is non-orientable exactly when its two ends carry opposite signs.
inline LoopType loop_orientability(const Bouquet& b, int i) {
  const auto& rot = b.rotation();
  return rot.sign_of(i, End::a) != rot.sign_of(i, End::b) ? LoopType::non_orientable
                                                          : LoopType::orientable;
}

enum class Interlacement { aligned, reversed, non_interlaced };

// Relative cyclic order of the four ends of loops i < j, signs ignored:
// aligned for i^a, j^a, i^b, j^b; reversed for i^a, j^b, i^b, j^a.
inline Interlacement interlacement(const Bouquet& b, int i, int j) {
  if (i >= j)
    throw Error(errc::needs_i_less_than_j, "interlacement requires i < j");
  const auto& rot = b.rotation();
  int len = 2 * b.n();
  int ia = rot.position(i, End::a);
  int ib = (rot.position(i, End::b) - ia + len) % len;
  int ja = (rot.position(j, End::a) - ia + len) % len;
  int jb = (rot.position(j, End::b) - ia + len) % len;
  bool ja_inside = ja < ib;
  bool jb_inside = jb < ib;
  if (ja_inside == jb_inside) return Interlacement::non_interlaced;
  return ja_inside ? Interlacement::aligned : Interlacement::reversed;
}

// Induced sub-bouquet on the loops in x, relabelled 1..|x| preserving order.
inline Bouquet restrict_to(const Bouquet& b, EdgeSubset x) {
  std::vector<HalfEdgeLabel> kept;
  for (const auto& l : b.rotation().sequence())
    if (x.contains(l.edge)) kept.push_back(l);
  return Bouquet(SignedRotation::from_labels(kept));
}

inline bool is_orientable(const Bouquet& b) {
  for (int i = 1; i <= b.n(); ++i)
    if (loop_orientability(b, i) == LoopType::non_orientable) return false;
  return true;
}

}  // namespace quasitree
