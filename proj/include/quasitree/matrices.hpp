#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "quasitree/edge_subset.hpp"
#include "quasitree/errors.hpp"
#include "quasitree/signed_rotation.hpp"

namespace quasitree {

using int128 = __int128;

// Entry of the symbolic skew-adjacency matrix: coef * x_{i j} with i <= j,
// coef in {-1, 0, +1}. Zero entries have i = j = 0.
struct SymbolicEntry {
  int coef = 0;
  int i = 0;
  int j = 0;

  friend bool operator==(const SymbolicEntry&, const SymbolicEntry&) = default;
};

class SymbolicSkewMatrix {
 public:
  explicit SymbolicSkewMatrix(int n)
      : n_(n), cells_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    if (n < 0 || n > EdgeSubset::max_ground)
      throw Error(errc::size_cap_exceeded, "matrix dimension outside [0, 63]");
  }

  int n() const { return n_; }

  const SymbolicEntry& entry(int i, int j) const { return cells_[idx(i, j)]; }

  void set_diagonal_variable(int i) { cells_[idx(i, i)] = {1, i, i}; }

  // Sets entry (i, j) = coef * x_{ij} and (j, i) = -coef * x_{ij}, i < j.
  void set_pair(int i, int j, int coef) {
    cells_[idx(i, j)] = coef == 0 ? SymbolicEntry{} : SymbolicEntry{coef, i, j};
    cells_[idx(j, i)] = coef == 0 ? SymbolicEntry{} : SymbolicEntry{-coef, i, j};
  }

  friend bool operator==(const SymbolicSkewMatrix&, const SymbolicSkewMatrix&) = default;

 private:
  std::size_t idx(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_)
      throw Error(errc::index_out_of_range, "matrix index outside [1, n]");
    return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(j - 1);
  }

  int n_ = 0;
  std::vector<SymbolicEntry> cells_;
};

// Skew matrix with entries in {-1, 0, 1} and diagonal in {0, 1}.
class IntegerSkewMatrix {
 public:
  explicit IntegerSkewMatrix(int n)
      : n_(n), cells_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {
    if (n < 0 || n > EdgeSubset::max_ground)
      throw Error(errc::size_cap_exceeded, "matrix dimension outside [0, 63]");
  }

  int n() const { return n_; }
  int entry(int i, int j) const { return cells_[idx(i, j)]; }
  void set(int i, int j, int v) { cells_[idx(i, j)] = static_cast<std::int8_t>(v); }

  friend bool operator==(const IntegerSkewMatrix&, const IntegerSkewMatrix&) = default;

 private:
  std::size_t idx(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_)
      throw Error(errc::index_out_of_range, "matrix index outside [1, n]");
    return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(j - 1);
  }

  int n_ = 0;
  std::vector<std::int8_t> cells_;
};

// Symmetric 0/1 matrix over GF(2), one 64-bit word per row (n <= 63).
class BinaryMatrix {
 public:
  explicit BinaryMatrix(int n) : n_(n), rows_(static_cast<std::size_t>(n), 0) {
    if (n < 0 || n > EdgeSubset::max_ground)
      throw Error(errc::size_cap_exceeded, "matrix dimension outside [0, 63]");
  }

  int n() const { return n_; }

  bool get(int i, int j) const {
    check(i), check(j);
    return (rows_[static_cast<std::size_t>(i - 1)] >> (j - 1)) & 1u;
  }

  void set(int i, int j, bool v) {
    check(i), check(j);
    std::uint64_t bit = std::uint64_t{1} << (j - 1);
    auto& row = rows_[static_cast<std::size_t>(i - 1)];
    row = v ? (row | bit) : (row & ~bit);
  }

  std::uint64_t row_bits(int i) const {
    check(i);
    return rows_[static_cast<std::size_t>(i - 1)];
  }

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  void check(int i) const {
    if (i < 1 || i > n_)
      throw Error(errc::index_out_of_range, "matrix index outside [1, n]");
  }

  int n_ = 0;
  std::vector<std::uint64_t> rows_;
};

// --- builders -------------------------------------------------------------

// Diagonal: x_{ii} for non-orientable loops. Off-diagonal (i < j): +x_{ij}
// when the cyclic order of the ends is i^a, j^a, i^b, j^b; -x_{ij} when it is
// i^a, j^b, i^b, j^a; 0 otherwise.
inline SymbolicSkewMatrix symbolic_skew_adjacency(const Bouquet& b) {
  SymbolicSkewMatrix m(b.n());
  for (int i = 1; i <= b.n(); ++i)
    if (loop_orientability(b, i) == LoopType::non_orientable) m.set_diagonal_variable(i);
  for (int i = 1; i <= b.n(); ++i) {
    for (int j = i + 1; j <= b.n(); ++j) {
      switch (interlacement(b, i, j)) {
        case Interlacement::aligned:
          m.set_pair(i, j, 1);
          break;
        case Interlacement::reversed:
          m.set_pair(i, j, -1);
          break;
        case Interlacement::non_interlaced:
          break;
      }
    }
  }
  return m;
}

inline IntegerSkewMatrix unsymbolic(const SymbolicSkewMatrix& s) {
  IntegerSkewMatrix m(s.n());
  for (int i = 1; i <= s.n(); ++i)
    for (int j = 1; j <= s.n(); ++j) m.set(i, j, s.entry(i, j).coef);
  return m;
}

// Entrywise absolute value of the unsymbolic matrix; depends only on the
// bouquet, not on the chosen signed rotation.
inline BinaryMatrix adjacency(const Bouquet& b) {
  BinaryMatrix m(b.n());
  for (int i = 1; i <= b.n(); ++i)
    if (loop_orientability(b, i) == LoopType::non_orientable) m.set(i, i, true);
  for (int i = 1; i <= b.n(); ++i) {
    for (int j = i + 1; j <= b.n(); ++j) {
      if (interlacement(b, i, j) != Interlacement::non_interlaced) {
        m.set(i, j, true);
        m.set(j, i, true);
      }
    }
  }
  return m;
}

// --- determinants ---------------------------------------------------------

namespace detail {

// Gathers the bits of `row` that sit at the positions of `mask` into the low
// bits, preserving order.
inline std::uint64_t compress_bits(std::uint64_t row, std::uint64_t mask) {
  std::uint64_t out = 0;
  int bit = 0;
  for (std::uint64_t m = mask; m != 0; m &= m - 1)
    out |= ((row >> std::countr_zero(m)) & 1u) << bit++;
  return out;
}

// Determinant over GF(2) of a k x k bit matrix held as k row words.
inline int det_gf2_rows(std::uint64_t* rows, int k) {
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int r = col; r < k; ++r) {
      if ((rows[r] >> col) & 1u) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return 0;
    std::swap(rows[col], rows[static_cast<std::size_t>(piv)]);
    for (int r = col + 1; r < k; ++r)
      if ((rows[r] >> col) & 1u) rows[r] ^= rows[col];
  }
  return 1;
}

}  // namespace detail

// Determinant of the principal submatrix m[X] over GF(2). det of the empty
// matrix is 1.
inline int det_gf2(const BinaryMatrix& m, EdgeSubset x) {
  if (!x.subset_of(EdgeSubset::full(m.n())))
    throw Error(errc::index_out_of_range, "subset not within [1, n]");
  int k = x.count();
  if (k == 0) return 1;
  std::uint64_t rows[64];
  int r = 0;
  for (std::uint64_t bits = x.mask(); bits != 0; bits &= bits - 1)
    rows[r++] = detail::compress_bits(m.row_bits(std::countr_zero(bits) + 1), x.mask());
  return detail::det_gf2_rows(rows, k);
}

enum class IntBackend { auto_detect, int128_only, bigint };

namespace detail {

// Fraction-free (Bareiss) elimination; every intermediate value is a minor of
// the input, so the magnitude stays within the Hadamard bound. Returns
// nullopt if a 128-bit product or subtraction would overflow.
inline std::optional<int128> bareiss_int128(std::vector<int128>& a, int k) {
  int sign = 1;
  int128 prev = 1;
  auto at = [&](int r, int c) -> int128& {
    return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(k) +
             static_cast<std::size_t>(c)];
  };
  for (int col = 0; col < k - 1; ++col) {
    if (at(col, col) == 0) {
      int piv = -1;
      for (int r = col + 1; r < k; ++r) {
        if (at(r, col) != 0) {
          piv = r;
          break;
        }
      }
      if (piv < 0) return int128{0};
      for (int c = 0; c < k; ++c) std::swap(at(col, c), at(piv, c));
      sign = -sign;
    }
    for (int r = col + 1; r < k; ++r) {
      for (int c = col + 1; c < k; ++c) {
        int128 p1, p2, num;
        if (__builtin_mul_overflow(at(r, c), at(col, col), &p1)) return std::nullopt;
        if (__builtin_mul_overflow(at(r, col), at(col, c), &p2)) return std::nullopt;
        if (__builtin_sub_overflow(p1, p2, &num)) return std::nullopt;
        at(r, c) = num / prev;  // exact by construction
      }
      at(r, col) = 0;
    }
    prev = at(col, col);
  }
  return sign * at(k - 1, k - 1);
}

inline boost::multiprecision::cpp_int bareiss_bigint(
    std::vector<boost::multiprecision::cpp_int>& a, int k) {
  using big = boost::multiprecision::cpp_int;
  int sign = 1;
  big prev = 1;
  auto at = [&](int r, int c) -> big& {
    return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(k) +
             static_cast<std::size_t>(c)];
  };
  for (int col = 0; col < k - 1; ++col) {
    if (at(col, col) == 0) {
      int piv = -1;
      for (int r = col + 1; r < k; ++r) {
        if (at(r, col) != 0) {
          piv = r;
          break;
        }
      }
      if (piv < 0) return 0;
      for (int c = 0; c < k; ++c) at(col, c).swap(at(piv, c));
      sign = -sign;
    }
    for (int r = col + 1; r < k; ++r) {
      for (int c = col + 1; c < k; ++c) at(r, c) = (at(r, c) * at(col, col) - at(r, col) * at(col, c)) / prev;
      at(r, col) = 0;
    }
    prev = at(col, col);
  }
  return sign * at(k - 1, k - 1);
}

}  // namespace detail

// Exact integer determinant of a[X] (optionally of I + a restricted to X).
// The default backend uses 128-bit accumulators and falls back to arbitrary
// precision when a product would overflow; overflow is never wrapped.
inline int128 det_int(const IntegerSkewMatrix& a, EdgeSubset x, bool add_identity = false,
                      IntBackend backend = IntBackend::auto_detect) {
  if (!x.subset_of(EdgeSubset::full(a.n())))
    throw Error(errc::index_out_of_range, "subset not within [1, n]");
  int k = x.count();
  if (k == 0) return 1;
  auto idx = x.elements();
  if (backend != IntBackend::bigint) {
    std::vector<int128> cells(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c)
        cells[static_cast<std::size_t>(r) * static_cast<std::size_t>(k) +
              static_cast<std::size_t>(c)] =
            a.entry(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]) +
            (add_identity && r == c ? 1 : 0);
    auto d = detail::bareiss_int128(cells, k);
    if (d) return *d;
    if (backend == IntBackend::int128_only)
      throw Error(errc::overflow, "128-bit determinant accumulator overflowed");
  }
  using big = boost::multiprecision::cpp_int;
  std::vector<big> cells(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c)
      cells[static_cast<std::size_t>(r) * static_cast<std::size_t>(k) +
            static_cast<std::size_t>(c)] =
          a.entry(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]) +
          (add_identity && r == c ? 1 : 0);
  big d = detail::bareiss_bigint(cells, k);
  static const big lo = -(big(1) << 127), hi = (big(1) << 127) - 1;
  if (d < lo || d > hi)
    throw Error(errc::overflow, "determinant does not fit in 128 bits");
  return static_cast<int128>(d);
}

inline int128 det_int_plus_identity(const IntegerSkewMatrix& a,
                                    IntBackend backend = IntBackend::auto_detect) {
  return det_int(a, EdgeSubset::full(a.n()), true, backend);
}

inline std::string int128_to_string(int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string digits;
  while (u != 0) {
    digits += static_cast<char>('0' + static_cast<int>(u % 10));
    u /= 10;
  }
  if (neg) digits += '-';
  return {digits.rbegin(), digits.rend()};
}

// --- pivot over GF(2) -----------------------------------------------------

namespace detail {

// Inverse of the principal submatrix m[X] over GF(2), rows/cols in the order
// of X's elements; nullopt when singular.
inline std::optional<std::vector<std::uint64_t>> invert_gf2(const BinaryMatrix& m, EdgeSubset x) {
  int k = x.count();
  auto idx = x.elements();
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(k));
  std::vector<std::uint64_t> inv(static_cast<std::size_t>(k));
  for (int r = 0; r < k; ++r) {
    rows[static_cast<std::size_t>(r)] =
        compress_bits(m.row_bits(idx[static_cast<std::size_t>(r)]), x.mask());
    inv[static_cast<std::size_t>(r)] = std::uint64_t{1} << r;
  }
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    for (int r = col; r < k; ++r) {
      if ((rows[static_cast<std::size_t>(r)] >> col) & 1u) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return std::nullopt;
    std::swap(rows[static_cast<std::size_t>(col)], rows[static_cast<std::size_t>(piv)]);
    std::swap(inv[static_cast<std::size_t>(col)], inv[static_cast<std::size_t>(piv)]);
    for (int r = 0; r < k; ++r) {
      if (r != col && ((rows[static_cast<std::size_t>(r)] >> col) & 1u)) {
        rows[static_cast<std::size_t>(r)] ^= rows[static_cast<std::size_t>(col)];
        inv[static_cast<std::size_t>(r)] ^= inv[static_cast<std::size_t>(col)];
      }
    }
  }
  return inv;
}

}  // namespace detail

// Pivot of the symmetric matrix m on X over GF(2): the block matrix
// [[P^-1, P^-1 Q], [Q^T P^-1, S + Q^T P^-1 Q]] with P = m[X], row/column
// labels kept in place. Requires P non-singular.
inline BinaryMatrix pivot_gf2(const BinaryMatrix& m, EdgeSubset x) {
  if (!x.subset_of(EdgeSubset::full(m.n())))
    throw Error(errc::index_out_of_range, "subset not within [1, n]");
  if (x.empty()) return m;
  auto inv = detail::invert_gf2(m, x);
  if (!inv)
    throw Error(errc::singular_pivot_block, "pivot block m[X] is singular over GF(2)");
  int n = m.n();
  int k = x.count();
  auto in_idx = x.elements();
  auto out_idx = (EdgeSubset::full(n) ^ x).elements();
  int kk = static_cast<int>(out_idx.size());

  // Q as k rows over the complement columns (compressed).
  std::vector<std::uint64_t> q(static_cast<std::size_t>(k));
  std::uint64_t out_mask = (EdgeSubset::full(n) ^ x).mask();
  for (int r = 0; r < k; ++r)
    q[static_cast<std::size_t>(r)] =
        detail::compress_bits(m.row_bits(in_idx[static_cast<std::size_t>(r)]), out_mask);

  // P^-1 Q: row r = XOR of q rows selected by bits of inv row r.
  std::vector<std::uint64_t> pinv_q(static_cast<std::size_t>(k), 0);
  for (int r = 0; r < k; ++r)
    for (std::uint64_t bits = (*inv)[static_cast<std::size_t>(r)]; bits != 0; bits &= bits - 1)
      pinv_q[static_cast<std::size_t>(r)] ^= q[static_cast<std::size_t>(std::countr_zero(bits))];

  // Q^T P^-1 Q: row s (over complement) = XOR of pinv_q rows selected by
  // column s of Q, i.e. by the bits of Q^T's row s.
  std::vector<std::uint64_t> qt_pinv_q(static_cast<std::size_t>(kk), 0);
  for (int s = 0; s < kk; ++s)
    for (int r = 0; r < k; ++r)
      if ((q[static_cast<std::size_t>(r)] >> s) & 1u)
        qt_pinv_q[static_cast<std::size_t>(s)] ^= pinv_q[static_cast<std::size_t>(r)];

  BinaryMatrix out(n);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c)
      out.set(in_idx[static_cast<std::size_t>(r)], in_idx[static_cast<std::size_t>(c)],
              ((*inv)[static_cast<std::size_t>(r)] >> c) & 1u);
    for (int s = 0; s < kk; ++s) {
      bool v = (pinv_q[static_cast<std::size_t>(r)] >> s) & 1u;
      out.set(in_idx[static_cast<std::size_t>(r)], out_idx[static_cast<std::size_t>(s)], v);
      out.set(out_idx[static_cast<std::size_t>(s)], in_idx[static_cast<std::size_t>(r)], v);
    }
  }
  for (int s = 0; s < kk; ++s)
    for (int t = 0; t < kk; ++t)
      out.set(out_idx[static_cast<std::size_t>(s)], out_idx[static_cast<std::size_t>(t)],
              (m.get(out_idx[static_cast<std::size_t>(s)], out_idx[static_cast<std::size_t>(t)]) ^
               (((qt_pinv_q[static_cast<std::size_t>(s)] >> t) & 1u) != 0)) != 0);
  return out;
}

}  // namespace quasitree
