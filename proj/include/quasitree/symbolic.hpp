#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "quasitree/edge_subset.hpp"
#include "quasitree/errors.hpp"
#include "quasitree/matrices.hpp"

namespace quasitree {

// One factor x_{ij}^exp of a monomial, i <= j.
struct VarPower {
  int i = 0;
  int j = 0;
  int exp = 0;

  friend auto operator<=>(const VarPower&, const VarPower&) = default;
};

// Monomials are kept sorted by variable; this is the canonical term order.
using Monomial = std::vector<VarPower>;

// Element of Z[x_{ij}]: integer coefficients, like monomials merged.
class SymbolicPolynomial {
 public:
  SymbolicPolynomial() = default;

  static SymbolicPolynomial constant(long long c) {
    SymbolicPolynomial p;
    if (c != 0) p.terms_[Monomial{}] = c;
    return p;
  }

  static SymbolicPolynomial variable(int i, int j, int coef = 1) {
    if (i > j) std::swap(i, j);
    SymbolicPolynomial p;
    if (coef != 0) p.terms_[Monomial{{i, j, 1}}] = coef;
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, long long>& terms() const { return terms_; }

  void add_term(const Monomial& m, long long c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(m, 0);
    if (__builtin_add_overflow(it->second, c, &it->second))
      throw Error(errc::overflow, "symbolic coefficient overflowed 64 bits");
    if (it->second == 0) terms_.erase(it);
  }

  SymbolicPolynomial& operator+=(const SymbolicPolynomial& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }

  SymbolicPolynomial operator-() const {
    SymbolicPolynomial out;
    for (const auto& [m, c] : terms_) out.terms_[m] = -c;
    return out;
  }

  friend SymbolicPolynomial operator*(const SymbolicPolynomial& a, const SymbolicPolynomial& b) {
    SymbolicPolynomial out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        long long c;
        if (__builtin_mul_overflow(ca, cb, &c))
          throw Error(errc::overflow, "symbolic coefficient overflowed 64 bits");
        out.add_term(merge_monomials(ma, mb), c);
      }
    }
    return out;
  }

  // Terms in canonical order, e.g. "x_{11} x_{23}^2 - 2 x_{45}".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      long long mag = c;
      if (first) {
        if (c < 0) {
          out += '-';
          mag = -c;
        }
      } else {
        out += c < 0 ? " - " : " + ";
        mag = c < 0 ? -c : c;
      }
      first = false;
      if (mag != 1 || m.empty()) out += std::to_string(mag);
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (mag != 1 || k > 0) out += ' ';
        const char* sep = (m[k].i > 9 || m[k].j > 9) ? "," : "";
        out += "x_{" + std::to_string(m[k].i) + sep + std::to_string(m[k].j) + "}";
        if (m[k].exp > 1) out += "^" + std::to_string(m[k].exp);
      }
    }
    return out;
  }

  friend bool operator==(const SymbolicPolynomial&, const SymbolicPolynomial&) = default;

 private:
  static Monomial merge_monomials(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i].i == b[j].i && a[i].j == b[j].j) {
        out.push_back({a[i].i, a[i].j, a[i].exp + b[j].exp});
        ++i, ++j;
      } else if (std::pair(a[i].i, a[i].j) < std::pair(b[j].i, b[j].j)) {
        out.push_back(a[i++]);
      } else {
        out.push_back(b[j++]);
      }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back(b[j]);
    return out;
  }

  std::map<Monomial, long long> terms_;
};

// Expanded determinant of s[X] (optionally of I + s[X]) in Z[x_{ij}].
// Laplace expansion along the top row with memoisation on the surviving
// column set; gated by a size cap because the result can have k! terms.
inline SymbolicPolynomial det_symbolic(const SymbolicSkewMatrix& s, EdgeSubset x,
                                       bool add_identity = false, int cap = 8) {
  if (!x.subset_of(EdgeSubset::full(s.n())))
    throw Error(errc::index_out_of_range, "subset not within [1, n]");
  int k = x.count();
  if (k > cap)
    throw Error(errc::size_cap_exceeded,
                "symbolic determinant on " + std::to_string(k) + " rows exceeds cap " +
                    std::to_string(cap));
  if (k == 0) return SymbolicPolynomial::constant(1);
  auto idx = x.elements();
  std::vector<SymbolicPolynomial> cells(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      const auto& e = s.entry(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
      SymbolicPolynomial p =
          e.coef == 0 ? SymbolicPolynomial() : SymbolicPolynomial::variable(e.i, e.j, e.coef);
      if (add_identity && r == c) p += SymbolicPolynomial::constant(1);
      cells[static_cast<std::size_t>(r) * static_cast<std::size_t>(k) +
            static_cast<std::size_t>(c)] = std::move(p);
    }
  }
  std::vector<std::map<std::uint64_t, SymbolicPolynomial>> memo(static_cast<std::size_t>(k) + 1);
  auto minor = [&](auto&& self, int row, std::uint64_t cols) -> const SymbolicPolynomial& {
    auto& level = memo[static_cast<std::size_t>(row)];
    auto it = level.find(cols);
    if (it != level.end()) return it->second;
    SymbolicPolynomial det;
    if (row == k) {
      det = SymbolicPolynomial::constant(1);
    } else {
      int pos = 0;
      for (std::uint64_t m = cols; m != 0; m &= m - 1, ++pos) {
        int c = std::countr_zero(m);
        const auto& cell = cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(k) +
                                 static_cast<std::size_t>(c)];
        if (cell.is_zero()) continue;
        SymbolicPolynomial contrib = cell * self(self, row + 1, cols & ~(std::uint64_t{1} << c));
        det += (pos % 2 == 0) ? contrib : -contrib;
      }
    }
    return level.emplace(cols, std::move(det)).first->second;
  };
  std::uint64_t all = k == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
  return minor(minor, 0, all);
}

}  // namespace quasitree
