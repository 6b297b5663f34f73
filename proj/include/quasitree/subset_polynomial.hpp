#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "quasitree/edge_subset.hpp"
#include "quasitree/errors.hpp"
#include "quasitree/symbolic.hpp"

namespace quasitree {

// Element of the ring Z[x_A : A subset of [n]] with x_A * x_B = x_{A u B}
// and unit x_{}. Zero coefficients are never stored.
class SubsetPolynomial {
 public:
  explicit SubsetPolynomial(int ground = 0) : ground_(ground) {}

  int ground() const { return ground_; }
  bool is_zero() const { return coef_.empty(); }
  std::size_t term_count() const { return coef_.size(); }

  long long coefficient(EdgeSubset x) const {
    auto it = coef_.find(x.mask());
    return it == coef_.end() ? 0 : it->second;
  }

  void add(EdgeSubset x, long long c) {
    if (!x.subset_of(EdgeSubset::full(ground_)))
      throw Error(errc::index_out_of_range, "subset not within the ground set");
    if (c == 0) return;
    auto [it, fresh] = coef_.try_emplace(x.mask(), 0);
    if (__builtin_add_overflow(it->second, c, &it->second))
      throw Error(errc::overflow, "subset-polynomial coefficient overflowed 64 bits");
    if (it->second == 0) coef_.erase(it);
  }

  SubsetPolynomial mod2() const {
    SubsetPolynomial out(ground_);
    for (const auto& [mask, c] : coef_)
      if (c % 2 != 0) out.coef_[mask] = 1;
    return out;
  }

  friend SubsetPolynomial operator+(const SubsetPolynomial& a, const SubsetPolynomial& b) {
    SubsetPolynomial out(a.ground_ > b.ground_ ? a.ground_ : b.ground_);
    for (const auto& [mask, c] : a.coef_) out.add(EdgeSubset(mask), c);
    for (const auto& [mask, c] : b.coef_) out.add(EdgeSubset(mask), c);
    return out;
  }

  friend SubsetPolynomial operator*(const SubsetPolynomial& a, const SubsetPolynomial& b) {
    SubsetPolynomial out(a.ground_ > b.ground_ ? a.ground_ : b.ground_);
    for (const auto& [ma, ca] : a.coef_) {
      for (const auto& [mb, cb] : b.coef_) {
        long long c;
        if (__builtin_mul_overflow(ca, cb, &c))
          throw Error(errc::overflow, "subset-polynomial coefficient overflowed 64 bits");
        out.add(EdgeSubset(ma | mb), c);
      }
    }
    return out;
  }

  long long evaluate_all_ones() const {
    long long sum = 0;
    for (const auto& [mask, c] : coef_)
      if (__builtin_add_overflow(sum, c, &sum))
        throw Error(errc::overflow, "evaluation overflowed 64 bits");
    return sum;
  }

  // Terms in canonical subset order (cardinality, then lexicographic).
  std::vector<std::pair<EdgeSubset, long long>> terms() const {
    std::vector<std::pair<EdgeSubset, long long>> out;
    out.reserve(coef_.size());
    for (const auto& [mask, c] : coef_) out.emplace_back(EdgeSubset(mask), c);
    std::sort(out.begin(), out.end(),
              [](const auto& p, const auto& q) { return canonical_less(p.first, q.first); });
    return out;
  }

  // "c*x_{i1 i2 ...}" joined by " + "; the empty set renders as x_{}.
  std::string to_text() const {
    if (coef_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [x, c] : terms()) {
      if (!first) out += " + ";
      first = false;
      out += std::to_string(c);
      out += "*x_{";
      bool first_idx = true;
      for (int i : x.elements()) {
        if (!first_idx) out += ' ';
        out += std::to_string(i);
        first_idx = false;
      }
      out += '}';
    }
    return out;
  }

  friend bool operator==(const SubsetPolynomial&, const SubsetPolynomial&) = default;

 private:
  int ground_ = 0;
  std::map<std::uint64_t, long long> coef_;
};

// The reduction map: each monomial prod x_{i_r j_r}^{e_r} collapses to the
// single variable indexed by the union of its indices, coefficient kept.
inline SubsetPolynomial reduce(const SymbolicPolynomial& p, int ground) {
  SubsetPolynomial out(ground);
  for (const auto& [mono, c] : p.terms()) {
    EdgeSubset support;
    for (const auto& vp : mono) {
      if (vp.i < 1 || vp.i > ground || vp.j < 1 || vp.j > ground)
        throw Error(errc::index_out_of_range, "variable index outside the ground set");
      support = support.with(vp.i).with(vp.j);
    }
    out.add(support, c);
  }
  return out;
}

}  // namespace quasitree
