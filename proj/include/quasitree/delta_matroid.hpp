#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "quasitree/edge_subset.hpp"
#include "quasitree/errors.hpp"
#include "quasitree/quasi_tree.hpp"
#include "quasitree/ribbon_graph.hpp"
#include "quasitree/signed_rotation.hpp"
#include "quasitree/topology.hpp"

namespace quasitree {

// Ground set [n] plus a family of feasible subsets, kept sorted in canonical
// order with hashed membership.
class SetSystem {
 public:
  SetSystem() = default;

  SetSystem(int ground, std::vector<EdgeSubset> family) : ground_(ground) {
    for (EdgeSubset x : family) {
      if (!x.subset_of(EdgeSubset::full(ground)))
        throw Error(errc::subset_out_of_ground, "family member outside the ground set");
      if (members_.insert(x.mask()).second) family_.push_back(x);
    }
    std::sort(family_.begin(), family_.end(),
              [](EdgeSubset a, EdgeSubset b) { return canonical_less(a, b); });
  }

  int ground() const { return ground_; }
  const std::vector<EdgeSubset>& family() const { return family_; }
  bool proper() const { return !family_.empty(); }
  bool contains(EdgeSubset x) const { return members_.count(x.mask()) != 0; }

  friend bool operator==(const SetSystem& a, const SetSystem& b) {
    return a.ground_ == b.ground_ && a.family_ == b.family_;
  }

 private:
  int ground_ = 0;
  std::vector<EdgeSubset> family_;
  std::unordered_set<std::uint64_t> members_;
};

// D * A: every feasible set replaced by its symmetric difference with A.
inline SetSystem twist(const SetSystem& d, EdgeSubset a) {
  if (!a.subset_of(EdgeSubset::full(d.ground())))
    throw Error(errc::subset_out_of_ground, "twist subset outside the ground set");
  std::vector<EdgeSubset> out;
  out.reserve(d.family().size());
  for (EdgeSubset x : d.family()) out.push_back(x ^ a);
  return SetSystem(d.ground(), std::move(out));
}

struct ExchangeWitness {
  EdgeSubset x, y;
  int u = 0;
};

// Symmetric exchange axiom: for all feasible X, Y and u in X delta Y there is
// a v in X delta Y (v = u allowed) with X delta {u, v} feasible. Returns the
// first violating triple, or nullopt when the axiom holds.
inline std::optional<ExchangeWitness> delta_matroid_violation(const SetSystem& d) {
  if (!d.proper())
    throw Error(errc::improper_system, "set system has an empty family");
  for (EdgeSubset x : d.family()) {
    for (EdgeSubset y : d.family()) {
      EdgeSubset diff = x ^ y;
      for (int u : diff.elements()) {
        bool ok = false;
        for (int v : diff.elements()) {
          EdgeSubset candidate = u == v ? (x ^ EdgeSubset{}.with(u))
                                        : (x ^ EdgeSubset{}.with(u) ^ EdgeSubset{}.with(v));
          if (d.contains(candidate)) {
            ok = true;
            break;
          }
        }
        if (!ok) return ExchangeWitness{x, y, u};
      }
    }
  }
  return std::nullopt;
}

inline bool is_delta_matroid(const SetSystem& d) { return !delta_matroid_violation(d).has_value(); }

inline SetSystem delta_matroid_of(const Bouquet& b, const EnumerationOptions& opts = {}) {
  return SetSystem(b.n(), quasi_tree_polynomial(b, Method::gf2, opts).feasible);
}

inline SetSystem delta_matroid_of(const RibbonGraph& g, const EnumerationOptions& opts = {}) {
  if (!g.connected())
    throw Error(errc::not_connected, "ribbon graph is not connected");
  if (g.vertex_count() == 1) return delta_matroid_of(g.to_bouquet(), opts);
  return SetSystem(g.n(), quasi_trees_via_partial_dual(g, {}, Method::gf2, opts).feasible);
}

}  // namespace quasitree
