#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quasitree/delta_matroid.hpp"
#include "quasitree/edge_subset.hpp"
#include "quasitree/matrices.hpp"
#include "quasitree/quasi_tree.hpp"
#include "quasitree/random_gen.hpp"
#include "quasitree/ribbon_graph.hpp"
#include "quasitree/signed_rotation.hpp"
#include "quasitree/subset_polynomial.hpp"
#include "quasitree/topology.hpp"

namespace quasitree {

// Cross-validation harness: every check below is a proved identity, so any
// failure on any instance indicates an implementation bug.

// Feasible sets from the GF(2) determinant sweep against the boundary-tracing
// oracle.
inline std::optional<std::string> check_determinants_vs_oracle(const Bouquet& b,
                                                          const EnumerationOptions& opts) {
  auto rep = quasi_tree_polynomial(b, Method::gf2, opts);
  auto oracle = enumerate_quasi_trees_oracle(b, opts.oracle_cap, opts.force);
  if (rep.feasible != oracle)
    return "determinant feasible sets differ from the boundary-tracing oracle";
  return std::nullopt;
}

// The mod-2 polynomial (and the pre-mod-2 one) must not depend on the chosen
// re-encoding: start rotation, direction reversal, a/b swap.
inline std::optional<std::string> check_sigma_invariance(const Bouquet& b, Rng& rng,
                                                         const EnumerationOptions& opts,
                                                         bool* pre_mod2_finding = nullptr) {
  auto base = quasi_tree_polynomial(b, Method::integer, opts);
  std::vector<std::pair<const char*, SignedRotation>> variants;
  if (b.n() > 0) {
    variants.emplace_back("start rotation",
                          b.rotation().rotated(rng.range(0, 2 * b.n() - 1)));
    variants.emplace_back("direction reversal", b.rotation().reversed());
    variants.emplace_back("a/b swap", b.rotation().with_ab_swapped(rng.range(1, b.n())));
  }
  for (const auto& [name, rot] : variants) {
    auto other = quasi_tree_polynomial(Bouquet(rot), Method::integer, opts);
    if (other.mod2_poly != base.mod2_poly)
      return std::string("mod-2 polynomial changed under ") + name;
    if (other.integer_poly != base.integer_poly && pre_mod2_finding)
      *pre_mod2_finding = true;
  }
  return std::nullopt;
}

// For orientable bouquets the signed count det(I + A_u) equals tau.
inline std::optional<std::string> check_orientable_determinant(const Bouquet& b,
                                                               const EnumerationOptions& opts) {
  if (!is_orientable(b)) return std::nullopt;
  IntegerSkewMatrix a = unsymbolic(symbolic_skew_adjacency(b));
  int128 det = det_int_plus_identity(a);
  long long t = tau(b, opts);
  if (det != static_cast<int128>(t))
    return "det(I + A_u) = " + int128_to_string(det) + " but tau = " + std::to_string(t);
  return std::nullopt;
}

// Pivot on a non-orientable loop against the adjacency matrix of the partial
// dual. The matrix is a parameter so tests can feed a corrupted one and watch
// the harness notice.
inline std::optional<std::string> check_pivot_identity(const BinaryMatrix& m, const Bouquet& b,
                                                       int e1) {
  BinaryMatrix pivoted = pivot_gf2(m, EdgeSubset{}.with(e1));
  RibbonGraph dual = partial_dual_edge(RibbonGraph::from_bouquet(b), e1);
  if (dual.vertex_count() != 1)
    return "partial dual at a non-orientable loop is not a bouquet";
  BinaryMatrix expected = adjacency(dual.to_bouquet());
  if (pivoted != expected)
    return "pivot on {" + std::to_string(e1) + "} differs from the dual's adjacency matrix";
  return std::nullopt;
}

inline std::optional<std::string> check_pivot_vs_dual(const Bouquet& b) {
  for (int i = 1; i <= b.n(); ++i) {
    if (loop_orientability(b, i) == LoopType::non_orientable)
      return check_pivot_identity(adjacency(b), b, i);
  }
  return std::nullopt;  // nothing to check
}

// Twist identity: the dual's feasible family equals the twisted family.
inline std::optional<std::string> check_twist_identity(const RibbonGraph& g, EdgeSubset a,
                                                       const EnumerationOptions& opts) {
  auto base = enumerate_quasi_trees_oracle(g, opts.oracle_cap, opts.force);
  RibbonGraph dual = partial_dual(g, a);
  auto dual_family = enumerate_quasi_trees_oracle(dual, opts.oracle_cap, opts.force);
  SetSystem twisted = twist(SetSystem(g.n(), base), a);
  if (SetSystem(g.n(), dual_family) != twisted)
    return "feasible sets of the partial dual at " + a.to_string() +
           " differ from the twisted family";
  return std::nullopt;
}

struct CheckConfig {
  std::uint64_t seed = 1;
  int count = 100;
  int n = 8;
  double p = 0.5;  // probability that a loop is non-orientable
  EnumerationOptions opts{};
};

struct CheckFailure {
  int instance = 0;
  std::string rotation;
  std::string detail;
};

struct CheckSummary {
  int total = 0;
  int passed = 0;
  int failed = 0;
  int pre_mod2_findings = 0;  // recorded, not counted as failures
  std::optional<CheckFailure> first_failure;
};

// Runs `count` random instances; instance i draws from seed mixed with i, so
// the stream does not depend on evaluation order.
inline CheckSummary run_random_checks(const CheckConfig& config) {
  CheckSummary summary;
  summary.total = config.count;
  for (int i = 0; i < config.count; ++i) {
    Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(i)));
    Bouquet b = random_bouquet(rng, config.n, config.p);
    std::vector<std::string> failures;
    bool pre_mod2 = false;
    if (auto f = check_determinants_vs_oracle(b, config.opts)) failures.push_back(*f);
    if (auto f = check_sigma_invariance(b, rng, config.opts, &pre_mod2)) failures.push_back(*f);
    if (auto f = check_orientable_determinant(b, config.opts)) failures.push_back(*f);
    if (auto f = check_pivot_vs_dual(b)) failures.push_back(*f);
    if (auto f = check_twist_identity(RibbonGraph::from_bouquet(b), random_subset(rng, b.n()),
                                      config.opts))
      failures.push_back(*f);
    if (pre_mod2) ++summary.pre_mod2_findings;
    if (failures.empty()) {
      ++summary.passed;
    } else {
      ++summary.failed;
      if (!summary.first_failure)
        summary.first_failure = CheckFailure{i, b.rotation().to_string(), failures.front()};
    }
  }
  return summary;
}

}  // namespace quasitree
