#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "quasitree/edge_subset.hpp"
#include "quasitree/errors.hpp"
#include "quasitree/matrices.hpp"
#include "quasitree/ribbon_graph.hpp"
#include "quasitree/signed_rotation.hpp"
#include "quasitree/subset_polynomial.hpp"
#include "quasitree/symbolic.hpp"
#include "quasitree/topology.hpp"

namespace quasitree {

enum class Method { gf2, integer, symbolic, oracle };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::gf2: return "gf2";
    case Method::integer: return "integer";
    case Method::symbolic: return "symbolic";
    case Method::oracle: return "oracle";
  }
  return "?";
}

struct EnumerationOptions {
  int cap = 26;          // 2^n sweep refusal threshold (gf2/integer)
  int symbolic_cap = 8;  // symbolic determinant size cap
  int oracle_cap = 20;   // boundary-tracing oracle cap
  bool force = false;    // bypass the caps
  int threads = 1;       // workers for the subset sweep
};

struct QuasiTreeReport {
  int n = 0;
  long long tau = 0;
  std::vector<EdgeSubset> feasible;  // canonical order
  SubsetPolynomial mod2_poly{0};
  std::optional<SubsetPolynomial> integer_poly;
  Method method = Method::gf2;
};

namespace detail {

// Partitions [0, total) into contiguous ranges, one worker each; results are
// merged in range order, so the outcome is independent of scheduling.
template <class Worker>
inline void sweep_subsets(std::uint64_t total, int threads, Worker&& worker) {
  if (threads <= 1 || total < 4096) {
    worker(0, std::uint64_t{0}, total);
    return;
  }
  int t = threads;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(t));
  for (int w = 0; w < t; ++w) {
    std::uint64_t lo = total / static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(w);
    std::uint64_t hi = w + 1 == t
                           ? total
                           : total / static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(w + 1);
    pool.emplace_back([&, w, lo, hi] {
      try {
        worker(w, lo, hi);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline void check_cap(int n, int cap, bool force, const char* what) {
  if (n > cap && !force)
    throw Error(errc::size_cap_exceeded, std::string(what) + " over " + std::to_string(n) +
                                             " edges exceeds cap " + std::to_string(cap) +
                                             " (use force to override)");
}

}  // namespace detail

// Coefficient of x_X is det(M[X]) over GF(2) (gf2 method), or the mod-2
// reduction of det(A_u[X]) (integer method, which also reports the pre-mod-2
// coefficients), or the reduction of the expanded symbolic determinant
// (symbolic method). All three agree on the mod-2 polynomial.
inline QuasiTreeReport quasi_tree_polynomial(const Bouquet& b, Method method = Method::gf2,
                                             const EnumerationOptions& opts = {}) {
  QuasiTreeReport rep;
  rep.n = b.n();
  rep.method = method;
  rep.mod2_poly = SubsetPolynomial(b.n());

  if (method == Method::symbolic) {
    detail::check_cap(b.n(), opts.symbolic_cap, opts.force, "symbolic determinant");
    SymbolicSkewMatrix s = symbolic_skew_adjacency(b);
    SymbolicPolynomial det =
        det_symbolic(s, EdgeSubset::full(b.n()), true, opts.force ? b.n() : opts.symbolic_cap);
    SubsetPolynomial ip = reduce(det, b.n());
    rep.integer_poly = ip;
    rep.mod2_poly = ip.mod2();
    for (const auto& [x, c] : rep.mod2_poly.terms()) rep.feasible.push_back(x);
    rep.tau = static_cast<long long>(rep.feasible.size());
    return rep;
  }
  if (method == Method::oracle) {
    rep.feasible = enumerate_quasi_trees_oracle(b, opts.oracle_cap, opts.force);
    for (EdgeSubset x : rep.feasible) rep.mod2_poly.add(x, 1);
    rep.tau = static_cast<long long>(rep.feasible.size());
    return rep;
  }

  detail::check_cap(b.n(), opts.cap, opts.force, "subset enumeration");
  std::uint64_t total = std::uint64_t{1} << b.n();
  int threads = opts.threads;
  std::vector<std::vector<std::uint64_t>> feasible_parts(
      static_cast<std::size_t>(threads > 1 ? threads : 1));
  std::vector<std::vector<std::pair<std::uint64_t, long long>>> coef_parts(
      static_cast<std::size_t>(threads > 1 ? threads : 1));

  if (method == Method::gf2) {
    BinaryMatrix m = adjacency(b);
    detail::sweep_subsets(total, threads, [&](int w, std::uint64_t lo, std::uint64_t hi) {
      auto& out = feasible_parts[static_cast<std::size_t>(w)];
      for (std::uint64_t mask = lo; mask < hi; ++mask)
        if (det_gf2(m, EdgeSubset(mask)) == 1) out.push_back(mask);
    });
  } else {
    IntegerSkewMatrix a = unsymbolic(symbolic_skew_adjacency(b));
    detail::sweep_subsets(total, threads, [&](int w, std::uint64_t lo, std::uint64_t hi) {
      auto& feas = feasible_parts[static_cast<std::size_t>(w)];
      auto& coefs = coef_parts[static_cast<std::size_t>(w)];
      for (std::uint64_t mask = lo; mask < hi; ++mask) {
        int128 d = det_int(a, EdgeSubset(mask));
        if (d == 0) continue;
        if (d > 0 ? d > INT64_MAX : d < INT64_MIN)
          throw Error(errc::overflow, "subset coefficient does not fit in 64 bits");
        coefs.emplace_back(mask, static_cast<long long>(d));
        if (d % 2 != 0) feas.push_back(mask);
      }
    });
    SubsetPolynomial ip(b.n());
    for (const auto& part : coef_parts)
      for (const auto& [mask, c] : part) ip.add(EdgeSubset(mask), c);
    rep.integer_poly = std::move(ip);
  }

  for (const auto& part : feasible_parts)
    for (std::uint64_t mask : part) rep.feasible.push_back(EdgeSubset(mask));
  std::sort(rep.feasible.begin(), rep.feasible.end(),
            [](EdgeSubset a, EdgeSubset b2) { return canonical_less(a, b2); });
  for (EdgeSubset x : rep.feasible) rep.mod2_poly.add(x, 1);
  rep.tau = static_cast<long long>(rep.feasible.size());
  return rep;
}

inline long long tau(const Bouquet& b, const EnumerationOptions& opts = {}) {
  return quasi_tree_polynomial(b, Method::gf2, opts).tau;
}

// Report for a general connected ribbon graph obtained through the partial
// dual at a spanning quasi-tree T: the dual is a bouquet whose feasible sets,
// shifted by symmetric difference with T, are exactly those of g.
struct PartialDualReport {
  QuasiTreeReport bouquet_report;  // report for g^{delta(T)}
  Bouquet bouquet;                 // the bouquet g^{delta(T)}
  EdgeSubset quasi_tree_used;      // T
  long long tau = 0;               // == bouquet_report.tau
  std::vector<EdgeSubset> feasible;  // {X delta T}, canonical order
  SubsetPolynomial mod2_poly{0};
};

inline PartialDualReport quasi_trees_via_partial_dual(const RibbonGraph& g,
                                                      std::optional<EdgeSubset> t_opt = {},
                                                      Method method = Method::gf2,
                                                      const EnumerationOptions& opts = {}) {
  if (!g.connected())
    throw Error(errc::not_connected, "ribbon graph is not connected");
  EdgeSubset t;
  if (t_opt) {
    t = *t_opt;
    if (!t.subset_of(EdgeSubset::full(g.n())))
      throw Error(errc::edge_not_present, "quasi-tree subset mentions an absent edge");
    int bc = boundary_components(g, t).components;
    if (bc != 1)
      throw NotAQuasiTreeError("subset " + t.to_string() + " has " + std::to_string(bc) +
                                   " boundary components, expected 1",
                               bc);
  } else {
    auto found = find_spanning_quasi_tree(g, opts.cap, opts.force);
    if (!found)
      throw Error(errc::not_connected, "ribbon graph is not connected");
    t = *found;
  }
  RibbonGraph dual = partial_dual(g, t);
  if (dual.vertex_count() != 1)
    throw Error(errc::internal_error,
                "partial dual at a spanning quasi-tree did not produce a bouquet");
  PartialDualReport rep;
  rep.bouquet = dual.to_bouquet();
  rep.quasi_tree_used = t;
  rep.bouquet_report = quasi_tree_polynomial(rep.bouquet, method, opts);
  rep.tau = rep.bouquet_report.tau;
  rep.mod2_poly = SubsetPolynomial(g.n());
  rep.feasible.reserve(rep.bouquet_report.feasible.size());
  for (EdgeSubset x : rep.bouquet_report.feasible) rep.feasible.push_back(x ^ t);
  std::sort(rep.feasible.begin(), rep.feasible.end(),
            [](EdgeSubset a, EdgeSubset b2) { return canonical_less(a, b2); });
  for (EdgeSubset x : rep.feasible) rep.mod2_poly.add(x, 1);
  return rep;
}

}  // namespace quasitree
