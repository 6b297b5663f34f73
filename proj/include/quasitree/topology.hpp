#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quasitree/edge_subset.hpp"
#include "quasitree/errors.hpp"
#include "quasitree/ribbon_graph.hpp"
#include "quasitree/signed_rotation.hpp"

namespace quasitree {

// Half-edge-side ("flag") model. Each present edge contributes four side
// slots, two per end: slot(e, end, 0) is the side met just before the
// attachment when walking the vertex disc in rotation order, slot(e, end, 1)
// the side met just after. Three involutions pair the slots:
//
//   occ     the two slots of one attachment interval,
//   corner  slot(h, 1) with slot(next h, 0) around a vertex disc,
//   band    slots across the edge ribbon; the side index flips for an
//           untwisted ribbon and is preserved for a twisted one.
//
// Boundary walks alternate band and corner moves; vertex discs alternate occ
// and corner. Every 2-regular pairing orbit is a closed curve.

struct SideVisit {
  int edge = 0;
  End end = End::a;
  int side = 0;

  friend bool operator==(const SideVisit&, const SideVisit&) = default;
};

struct BoundaryTrace {
  int components = 0;
  // One walk per component; isolated vertices contribute empty walks.
  std::vector<std::vector<SideVisit>> walks;
};

namespace detail {

inline int slot_id(int edge, End end, int side) {
  return 4 * (edge - 1) + 2 * static_cast<int>(end) + side;
}

inline SideVisit slot_visit(int slot) {
  return {slot / 4 + 1, static_cast<End>((slot / 2) % 2), slot % 2};
}

struct FlagSystem {
  std::vector<int> occ, corner, band;  // involutions; -1 for absent slots
  int isolated_vertices = 0;           // vertices with no present attachment
};

inline FlagSystem build_flags(const RibbonGraph& g, EdgeSubset present) {
  FlagSystem f;
  std::size_t slots = static_cast<std::size_t>(4) * static_cast<std::size_t>(g.n());
  f.occ.assign(slots, -1);
  f.corner.assign(slots, -1);
  f.band.assign(slots, -1);
  for (int e = 1; e <= g.n(); ++e) {
    if (!present.contains(e)) continue;
    int a0 = slot_id(e, End::a, 0), a1 = slot_id(e, End::a, 1);
    int b0 = slot_id(e, End::b, 0), b1 = slot_id(e, End::b, 1);
    f.occ[static_cast<std::size_t>(a0)] = a1;
    f.occ[static_cast<std::size_t>(a1)] = a0;
    f.occ[static_cast<std::size_t>(b0)] = b1;
    f.occ[static_cast<std::size_t>(b1)] = b0;
    if (g.edge_sign_product(e) > 0) {  // untwisted: side flips across the ribbon
      f.band[static_cast<std::size_t>(a0)] = b1;
      f.band[static_cast<std::size_t>(b1)] = a0;
      f.band[static_cast<std::size_t>(a1)] = b0;
      f.band[static_cast<std::size_t>(b0)] = a1;
    } else {  // twisted: side preserved
      f.band[static_cast<std::size_t>(a0)] = b0;
      f.band[static_cast<std::size_t>(b0)] = a0;
      f.band[static_cast<std::size_t>(a1)] = b1;
      f.band[static_cast<std::size_t>(b1)] = a1;
    }
  }
  for (const auto& vert : g.vertices()) {
    std::vector<int> here;  // slot of side 0 per present attachment, in order
    for (const auto& o : vert)
      if (present.contains(o.edge)) here.push_back(slot_id(o.edge, o.end, 0));
    if (here.empty()) {
      ++f.isolated_vertices;
      continue;
    }
    for (std::size_t k = 0; k < here.size(); ++k) {
      int cur1 = here[k] + 1;  // side-1 slot of this attachment
      int next0 = here[(k + 1) % here.size()];
      f.corner[static_cast<std::size_t>(cur1)] = next0;
      f.corner[static_cast<std::size_t>(next0)] = cur1;
    }
  }
  return f;
}

}  // namespace detail

// Traces the boundary of the spanning sub-ribbon-graph (V, present). All
// vertices are kept; isolated ones each contribute one component.
inline BoundaryTrace boundary_components(const RibbonGraph& g, EdgeSubset present) {
  if (!present.subset_of(EdgeSubset::full(g.n())))
    throw Error(errc::edge_not_present, "subset mentions an absent edge");
  auto f = detail::build_flags(g, present);
  BoundaryTrace trace;
  std::vector<char> visited(f.band.size(), 0);
  for (std::size_t s0 = 0; s0 < f.band.size(); ++s0) {
    if (f.band[s0] < 0 || visited[s0]) continue;
    std::vector<SideVisit> walk;
    int s = static_cast<int>(s0);
    do {
      visited[static_cast<std::size_t>(s)] = 1;
      walk.push_back(detail::slot_visit(s));
      int t = f.band[static_cast<std::size_t>(s)];
      visited[static_cast<std::size_t>(t)] = 1;
      walk.push_back(detail::slot_visit(t));
      s = f.corner[static_cast<std::size_t>(t)];
      if (s < 0)
        throw Error(errc::malformed_ribbon_graph, "boundary walk fell off the rotation system");
    } while (s != static_cast<int>(s0));
    trace.walks.push_back(std::move(walk));
  }
  for (int i = 0; i < f.isolated_vertices; ++i) trace.walks.emplace_back();
  trace.components = static_cast<int>(trace.walks.size());
  return trace;
}

inline BoundaryTrace boundary_components(const RibbonGraph& g) {
  return boundary_components(g, EdgeSubset::full(g.n()));
}

inline BoundaryTrace boundary_components(const Bouquet& b, EdgeSubset present) {
  return boundary_components(RibbonGraph::from_bouquet(b), present);
}

inline bool is_quasi_tree(const RibbonGraph& g, EdgeSubset x) {
  return boundary_components(g, x).components == 1;
}

inline bool is_quasi_tree(const Bouquet& b, EdgeSubset x) {
  return boundary_components(b, x).components == 1;
}

// Brute-force filter of all 2^n edge subsets; this is the independent oracle
// against which the determinant route is checked.
inline std::vector<EdgeSubset> enumerate_quasi_trees_oracle(const RibbonGraph& g, int cap = 20,
                                                            bool force = false) {
  if (g.n() > cap && !force)
    throw Error(errc::size_cap_exceeded, "oracle enumeration over " + std::to_string(g.n()) +
                                             " edges exceeds cap " + std::to_string(cap));
  std::vector<EdgeSubset> out;
  std::uint64_t total = std::uint64_t{1} << g.n();
  for (std::uint64_t mask = 0; mask < total; ++mask)
    if (is_quasi_tree(g, EdgeSubset(mask))) out.push_back(EdgeSubset(mask));
  std::sort(out.begin(), out.end(), [](EdgeSubset a, EdgeSubset b) { return canonical_less(a, b); });
  return out;
}

inline std::vector<EdgeSubset> enumerate_quasi_trees_oracle(const Bouquet& b, int cap = 20,
                                                            bool force = false) {
  return enumerate_quasi_trees_oracle(RibbonGraph::from_bouquet(b), cap, force);
}

// --- partial duality --------------------------------------------------------

namespace detail {

// Partial dual with respect to all of `a` at once: on the four flags of each
// e in a, the occurrence pairing and the band pairing trade places; corners
// are untouched. New vertices are the orbits of (occ', corner); the walk
// fixes a side-role assignment from which each edge's twist is recovered.
inline RibbonGraph partial_dual_one_shot(const RibbonGraph& g, EdgeSubset a) {
  if (!a.subset_of(EdgeSubset::full(g.n())))
    throw Error(errc::edge_not_present, "subset mentions an absent edge");
  auto f = build_flags(g, EdgeSubset::full(g.n()));
  std::size_t slots = f.occ.size();
  std::vector<int> occ2(slots, -1), band2(slots, -1);
  for (std::size_t s = 0; s < slots; ++s) {
    if (f.occ[s] < 0) continue;
    int e = static_cast<int>(s / 4) + 1;
    occ2[s] = a.contains(e) ? f.band[s] : f.occ[s];
    band2[s] = a.contains(e) ? f.occ[s] : f.band[s];
  }

  struct EdgeBuild {
    int ends_seen = 0;
    std::array<int, 2> role0{-1, -1};  // slot assigned role 0 per new end (a, b)
    std::array<int, 2> role1{-1, -1};
  };
  std::vector<EdgeBuild> edges(static_cast<std::size_t>(g.n()));
  std::vector<std::vector<Occurrence>> verts;
  std::vector<char> visited(slots, 0);
  for (std::size_t s0 = 0; s0 < slots; ++s0) {
    if (occ2[s0] < 0 || visited[s0]) continue;
    std::vector<Occurrence> vert;
    int s = static_cast<int>(s0);
    do {
      int t = occ2[static_cast<std::size_t>(s)];
      visited[static_cast<std::size_t>(s)] = 1;
      visited[static_cast<std::size_t>(t)] = 1;
      int e = s / 4 + 1;
      auto& eb = edges[static_cast<std::size_t>(e - 1)];
      int which = eb.ends_seen++;
      if (which > 1)
        throw Error(errc::internal_error, "edge visited more than twice in dual reconstruction");
      eb.role0[static_cast<std::size_t>(which)] = s;
      eb.role1[static_cast<std::size_t>(which)] = t;
      vert.push_back({e, which == 0 ? End::a : End::b, 1});
      s = f.corner[static_cast<std::size_t>(t)];
    } while (s != static_cast<int>(s0));
    verts.push_back(std::move(vert));
  }
  // Twist of e in the dual: band2 sends a role-0 slot of one end to a role-0
  // slot of the other end exactly when the ribbon is twisted.
  std::vector<char> twisted(static_cast<std::size_t>(g.n()), 0);
  for (int e = 1; e <= g.n(); ++e) {
    const auto& eb = edges[static_cast<std::size_t>(e - 1)];
    if (eb.ends_seen != 2)
      throw Error(errc::internal_error, "dual reconstruction lost an edge end");
    twisted[static_cast<std::size_t>(e - 1)] =
        band2[static_cast<std::size_t>(eb.role0[0])] == eb.role0[1];
  }
  for (auto& vert : verts)
    for (auto& o : vert)
      if (twisted[static_cast<std::size_t>(o.edge - 1)] && o.end == End::a) o.sign = -1;
  // Vertices of g that have no attachment at all stay as isolated vertices.
  for (const auto& vert : g.vertices())
    if (vert.empty()) verts.emplace_back();
  return RibbonGraph::from_vertices(std::move(verts));
}

}  // namespace detail

inline RibbonGraph partial_dual_edge(const RibbonGraph& g, int e) {
  if (e < 1 || e > g.n())
    throw Error(errc::edge_not_present, "edge " + std::to_string(e) + " not present");
  return detail::partial_dual_one_shot(g, EdgeSubset{}.with(e));
}

// Composition of single-edge duals over the elements of a, ascending.
inline RibbonGraph partial_dual(const RibbonGraph& g, EdgeSubset a) {
  if (!a.subset_of(EdgeSubset::full(g.n())))
    throw Error(errc::edge_not_present, "subset mentions an absent edge");
  RibbonGraph out = g;
  for (int e : a.elements()) out = partial_dual_edge(out, e);
  return out;
}

inline RibbonGraph delete_edge(const RibbonGraph& g, int e) {
  if (e < 1 || e > g.n())
    throw Error(errc::edge_not_present, "edge " + std::to_string(e) + " not present");
  std::vector<std::vector<Occurrence>> verts;
  verts.reserve(g.vertices().size());
  for (const auto& vert : g.vertices()) {
    std::vector<Occurrence> kept;
    kept.reserve(vert.size());
    for (const auto& o : vert)
      if (o.edge != e) kept.push_back(o);
    verts.push_back(std::move(kept));
  }
  return RibbonGraph::from_vertices(std::move(verts));
}

// G / e = G^{delta(e)} \ e.
inline RibbonGraph contract_edge(const RibbonGraph& g, int e) {
  return delete_edge(partial_dual_edge(g, e), e);
}

// Scans subsets in increasing cardinality (lexicographic within) and returns
// the first spanning quasi-tree; nullopt exactly when g is disconnected.
inline std::optional<EdgeSubset> find_spanning_quasi_tree(const RibbonGraph& g, int cap = 26,
                                                          bool force = false) {
  if (!g.connected()) return std::nullopt;
  if (g.n() > cap && !force)
    throw Error(errc::size_cap_exceeded, "quasi-tree search over " + std::to_string(g.n()) +
                                             " edges exceeds cap " + std::to_string(cap));
  int n = g.n();
  for (int k = 0; k <= n; ++k) {
    std::vector<int> comb(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i + 1;
    for (;;) {
      EdgeSubset x;
      for (int i : comb) x = x.with(i);
      if (is_quasi_tree(g, x)) return x;
      // next k-combination of [1, n] in lexicographic order
      int i = k - 1;
      while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - (k - 1 - i)) --i;
      if (i < 0) break;
      ++comb[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  throw Error(errc::internal_error, "connected ribbon graph without a spanning quasi-tree");
}

}  // namespace quasitree
