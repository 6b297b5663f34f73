#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "quasitree/edge_subset.hpp"
#include "quasitree/errors.hpp"
#include "quasitree/signed_rotation.hpp"

namespace quasitree {

struct Occurrence {
  int edge = 0;  // 1-based
  End end = End::a;
  int sign = 1;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

// Ribbon graph as a signed rotation system: per vertex a cyclic list of
// half-edge occurrences; each edge has exactly two occurrences, and its
// ribbon is twisted exactly when the product of its two end signs is -1.
class RibbonGraph {
 public:
  RibbonGraph() = default;

  // Raw edge labels may be non-contiguous; they are relabelled to 1..n by
  // increasing original value.
  static RibbonGraph from_vertices(std::vector<std::vector<Occurrence>> vertices) {
    if (vertices.empty())
      throw Error(errc::malformed_ribbon_graph, "a ribbon graph needs at least one vertex");
    RibbonGraph g;
    std::map<int, std::array<int, 2>> seen;
    for (const auto& vert : vertices) {
      for (const auto& o : vert) {
        if (o.edge < 1)
          throw Error(errc::malformed_ribbon_graph, "edge indices start at 1");
        if (o.sign != 1 && o.sign != -1)
          throw Error(errc::malformed_ribbon_graph, "occurrence sign must be 1 or -1");
        if (++seen[o.edge][static_cast<std::size_t>(o.end)] > 1)
          throw Error(errc::malformed_ribbon_graph,
                      "occurrence " + std::to_string(o.edge) + end_letter(o.end) +
                          " appears more than once");
      }
    }
    for (const auto& [edge, counts] : seen) {
      if (counts[0] == 0 || counts[1] == 0)
        throw Error(errc::malformed_ribbon_graph,
                    "edge " + std::to_string(edge) + " is missing one of its ends");
    }
    g.n_ = static_cast<int>(seen.size());
    if (g.n_ > EdgeSubset::max_ground)
      throw Error(errc::size_cap_exceeded, "more than 63 edges are not supported");
    std::map<int, int> relabel;
    for (const auto& [edge, counts] : seen) {
      relabel[edge] = static_cast<int>(relabel.size()) + 1;
      g.original_.push_back(edge);
    }
    g.verts_ = std::move(vertices);
    for (auto& vert : g.verts_)
      for (auto& o : vert) o.edge = relabel.at(o.edge);
    g.index();
    return g;
  }

  static RibbonGraph from_bouquet(const Bouquet& b) {
    std::vector<Occurrence> vert;
    vert.reserve(b.rotation().sequence().size());
    for (const auto& l : b.rotation().sequence()) vert.push_back({l.edge, l.end, l.sign});
    return from_vertices({std::move(vert)});
  }

  int n() const { return n_; }
  int vertex_count() const { return static_cast<int>(verts_.size()); }
  const std::vector<std::vector<Occurrence>>& vertices() const { return verts_; }
  const std::vector<int>& original_labels() const { return original_; }

  // (vertex index, position within that vertex's cyclic list).
  std::pair<int, int> locate(int edge, End end) const {
    check_edge(edge);
    return loc_[static_cast<std::size_t>(edge - 1)][static_cast<std::size_t>(end)];
  }

  int sign_of(int edge, End end) const {
    auto [v, p] = locate(edge, end);
    return verts_[static_cast<std::size_t>(v)][static_cast<std::size_t>(p)].sign;
  }

  // -1 when the edge ribbon is twisted.
  int edge_sign_product(int edge) const {
    return sign_of(edge, End::a) * sign_of(edge, End::b);
  }

  bool is_loop(int edge) const {
    return locate(edge, End::a).first == locate(edge, End::b).first;
  }

  bool connected() const {
    std::size_t v = verts_.size();
    std::vector<int> parent(v);
    for (std::size_t i = 0; i < v; ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
      }
      return x;
    };
    for (int e = 1; e <= n_; ++e) {
      int ra = find(locate(e, End::a).first);
      int rb = find(locate(e, End::b).first);
      if (ra != rb) parent[static_cast<std::size_t>(ra)] = rb;
    }
    int root = find(0);
    for (std::size_t i = 1; i < v; ++i)
      if (find(static_cast<int>(i)) != root) return false;
    return true;
  }

  Bouquet to_bouquet() const {
    if (verts_.size() != 1)
      throw Error(errc::internal_error, "to_bouquet on a graph with more than one vertex");
    std::vector<HalfEdgeLabel> labels;
    labels.reserve(verts_[0].size());
    for (const auto& o : verts_[0]) labels.push_back({o.edge, o.end, o.sign});
    return Bouquet(SignedRotation::from_labels(labels));
  }

  friend bool operator==(const RibbonGraph& x, const RibbonGraph& y) {
    return x.verts_ == y.verts_;
  }

 private:
  void index() {
    loc_.assign(static_cast<std::size_t>(n_), {{{-1, -1}, {-1, -1}}});
    for (std::size_t v = 0; v < verts_.size(); ++v)
      for (std::size_t p = 0; p < verts_[v].size(); ++p) {
        const auto& o = verts_[v][p];
        loc_[static_cast<std::size_t>(o.edge - 1)][static_cast<std::size_t>(o.end)] = {
            static_cast<int>(v), static_cast<int>(p)};
      }
  }

  void check_edge(int edge) const {
    if (edge < 1 || edge > n_)
      throw Error(errc::edge_not_present,
                  "edge " + std::to_string(edge) + " not present (n = " + std::to_string(n_) + ")");
  }

  std::vector<std::vector<Occurrence>> verts_;
  std::vector<std::array<std::pair<int, int>, 2>> loc_;
  std::vector<int> original_;
  int n_ = 0;
};

// Orientable iff vertex flips can make every edge-sign product positive:
// loops must already be positive (flips preserve their product), and the
// non-loop constraints must admit a consistent 2-colouring.
inline bool is_orientable(const RibbonGraph& g) {
  for (int e = 1; e <= g.n(); ++e)
    if (g.is_loop(e) && g.edge_sign_product(e) < 0) return false;
  int v = g.vertex_count();
  std::vector<int> colour(static_cast<std::size_t>(v), -1);
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(v));
  for (int e = 1; e <= g.n(); ++e) {
    if (g.is_loop(e)) continue;
    int a = g.locate(e, End::a).first;
    int b = g.locate(e, End::b).first;
    int parity = g.edge_sign_product(e) < 0 ? 1 : 0;
    adj[static_cast<std::size_t>(a)].push_back({b, parity});
    adj[static_cast<std::size_t>(b)].push_back({a, parity});
  }
  std::vector<int> stack;
  for (int s = 0; s < v; ++s) {
    if (colour[static_cast<std::size_t>(s)] != -1) continue;
    colour[static_cast<std::size_t>(s)] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [w, parity] : adj[static_cast<std::size_t>(u)]) {
        int want = colour[static_cast<std::size_t>(u)] ^ parity;
        if (colour[static_cast<std::size_t>(w)] == -1) {
          colour[static_cast<std::size_t>(w)] = want;
          stack.push_back(w);
        } else if (colour[static_cast<std::size_t>(w)] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace quasitree
