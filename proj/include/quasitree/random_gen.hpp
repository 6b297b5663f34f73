#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "quasitree/edge_subset.hpp"
#include "quasitree/ribbon_graph.hpp"
#include "quasitree/signed_rotation.hpp"

namespace quasitree {

// Deterministic across platforms: mt19937_64's output sequence is fixed by
// the standard, and the bounded samplers below avoid the
// implementation-defined distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, bound), unbiased via rejection.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = gen_();
      if (r >= threshold) return r % bound;
    }
  }

  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool chance(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return gen_() < static_cast<std::uint64_t>(p * 18446744073709551616.0);
  }

 private:
  std::mt19937_64 gen_;
};

// splitmix64 step; used to derive independent per-instance seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + index * 0x9e3779b97f4a7c15ULL + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniformly random permutation of the 2n half-edge labels; each loop is
// non-orientable (opposite end signs) with probability p.
inline SignedRotation random_signed_rotation(Rng& rng, int n, double p_nonorientable) {
  std::vector<HalfEdgeLabel> labels;
  labels.reserve(static_cast<std::size_t>(2 * n));
  for (int i = 1; i <= n; ++i) {
    labels.push_back({i, End::a, 1});
    labels.push_back({i, End::b, 1});
  }
  for (std::size_t k = labels.size(); k > 1; --k)
    std::swap(labels[k - 1], labels[rng.below(k)]);
  for (int i = 1; i <= n; ++i) {
    bool opposite = rng.chance(p_nonorientable);
    int first = rng.chance(0.5) ? 1 : -1;
    int second = opposite ? -first : first;
    for (auto& l : labels) {
      if (l.edge != i) continue;
      l.sign = l.end == End::a ? first : second;
    }
  }
  return SignedRotation::from_labels(labels);
}

inline Bouquet random_bouquet(Rng& rng, int n, double p_nonorientable) {
  return Bouquet(random_signed_rotation(rng, n, p_nonorientable));
}

inline EdgeSubset random_subset(Rng& rng, int n) {
  if (n == 0) return EdgeSubset{};
  return EdgeSubset(rng.below(std::uint64_t{1} << n));
}

// Random connected multi-vertex ribbon graph: each edge end lands on a random
// vertex at a random position; resamples until connected. The vertex count is
// clamped to edges + 1, below which connectivity is impossible.
inline RibbonGraph random_connected_ribbon_graph(Rng& rng, int vertices, int edges,
                                                 double p_negative) {
  if (vertices > edges + 1) vertices = edges + 1;
  for (;;) {
    std::vector<std::vector<Occurrence>> verts(static_cast<std::size_t>(vertices));
    for (int e = 1; e <= edges; ++e) {
      for (End end : {End::a, End::b}) {
        auto& vert = verts[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(vertices)))];
        int sign = rng.chance(p_negative) ? -1 : 1;
        std::size_t pos = static_cast<std::size_t>(rng.below(vert.size() + 1));
        vert.insert(vert.begin() + static_cast<std::ptrdiff_t>(pos), Occurrence{e, end, sign});
      }
    }
    RibbonGraph g = RibbonGraph::from_vertices(std::move(verts));
    if (g.connected()) return g;
  }
}

}  // namespace quasitree
