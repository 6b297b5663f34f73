#include <catch2/catch_amalgamated.hpp>

#include "quasitree/quasi_tree.hpp"
#include "quasitree/random_gen.hpp"
#include "quasitree/topology.hpp"
#include "test_fixtures.hpp"

using namespace quasitree;

TEST_CASE("example report across all methods", "[quasitree]") {
  Bouquet b = fixtures::example1();
  for (Method method : {Method::gf2, Method::integer, Method::symbolic}) {
    QuasiTreeReport rep = quasi_tree_polynomial(b, method);
    INFO("method " << method_name(method));
    CHECK(rep.tau == 20);
    CHECK(rep.feasible == fixtures::example1_feasible());
    CHECK(rep.tau == static_cast<long long>(rep.mod2_poly.term_count()));
    for (EdgeSubset x : rep.feasible) CHECK(rep.mod2_poly.coefficient(x) == 1);
  }
}

TEST_CASE("example pre-mod-2 coefficients", "[quasitree]") {
  QuasiTreeReport rep = quasi_tree_polynomial(fixtures::example1(), Method::integer);
  REQUIRE(rep.integer_poly.has_value());
  auto expected = fixtures::example1_integer_coefficients();
  CHECK(rep.integer_poly->term_count() == expected.size());
  for (const auto& [mask, c] : expected)
    CHECK(rep.integer_poly->coefficient(EdgeSubset(mask)) == c);
  // the symbolic route computes the same pre-mod-2 polynomial
  QuasiTreeReport sym = quasi_tree_polynomial(fixtures::example1(), Method::symbolic);
  REQUIRE(sym.integer_poly.has_value());
  CHECK(*sym.integer_poly == *rep.integer_poly);
}

TEST_CASE("empty bouquet", "[quasitree]") {
  Bouquet empty;
  for (Method method : {Method::gf2, Method::integer, Method::symbolic, Method::oracle}) {
    QuasiTreeReport rep = quasi_tree_polynomial(empty, method);
    CHECK(rep.tau == 1);
    CHECK(rep.feasible == std::vector<EdgeSubset>{EdgeSubset{}});
    CHECK(rep.mod2_poly.coefficient(EdgeSubset{}) == 1);
  }
}

TEST_CASE("tau of the smallest bouquets", "[quasitree]") {
  CHECK(tau(fixtures::example1()) == 20);
  CHECK(tau(parse_bouquet("[-1a,1b]")) == 2);
  CHECK(tau(parse_bouquet("[1a,1b]")) == 1);
  CHECK(tau(parse_bouquet("[1a,2a,1b,2b]")) == 2);
  IntegerSkewMatrix digon = unsymbolic(symbolic_skew_adjacency(parse_bouquet("[1a,2a,1b,2b]")));
  CHECK(det_int_plus_identity(digon) == 2);
}

TEST_CASE("enumeration cap is enforced and forceable", "[quasitree]") {
  Rng rng(1);
  Bouquet b = random_bouquet(rng, 5, 0.5);
  EnumerationOptions opts;
  opts.cap = 3;
  CHECK_THROWS_AS(quasi_tree_polynomial(b, Method::gf2, opts), Error);
  try {
    quasi_tree_polynomial(b, Method::gf2, opts);
  } catch (const Error& e) {
    CHECK(e.code() == errc::size_cap_exceeded);
  }
  opts.force = true;
  CHECK(quasi_tree_polynomial(b, Method::gf2, opts).n == 5);
}

TEST_CASE("methods agree on random bouquets", "[quasitree][property]") {
  Rng rng(2718);
  for (int trial = 0; trial < 25; ++trial) {
    Bouquet b = random_bouquet(rng, rng.range(0, 7), 0.5);
    QuasiTreeReport gf2 = quasi_tree_polynomial(b, Method::gf2);
    QuasiTreeReport integer = quasi_tree_polynomial(b, Method::integer);
    QuasiTreeReport symbolic = quasi_tree_polynomial(b, Method::symbolic);
    CHECK(gf2.feasible == integer.feasible);
    CHECK(gf2.feasible == symbolic.feasible);
    CHECK(gf2.mod2_poly == integer.mod2_poly);
    CHECK(gf2.mod2_poly == symbolic.mod2_poly);
    CHECK(*integer.integer_poly == *symbolic.integer_poly);
    CHECK(gf2.tau == integer.tau);
    CHECK(gf2.tau == symbolic.tau);
  }
}

TEST_CASE("determinant route equals the boundary oracle", "[quasitree][property]") {
  Rng rng(3141);
  for (int trial = 0; trial < 40; ++trial) {
    Bouquet b = random_bouquet(rng, rng.range(0, 10), 0.5);
    QuasiTreeReport rep = quasi_tree_polynomial(b, Method::gf2);
    CHECK(rep.feasible == enumerate_quasi_trees_oracle(b));
  }
}

TEST_CASE("parallel sweep matches the serial one", "[quasitree]") {
  Rng rng(64);
  Bouquet b = random_bouquet(rng, 12, 0.5);
  EnumerationOptions serial;
  EnumerationOptions parallel;
  parallel.threads = 4;
  CHECK(quasi_tree_polynomial(b, Method::gf2, serial).feasible ==
        quasi_tree_polynomial(b, Method::gf2, parallel).feasible);
  CHECK(*quasi_tree_polynomial(b, Method::integer, serial).integer_poly ==
        *quasi_tree_polynomial(b, Method::integer, parallel).integer_poly);
}

TEST_CASE("orientable bouquets count by determinant alone", "[quasitree][property]") {
  Rng rng(9000);
  for (int trial = 0; trial < 30; ++trial) {
    Bouquet b = random_bouquet(rng, rng.range(0, 9), 0.0);
    REQUIRE(is_orientable(b));
    IntegerSkewMatrix a = unsymbolic(symbolic_skew_adjacency(b));
    QuasiTreeReport rep = quasi_tree_polynomial(b, Method::integer);
    CHECK(det_int_plus_identity(a) == static_cast<int128>(rep.tau));
    for (const auto& [x, c] : rep.integer_poly->terms()) CHECK(c == 1);
  }
}

TEST_CASE("mod-2 polynomial is invariant under re-encodings", "[quasitree][property]") {
  Rng rng(515);
  for (int trial = 0; trial < 20; ++trial) {
    int n = rng.range(1, 7);
    Bouquet b = random_bouquet(rng, n, 0.5);
    QuasiTreeReport base = quasi_tree_polynomial(b, Method::integer);
    SignedRotation variants[3] = {b.rotation().rotated(rng.range(0, 2 * n - 1)),
                                  b.rotation().reversed(),
                                  b.rotation().with_ab_swapped(rng.range(1, n))};
    for (const auto& rot : variants) {
      QuasiTreeReport other = quasi_tree_polynomial(Bouquet(rot), Method::integer);
      CHECK(other.mod2_poly == base.mod2_poly);
      CHECK(*other.integer_poly == *base.integer_poly);  // pre-mod-2, recorded empirically
    }
  }
}

TEST_CASE("partial-dual pipeline with the empty quasi-tree is a passthrough", "[quasitree]") {
  RibbonGraph g = RibbonGraph::from_bouquet(fixtures::example1());
  PartialDualReport rep =
      quasi_trees_via_partial_dual(g, EdgeSubset{}, Method::integer);
  QuasiTreeReport direct = quasi_tree_polynomial(fixtures::example1(), Method::integer);
  CHECK(rep.quasi_tree_used == EdgeSubset{});
  CHECK(rep.tau == direct.tau);
  CHECK(rep.feasible == direct.feasible);
  CHECK(rep.bouquet_report.feasible == direct.feasible);
  CHECK(*rep.bouquet_report.integer_poly == *direct.integer_poly);
}

TEST_CASE("partial-dual pipeline over a nonempty quasi-tree", "[quasitree]") {
  RibbonGraph g = RibbonGraph::from_bouquet(fixtures::example1());
  PartialDualReport rep = quasi_trees_via_partial_dual(g, EdgeSubset::of({1}));
  CHECK(rep.tau == 20);
  CHECK(rep.feasible == fixtures::example1_feasible());
}

TEST_CASE("digon annulus has two spanning quasi-trees", "[quasitree]") {
  RibbonGraph g = RibbonGraph::from_vertices({{{1, End::a, 1}, {2, End::a, 1}},
                                              {{1, End::b, 1}, {2, End::b, 1}}});
  CHECK(enumerate_quasi_trees_oracle(g) ==
        std::vector<EdgeSubset>{EdgeSubset::of({1}), EdgeSubset::of({2})});
  PartialDualReport rep = quasi_trees_via_partial_dual(g, EdgeSubset::of({1}));
  CHECK(rep.tau == 2);
  CHECK(rep.feasible == enumerate_quasi_trees_oracle(g));
}

TEST_CASE("pipeline errors", "[quasitree]") {
  RibbonGraph disconnected = RibbonGraph::from_vertices({{}, {}});
  CHECK_THROWS_AS(quasi_trees_via_partial_dual(disconnected), Error);
  try {
    quasi_trees_via_partial_dual(disconnected);
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_connected);
  }
  RibbonGraph digon = RibbonGraph::from_vertices({{{1, End::a, 1}, {2, End::a, 1}},
                                                  {{1, End::b, 1}, {2, End::b, 1}}});
  try {
    quasi_trees_via_partial_dual(digon, EdgeSubset::of({1, 2}));
    FAIL("expected a quasi-tree rejection");
  } catch (const NotAQuasiTreeError& e) {
    CHECK(e.boundary_components() == 2);
  }
}

TEST_CASE("tau does not depend on the chosen quasi-tree", "[quasitree][property]") {
  Rng rng(616);
  for (int trial = 0; trial < 10; ++trial) {
    RibbonGraph g = random_connected_ribbon_graph(rng, rng.range(1, 3), rng.range(1, 5), 0.3);
    auto family = enumerate_quasi_trees_oracle(g);
    REQUIRE(!family.empty());
    for (const EdgeSubset& t : family) {
      PartialDualReport rep = quasi_trees_via_partial_dual(g, t);
      CHECK(rep.tau == static_cast<long long>(family.size()));
      CHECK(rep.feasible == family);
    }
  }
}
