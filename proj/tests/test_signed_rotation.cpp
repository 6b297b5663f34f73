#include <catch2/catch_amalgamated.hpp>

#include "quasitree/random_gen.hpp"
#include "quasitree/signed_rotation.hpp"
#include "test_fixtures.hpp"

using namespace quasitree;

TEST_CASE("parses the example rotation", "[rotation]") {
  SignedRotation rot = parse_signed_rotation(fixtures::example1_rotation);
  REQUIRE(rot.n() == 5);
  CHECK(rot.sequence().size() == 10);
  CHECK(rot.sign_of(1, End::a) == -1);
  CHECK(rot.sign_of(1, End::b) == 1);
  CHECK(rot.sign_of(4, End::a) == -1);
  CHECK(rot.sign_of(5, End::a) == -1);
  CHECK(rot.to_string() == "[-1a, 2a, 3a, 1b, 2b, -4a, 3b, -5a, 4b, 5b]");
  CHECK_FALSE(rot.relabelled());
}

TEST_CASE("accepts caption-style tokens and unicode minus", "[rotation]") {
  SignedRotation rot = parse_signed_rotation("[-1^a, 2^a, 3^a, 1^b, 2^b, -4^a, 3^b, -5^a, 4^b, 5^b]");
  CHECK(rot == parse_signed_rotation(fixtures::example1_rotation));
  SignedRotation minus = parse_signed_rotation("\xe2\x88\x92" "1a, 1b");
  CHECK(minus.sign_of(1, End::a) == -1);
}

TEST_CASE("smallest inputs", "[rotation]") {
  CHECK(parse_signed_rotation("[1a, 1b]").n() == 1);
  CHECK(parse_signed_rotation("").n() == 0);
  CHECK(parse_signed_rotation("[]").n() == 0);
  CHECK(parse_signed_rotation("1a 1b").n() == 1);  // whitespace separated, unbracketed
}

TEST_CASE("validation failures carry the right class and offset", "[rotation]") {
  auto code_of = [](const char* text) {
    try {
      parse_signed_rotation(text);
    } catch (const ParseError& e) {
      return e.code();
    }
    return errc::internal_error;
  };
  CHECK(code_of("[1a, 2a, 1b]") == errc::missing_end);
  CHECK(code_of("[1a, 1a, 1b]") == errc::duplicate_end);
  CHECK(code_of("[1a, 2x, 1b]") == errc::malformed_token);
  CHECK(code_of("[0a, 0b]") == errc::malformed_token);
  CHECK(code_of("[1a, 1b") == errc::malformed_token);
  CHECK(code_of("[1a, 1b] junk") == errc::malformed_token);
  try {
    parse_signed_rotation("[1a, 2x, 1b]");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 6);  // caret lands on the bad end marker
  }
}

TEST_CASE("non-contiguous indices are relabelled canonically", "[rotation]") {
  SignedRotation rot = parse_signed_rotation("[7a, 3a, 7b, 3b]");
  REQUIRE(rot.n() == 2);
  CHECK(rot.relabelled());
  CHECK(rot.original_labels() == std::vector<int>{3, 7});
  CHECK(rot.to_string() == "[2a, 1a, 2b, 1b]");
}

TEST_CASE("loop orientability matches the caption signs", "[rotation]") {
  Bouquet b = fixtures::example1();
  CHECK(loop_orientability(b, 1) == LoopType::non_orientable);
  CHECK(loop_orientability(b, 2) == LoopType::orientable);
  CHECK(loop_orientability(b, 3) == LoopType::orientable);
  CHECK(loop_orientability(b, 4) == LoopType::non_orientable);
  CHECK(loop_orientability(b, 5) == LoopType::non_orientable);
  CHECK(loop_orientability(parse_bouquet("[1a,1b]"), 1) == LoopType::orientable);
  CHECK_THROWS_AS(loop_orientability(b, 6), Error);
  CHECK_THROWS_AS(loop_orientability(b, 0), Error);
}

TEST_CASE("interlacement of the example pairs", "[rotation]") {
  Bouquet b = fixtures::example1();
  CHECK(interlacement(b, 1, 2) == Interlacement::aligned);
  CHECK(interlacement(b, 1, 3) == Interlacement::aligned);
  CHECK(interlacement(b, 1, 4) == Interlacement::non_interlaced);
  CHECK(interlacement(b, 1, 5) == Interlacement::non_interlaced);
  CHECK(interlacement(b, 2, 3) == Interlacement::aligned);
  CHECK(interlacement(b, 2, 4) == Interlacement::non_interlaced);
  CHECK(interlacement(b, 3, 4) == Interlacement::aligned);
  CHECK(interlacement(b, 4, 5) == Interlacement::aligned);
  CHECK(interlacement(parse_bouquet("[1a,2a,1b,2b]"), 1, 2) == Interlacement::aligned);
  CHECK(interlacement(parse_bouquet("[1a,2b,1b,2a]"), 1, 2) == Interlacement::reversed);
  CHECK_THROWS_AS(interlacement(b, 2, 2), Error);
  CHECK_THROWS_AS(interlacement(b, 3, 2), Error);
}

TEST_CASE("restriction keeps order and signs", "[rotation]") {
  Bouquet b = fixtures::example1();
  Bouquet sub = restrict_to(b, EdgeSubset::of({4, 5}));
  CHECK(sub.rotation().to_string() == "[-1a, -2a, 1b, 2b]");
  CHECK(sub.rotation().original_labels() == std::vector<int>{4, 5});
  CHECK(restrict_to(b, EdgeSubset::full(5)).rotation().to_string() == b.rotation().to_string());
  CHECK(restrict_to(b, EdgeSubset{}).n() == 0);
}

TEST_CASE("restriction commutes with loop orientability", "[rotation][property]") {
  Rng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    int n = rng.range(1, 8);
    Bouquet b = random_bouquet(rng, n, 0.5);
    EdgeSubset x = random_subset(rng, n);
    Bouquet sub = restrict_to(b, x);
    auto kept = x.elements();
    for (std::size_t k = 0; k < kept.size(); ++k)
      CHECK(loop_orientability(sub, static_cast<int>(k) + 1) ==
            loop_orientability(b, kept[k]));
  }
}

TEST_CASE("bouquet orientability is the absence of non-orientable loops", "[rotation][property]") {
  CHECK_FALSE(is_orientable(fixtures::example1()));
  CHECK(is_orientable(parse_bouquet("[1a,2a,1b,2b]")));
  CHECK_FALSE(is_orientable(parse_bouquet("[-1a,1b]")));
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    Bouquet b = random_bouquet(rng, rng.range(0, 7), 0.3);
    bool any = false;
    for (int i = 1; i <= b.n(); ++i)
      any |= loop_orientability(b, i) == LoopType::non_orientable;
    CHECK(is_orientable(b) == !any);
  }
}

TEST_CASE("serialisation round-trips", "[rotation][property]") {
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    Bouquet b = random_bouquet(rng, rng.range(0, 9), 0.5);
    SignedRotation again = parse_signed_rotation(b.rotation().to_string());
    CHECK(again == b.rotation());
    CHECK(again.to_string() == b.rotation().to_string());
  }
}
