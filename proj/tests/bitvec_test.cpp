#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "syndsl/bitvec.hpp"

using namespace syndsl;

namespace {

// Independent oracle: plain integer arithmetic on uint64, valid for the
// widths these tests use.
std::uint64_t pow2(unsigned n) { return std::uint64_t{1} << n; }

}  // namespace

TEST_CASE("construction holds width and value") {
  BitVector v(8, 0x2A);
  CHECK(v.width() == 8);
  CHECK(v.value_u64() == 0x2A);
  BitVector one(1, 1);
  CHECK(one.width() == 1);
  CHECK(one.value_u64() == 1);
}

TEST_CASE("construction boundary errors") {
  CHECK_THROWS_AS(BitVector(8, 256), DslError);
  CHECK_THROWS_AS(BitVector(0, 0), DslError);
  try {
    BitVector(8, 256);
  } catch (const DslError& e) {
    CHECK(e.code() == Err::ValueOverflow);
  }
  try {
    BitVector(0, 0);
  } catch (const DslError& e) {
    CHECK(e.code() == Err::WidthZero);
  }
  CHECK_THROWS_AS(BitVector(129, 0), DslError);
}

TEST_CASE("add widens and never truncates") {
  CHECK(bv_add(BitVector(3, 7), BitVector(3, 1)) == BitVector(4, 8));
  CHECK(bv_add(BitVector(8, 0), BitVector(8, 0)) == BitVector(9, 0));
  CHECK(bv_add(BitVector(1, 1), BitVector(1, 1)) == BitVector(2, 2));
  CHECK_THROWS_AS(bv_add(BitVector(3, 1), BitVector(4, 1)), DslError);
}

TEST_CASE("add exhaustive against integer oracle, widths 1..4") {
  for (unsigned w = 1; w <= 4; ++w)
    for (std::uint64_t a = 0; a < pow2(w); ++a)
      for (std::uint64_t b = 0; b < pow2(w); ++b) {
        BitVector r = bv_add(BitVector(w, a), BitVector(w, b));
        CHECK(r.width() == w + 1);
        CHECK(r.value_u64() == a + b);
      }
}

TEST_CASE("accumulator wraparound law: slice(0,n,add(a,b)) == (a+b) mod 2^n") {
  for (unsigned w = 1; w <= 4; ++w)
    for (std::uint64_t a = 0; a < pow2(w); ++a)
      for (std::uint64_t b = 0; b < pow2(w); ++b) {
        BitVector r = bv_slice(0, w, bv_add(BitVector(w, a), BitVector(w, b)));
        CHECK(r.value_u64() == (a + b) % pow2(w));
      }
}

TEST_CASE("concat places the first operand in the high bits") {
  CHECK(bv_concat(BitVector(4, 0xA), BitVector(4, 0x5)) == BitVector(8, 0xA5));
  CHECK(bv_concat(BitVector(1, 0), BitVector(1, 0)) == BitVector(2, 0));
  CHECK(bv_concat(BitVector(2, 3), BitVector(3, 0)) == BitVector(5, 24));
}

TEST_CASE("concat associates up to value") {
  const BitVector a(3, 5), b(2, 2), c(4, 9);
  BitVector l = bv_concat(bv_concat(a, b), c);
  BitVector r = bv_concat(a, bv_concat(b, c));
  CHECK(l == r);
  CHECK(l.width() == 9);
}

TEST_CASE("slice extracts [upper-1 .. lower]") {
  CHECK(bv_slice(0, 8, BitVector(9, 0x100)) == BitVector(8, 0x00));
  CHECK(bv_slice(4, 8, BitVector(8, 0xA5)) == BitVector(4, 0xA));
  // Full-width slice is the identity.
  for (std::uint64_t v = 0; v < 32; ++v)
    CHECK(bv_slice(0, 5, BitVector(5, v)) == BitVector(5, v));
}

TEST_CASE("slice bound errors") {
  CHECK_THROWS_AS(bv_slice(0, 9, BitVector(8, 0)), DslError);
  CHECK_THROWS_AS(bv_slice(5, 4, BitVector(8, 0)), DslError);
  try {
    bv_slice(3, 3, BitVector(8, 0));
    FAIL("empty slice accepted");
  } catch (const DslError& e) {
    CHECK(e.code() == Err::WidthZero);
  }
}

TEST_CASE("eq over 5-bit pairs, brute force") {
  CHECK(bv_eq(BitVector(5, 7), BitVector(5, 7)) == BitVector(1, 1));
  CHECK(bv_eq(BitVector(5, 7), BitVector(5, 6)) == BitVector(1, 0));
  CHECK(bv_eq(BitVector(5, 0), BitVector(5, 31)) == BitVector(1, 0));
  for (std::uint64_t a = 0; a < 32; ++a)
    for (std::uint64_t b = 0; b < 32; ++b)
      CHECK(bv_eq(BitVector(5, a), BitVector(5, b)).value_u64() ==
            (a == b ? 1u : 0u));
}

TEST_CASE("mux21 selects the first operand when sel is 1") {
  BitVector x(32, 0xDEADBEEF), y(32, 0x12345678);
  CHECK(bv_mux21(BitVector(1, 1), x, y) == x);
  CHECK(bv_mux21(BitVector(1, 0), x, y) == y);
  CHECK_THROWS_AS(bv_mux21(BitVector(1, 1), BitVector(8, 5), BitVector(4, 5)),
                  DslError);
  CHECK_THROWS_AS(bv_mux21(BitVector(2, 1), x, y), DslError);
}

TEST_CASE("logic ops") {
  CHECK(bv_logic(LogicKind::Or, BitVector(1, 1), BitVector(1, 0)) ==
        BitVector(1, 1));
  for (std::uint64_t v = 0; v < 256; ++v)
    CHECK(bv_logic(LogicKind::Xor, BitVector(8, v), BitVector(8, v)) ==
          BitVector(8, 0));
  CHECK(bv_logic(LogicKind::Not, BitVector(4, 0x5)) == BitVector(4, 0xA));
  // Complement oracle at width 6.
  for (std::uint64_t v = 0; v < 64; ++v)
    CHECK(bv_logic(LogicKind::Not, BitVector(6, v)).value_u64() == (~v & 63));
  CHECK(bv_logic(LogicKind::And, BitVector(4, 0xC), BitVector(4, 0xA)) ==
        BitVector(4, 0x8));
}

TEST_CASE("logic arity errors") {
  CHECK_THROWS_AS(bv_logic(LogicKind::Not, BitVector(4, 1), BitVector(4, 1)),
                  DslError);
  CHECK_THROWS_AS(bv_logic(LogicKind::Or, BitVector(4, 1)), DslError);
  CHECK_THROWS_AS(bv_logic(LogicKind::And, BitVector(4, 1), BitVector(5, 1)),
                  DslError);
}

TEST_CASE("results always satisfy the representation invariant") {
  for (unsigned w = 1; w <= 4; ++w)
    for (std::uint64_t a = 0; a < pow2(w); ++a)
      for (std::uint64_t b = 0; b < pow2(w); ++b) {
        for (BitVector r : {bv_add(BitVector(w, a), BitVector(w, b)),
                            bv_concat(BitVector(w, a), BitVector(w, b)),
                            bv_eq(BitVector(w, a), BitVector(w, b)),
                            bv_logic(LogicKind::Xor, BitVector(w, a),
                                     BitVector(w, b))}) {
          REQUIRE(r.width() >= 1);
          CHECK(r.value() < (u128{1} << r.width()));
        }
      }
}

TEST_CASE("wide values are exact up to 128 bits") {
  BitVector a(64, ~std::uint64_t{0});
  BitVector c = bv_concat(a, a);
  CHECK(c.width() == 128);
  CHECK(c.to_hex() == "0xffffffffffffffffffffffffffffffff");
  BitVector s = bv_slice(64, 128, c);
  CHECK(s == a);
  CHECK_THROWS_AS(bv_concat(c, BitVector(1, 0)), DslError);
}

TEST_CASE("hex formatting and parsing") {
  CHECK(BitVector(8, 0x2A).to_hex() == "0x2a");
  CHECK(BitVector(8, 0).to_hex() == "0x00");
  CHECK(BitVector(8, 0).to_hex_minimal() == "0x0");
  CHECK(BitVector(1, 1).to_hex() == "0x1");
  CHECK(BitVector(12, 0xABC).to_hex() == "0xabc");

  auto p = bv_parse_hex("0x2a", 8);
  REQUIRE(p.has_value());
  CHECK(*p == BitVector(8, 0x2A));
  CHECK(bv_parse_hex("0x1ff", 8) == std::nullopt);
  CHECK(bv_parse_hex("0xg", 8) == std::nullopt);
  CHECK(bv_parse_hex("12", 8) == std::nullopt);
  CHECK(bv_parse_hex("0x", 8) == std::nullopt);
  // Round-trip at random-ish values.
  for (std::uint64_t v : {0ull, 1ull, 255ull, 0xabull}) {
    auto q = bv_parse_hex(BitVector(8, v).to_hex(), 8);
    REQUIRE(q.has_value());
    CHECK(q->value_u64() == v);
  }
}
