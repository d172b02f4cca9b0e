#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "nmqc/boolfn.hpp"
#include "nmqc/rng.hpp"
#include "test_util.hpp"

using namespace nmqc;
using boolfn::AnfPolynomial;
using boolfn::BooleanFunction;

namespace {

std::vector<std::uint8_t> tuple(std::initializer_list<int> bits) {
  std::vector<std::uint8_t> out;
  for (int b : bits) out.push_back(static_cast<std::uint8_t>(b));
  return out;
}

}  // namespace

TEST_CASE("eval reads the truth table through the packing convention") {
  const auto or3 = boolfn::builtin("or3");
  CHECK(or3.eval(tuple({0, 0, 0})) == 0);
  CHECK(or3.eval(tuple({1, 0, 0})) == 1);
  CHECK(or3.eval(tuple({0, 1, 0})) == 1);
  CHECK(or3.eval(tuple({0, 0, 1})) == 1);

  const BooleanFunction zero(3, std::vector<std::uint8_t>(8, 0));
  for (std::uint32_t x = 0; x < 8; ++x) CHECK(zero.eval_index(x) == 0);

  CHECK_THROWS_AS(or3.eval(tuple({0, 1})), std::invalid_argument);
}

TEST_CASE("construction validates table shape and contents") {
  CHECK_THROWS_AS(BooleanFunction(3, std::vector<std::uint8_t>(4, 0)), std::invalid_argument);
  CHECK_THROWS_AS(BooleanFunction(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(BooleanFunction(1, {0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(BooleanFunction(17, std::vector<std::uint8_t>(1u << 17, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(BooleanFunction::from_table_string(2, "01x1"), std::invalid_argument);
}

TEST_CASE("to_anf matches the hand-expanded polynomials") {
  SUBCASE("or3") {
    const auto p = boolfn::to_anf(boolfn::builtin("or3"));
    // x1x2x3 ⊕ x1x2 ⊕ x1x3 ⊕ x2x3 ⊕ x1 ⊕ x2 ⊕ x3
    const std::set<std::uint32_t> expected = {0b111, 0b011, 0b101, 0b110, 0b001, 0b010, 0b100};
    CHECK(p.monomials == expected);
    CHECK(p.degree() == 3);
  }
  SUBCASE("nand2") {
    const auto p = boolfn::to_anf(boolfn::builtin("nand2"));
    CHECK(p.monomials == std::set<std::uint32_t>{0b11, 0});
    CHECK(p.degree() == 2);
  }
  SUBCASE("projection onto x1 is its own ANF") {
    const auto f = BooleanFunction::from_table_string(2, "0101");
    CHECK(boolfn::to_anf(f).monomials == std::set<std::uint32_t>{0b01});
  }
}

TEST_CASE("from_anf reproduces the h3 truth table") {
  AnfPolynomial p{3, {0b011, 0b101, 0b110, 0b001, 0b010, 0b100}};
  const auto f = boolfn::from_anf(p);
  CHECK(f == BooleanFunction::from_table_string(3, "01111110"));
  CHECK(f.eval_index(0) == 0);
  CHECK(f.eval_index(7) == 0);
  for (std::uint32_t x = 1; x < 7; ++x) CHECK(f.eval_index(x) == 1);
}

TEST_CASE("from_anf of the constant monomial is the all-ones table") {
  const auto f = boolfn::from_anf(AnfPolynomial{2, {0}});
  for (std::uint32_t x = 0; x < 4; ++x) CHECK(f.eval_index(x) == 1);
}

TEST_CASE("from_anf rejects out-of-range monomials") {
  CHECK_THROWS_AS(boolfn::from_anf(AnfPolynomial{2, {0b100}}), std::invalid_argument);
}

TEST_CASE("Moebius transform is an involution, exhaustively for n <= 3") {
  for (int n = 1; n <= 3; ++n) {
    const std::uint32_t tables = 1u << (1u << n);
    for (std::uint32_t bits = 0; bits < tables; ++bits) {
      std::vector<std::uint8_t> table(std::size_t{1} << n);
      for (std::size_t i = 0; i < table.size(); ++i) table[i] = (bits >> i) & 1u;
      const BooleanFunction f(n, table);
      CHECK(boolfn::from_anf(boolfn::to_anf(f)) == f);
    }
  }
}

TEST_CASE("Moebius roundtrip holds for 1000 random n = 4 functions") {
  SplitMix64 rng(41);
  for (int i = 0; i < 1000; ++i) {
    const auto f = testutil::random_function(rng, 4);
    const auto p = boolfn::to_anf(f);
    CHECK(boolfn::from_anf(p) == f);
    CHECK(boolfn::to_anf(boolfn::from_anf(p)) == p);
  }
}

TEST_CASE("ANF evaluation agrees with the truth table") {
  SplitMix64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + static_cast<int>(rng.next() % 4);
    const auto f = testutil::random_function(rng, n);
    const auto p = boolfn::to_anf(f);
    for (std::uint32_t x = 0; x < (1u << n); ++x) CHECK(p.eval_index(x) == f.eval_index(x));
  }
}

TEST_CASE("is_linear accepts exactly the affine functions") {
  CHECK_FALSE(boolfn::is_linear(boolfn::builtin("h3")));
  // x1 ⊕ x2 ⊕ 1
  CHECK(boolfn::is_linear(boolfn::from_anf(AnfPolynomial{2, {0b01, 0b10, 0}})));

  SUBCASE("eight of the sixteen 2-bit functions are affine") {
    int affine = 0;
    for (std::uint32_t bits = 0; bits < 16; ++bits) {
      const BooleanFunction f(2, {static_cast<std::uint8_t>(bits & 1),
                                  static_cast<std::uint8_t>((bits >> 1) & 1),
                                  static_cast<std::uint8_t>((bits >> 2) & 1),
                                  static_cast<std::uint8_t>((bits >> 3) & 1)});
      if (boolfn::is_linear(f)) ++affine;
    }
    CHECK(affine == 8);
  }

  SUBCASE("matches the defining identity f(x^y) ^ f(x) ^ f(y) ^ f(0) = 0, exhaustively for n = 3") {
    for (std::uint32_t bits = 0; bits < 256; ++bits) {
      std::vector<std::uint8_t> table(8);
      for (std::size_t i = 0; i < 8; ++i) table[i] = (bits >> i) & 1u;
      const BooleanFunction f(3, table);
      bool additive = true;
      for (std::uint32_t x = 0; x < 8 && additive; ++x)
        for (std::uint32_t y = 0; y < 8 && additive; ++y)
          additive = ((f.eval_index(x ^ y) ^ f.eval_index(x) ^ f.eval_index(y) ^
                       f.eval_index(0)) == 0);
      CHECK(boolfn::is_linear(f) == additive);
    }
  }
}

TEST_CASE("builtin functions carry the published truth tables") {
  CHECK(boolfn::builtin("h3") == BooleanFunction::from_table_string(3, "01111110"));

  const auto nand2 = boolfn::builtin("nand2");
  CHECK(nand2.eval(tuple({1, 1})) == 0);
  CHECK(nand2.eval(tuple({0, 0})) == 1);
  CHECK(nand2.eval(tuple({1, 0})) == 1);
  CHECK(nand2.eval(tuple({0, 1})) == 1);

  const auto f = boolfn::builtin("or3_x1x3");
  const auto or3 = boolfn::builtin("or3");
  for (std::uint32_t x = 0; x < 8; ++x) {
    const std::uint8_t x1 = x & 1u, x3 = (x >> 2) & 1u;
    CHECK(f.eval_index(x) == (or3.eval_index(x) ^ (x1 & x3)));
  }

  CHECK_THROWS_AS(boolfn::builtin("xor17"), std::invalid_argument);
}

TEST_CASE("degree of constants is zero") {
  CHECK(AnfPolynomial{3, {}}.degree() == 0);
  CHECK(AnfPolynomial{3, {0}}.degree() == 0);
  CHECK(boolfn::to_anf(BooleanFunction(2, {1, 1, 1, 1})).degree() == 0);
}

TEST_CASE("ANF display form") {
  CHECK(AnfPolynomial{3, {}}.to_string() == "0");
  CHECK(AnfPolynomial{3, {0}}.to_string() == "1");
  CHECK(AnfPolynomial{3, {0b101, 0b010, 0}}.to_string() == "x1x3 ⊕ x2 ⊕ 1");
}
