#include "doctest.h"

#include <algorithm>

#include "support.hpp"
#include "torus/errors.hpp"

using namespace torus;
using namespace testing_support;

TEST_CASE("basic expressions") {
  const auto F = Field::make(4);
  const MultiPoly x = var(F, Var::X), y = var(F, Var::Y), z = var(F, Var::Z);
  CHECK(parse("x*y^2 + (1/4)*x*z", F) == x * y * y + Scalar(Rational(1, 4)) * x * z);
  CHECK(parse("-x", F) == -x);
  CHECK(parse("- - x", F) == x);
  CHECK(parse("2*(x - y)^2", F) == Scalar(2) * (x - y) * (x - y));
  CHECK(parse("  3  ", F) == cst(F, Scalar(3)));
  CHECK(parse("0", F).is_zero());
  CHECK(parse("-2^2", F) == cst(F, Scalar(-4)));
}

TEST_CASE("the symbol a is sqrt(m)") {
  const auto F = Field::make(3);
  CHECK(parse("a", F) == cst(F, Scalar::root()));
  CHECK(parse("a^2", F) == cst(F, Scalar(3)));
  CHECK(parse("a^3*x", F) == Scalar(Rational(0), Rational(3)) * var(F, Var::X));
  CHECK(parse("a^4 - 1", F) == cst(F, Scalar(8)));
}

TEST_CASE("the torus companion polynomial parses as expected") {
  const auto F = Field::make(4);
  const MultiPoly R = parse(kExampleR, F);
  CHECK(R == parse("-2*x^2 - 2*y^2 + (1/2)*z^2 + 15/2", F));
  CHECK(R == Scalar(Rational(1, 2)) * torus_companion(F));
}

TEST_CASE("syntax errors report the offset and the expected tokens") {
  const auto F = Field::make(4);
  try {
    parse("x + * y", F);
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 4);
    const auto& exp = e.expected();
    CHECK(std::find(exp.begin(), exp.end(), "'x'") != exp.end());
  }
  auto offset_of = [&](const char* text) -> long {
    try {
      parse(text, F);
    } catch (const SyntaxError& e) {
      return static_cast<long>(e.offset());
    }
    return -1;
  };
  CHECK(offset_of("") == 0);
  CHECK(offset_of("(x + y") == 6);
  CHECK(offset_of("x y") == 2);
  CHECK(offset_of("x^") == 2);
  CHECK(offset_of("x^-1") == 2);
  CHECK(offset_of("w") == 0);
  CHECK(offset_of("1/0") == 2);
  CHECK(offset_of("x)") == 1);
}

TEST_CASE("exponents above the cap overflow") {
  const auto F = Field::make(4);
  CHECK_NOTHROW(parse("x^64", F));
  CHECK_THROWS_AS(parse("x^65", F), OverflowError);
  CHECK_THROWS_AS(parse("y^99999999999999999999", F), OverflowError);
}

TEST_CASE("serialization format") {
  const auto F = Field::make(2);
  CHECK(serialize(MultiPoly(F)) == "0");
  CHECK(serialize(parse("x*z*(1/4)", F)) == "(1/4)*x*z");
  CHECK(serialize(parse("1/4", F)) == "1/4");
  CHECK(serialize(parse("z + x*y^2 - 3*x", F)) == "x*y^2 - 3*x + z");
  CHECK(serialize(parse("a*x", F)) == "a*x");
  CHECK(serialize(parse("(1 - 2*a)*y", F)) == "(1 - 2*a)*y");
  CHECK(serialize(parse("-x + 1", F)) == "-x + 1");
}

TEST_CASE("random polynomials round-trip through text") {
  Rng rng(2024);
  for (const Rational& m : {Rational(4), Rational(2), Rational(9, 4), Rational(7, 3)}) {
    const auto F = Field::make(m);
    for (int trial = 0; trial < 250; ++trial) {
      const MultiPoly p = rand_poly(F, rng, 5, static_cast<int>(rand_int(rng, 0, 7)));
      const std::string text = serialize(p);
      const MultiPoly back = parse(text, F);
      CHECK_MESSAGE(back == p, text);
      CHECK(serialize(back) == text);
    }
  }
}
