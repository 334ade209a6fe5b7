#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "lpa/errors.hpp"
#include "lpa/laurent.hpp"

using namespace lpa;

namespace {
const FieldDescriptor kQ = FieldDescriptor::rationals();
const FieldDescriptor kF2 = FieldDescriptor::prime(2);
const FieldDescriptor kF3 = FieldDescriptor::prime(3);
const FieldDescriptor kF5 = FieldDescriptor::prime(5);

LaurentPoly P(const FieldDescriptor& f, const std::string& s) { return LaurentPoly::parse(f, s); }
}  // namespace

TEST_CASE("laurent parse and print round trip") {
  CHECK(P(kQ, "x^2 - 1").str() == "x^2 - 1");
  CHECK(P(kQ, "2*x^-3 + 1/2").str() == "1/2 + 2*x^-3");
  CHECK(P(kQ, "-x + 3").str() == "-x + 3");
  CHECK(P(kQ, "x^0").str() == "1");
  CHECK(P(kQ, "0").str() == "0");
  CHECK(P(kF5, "7*x").str() == "2*x");
  CHECK_THROWS_AS(P(kQ, "x^"), ParseError);
  CHECK_THROWS_AS(P(kQ, "y + 1"), ParseError);
  CHECK_THROWS_AS(P(kQ, "1/0"), ValidationError);
}

TEST_CASE("laurent arithmetic") {
  CHECK(P(kQ, "x + 1") * P(kQ, "x - 1") == P(kQ, "x^2 - 1"));
  CHECK(P(kQ, "x^-1") * P(kQ, "x") == LaurentPoly::one(kQ));
  CHECK(P(kQ, "x + 1") + P(kQ, "-x - 1") == LaurentPoly::zero(kQ));
  CHECK(P(kF2, "x + 1") * P(kF2, "x + 1") == P(kF2, "x^2 + 1"));
  CHECK(P(kQ, "x^2 + x") - P(kQ, "x") == P(kQ, "x^2"));
}

TEST_CASE("units are the single terms") {
  CHECK(P(kQ, "x").is_unit());
  CHECK(P(kQ, "3*x^-5").is_unit());
  CHECK(P(kQ, "1/2").is_unit());
  CHECK_FALSE(P(kQ, "x + 1").is_unit());
  CHECK_FALSE(LaurentPoly::zero(kQ).is_unit());
}

TEST_CASE("canonical generator normalizes shift and scale") {
  CHECK(P(kQ, "2*x^3 - 2*x").canonical_generator() == P(kQ, "x^2 - 1"));
  CHECK(P(kQ, "x^-2 + x^-3").canonical_generator() == P(kQ, "x + 1"));
  CHECK(P(kF5, "3*x^4 + 3*x^2").canonical_generator() == P(kF5, "x^2 + 1"));
  LaurentPoly f = P(kQ, "x^2 + 3");
  CHECK(f.canonical_generator() == f);
  CHECK((P(kQ, "x^-7") * f).canonical_generator() == f);
}

TEST_CASE("canonical generator is idempotent and unit invariant") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 200; ++i) {
    LaurentPoly f = LaurentPoly::zero(kF5);
    for (int t = 0; t < 3; ++t)
      f = f + LaurentPoly::monomial(kF5,
                                    Scalar::from_integer(kF5, static_cast<long long>(rng() % 5)),
                                    static_cast<long long>(rng() % 9) - 4);
    if (f.is_zero()) continue;
    LaurentPoly g = f.canonical_generator();
    CHECK(g.canonical_generator() == g);
    LaurentPoly unit = LaurentPoly::monomial(kF5, Scalar::from_integer(kF5, 3),
                                             static_cast<long long>(rng() % 7) - 3);
    CHECK((f * unit).canonical_generator() == g);
  }
}

TEST_CASE("irreducibility over prime fields by exhaustive trial division") {
  CHECK(P(kF2, "x + 1").is_irreducible());
  CHECK(P(kF2, "x^2 + x + 1").is_irreducible());
  CHECK_FALSE(P(kF2, "x^2 + 1").is_irreducible());
  CHECK(P(kF3, "x^2 + 1").is_irreducible());
  CHECK_FALSE(P(kF3, "x^2 + 2").is_irreducible());
  CHECK(P(kF5, "x^3 + x + 1").is_irreducible());
  CHECK_FALSE(P(kF5, "x^2 - 1").is_irreducible());
  CHECK(P(kF2, "x^-2 + x^-3").is_irreducible());
  CHECK_THROWS_AS(P(kF2, "x").is_irreducible(), ValidationError);
  CHECK_THROWS_AS(LaurentPoly::zero(kF2).is_irreducible(), ValidationError);
}

TEST_CASE("irreducibility over the rationals up to degree three") {
  CHECK(P(kQ, "x^2 + 1").is_irreducible());
  CHECK(P(kQ, "x^3 - 2").is_irreducible());
  CHECK_FALSE(P(kQ, "x^2 + x - 6").is_irreducible());
  CHECK_FALSE(P(kQ, "x^3 - x").is_irreducible());
  CHECK(P(kQ, "x - 7").is_irreducible());
  CHECK(P(kQ, "2*x^2 + 2*x + 2").is_irreducible());
  CHECK_FALSE(P(kQ, "6*x^2 + x - 1").is_irreducible());
  CHECK_THROWS_AS(P(kQ, "x^4 + 1").is_irreducible(), UnsupportedError);
}

TEST_CASE("canonical irreducibles over F2 up to degree 4") {
  std::vector<LaurentPoly> got = enumerate_canonical_irreducibles(kF2, 4);
  std::vector<LaurentPoly> expected = {
      P(kF2, "x + 1"),
      P(kF2, "x^2 + x + 1"),
      P(kF2, "x^3 + x^2 + 1"),
      P(kF2, "x^3 + x + 1"),
      P(kF2, "x^4 + x^3 + 1"),
      P(kF2, "x^4 + x + 1"),
      P(kF2, "x^4 + x^3 + x^2 + x + 1"),
  };
  CHECK(got == expected);
}

TEST_CASE("canonical irreducibles over F3 up to degree 2") {
  std::vector<LaurentPoly> got = enumerate_canonical_irreducibles(kF3, 2);
  std::vector<LaurentPoly> expected = {
      P(kF3, "x + 1"),         P(kF3, "x + 2"),
      P(kF3, "x^2 + 1"),       P(kF3, "x^2 + x + 2"),
      P(kF3, "x^2 + 2*x + 2"),
  };
  CHECK(got == expected);
  CHECK_THROWS_AS(enumerate_canonical_irreducibles(kQ, 2), UnsupportedError);
}

TEST_CASE("enumerated irreducibles pass the direct check and nothing reducible slips in") {
  for (const FieldDescriptor& f : {kF2, kF3, kF5}) {
    std::vector<LaurentPoly> irr = enumerate_canonical_irreducibles(f, 3);
    for (const LaurentPoly& p : irr) {
      CHECK(p.is_irreducible());
      CHECK(p.canonical_generator() == p);
    }
    for (std::size_t i = 0; i < irr.size(); ++i)
      for (std::size_t j = 0; j < irr.size(); ++j) {
        LaurentPoly prod = irr[i] * irr[j];
        if (prod.degree_span() <= 3) CHECK_FALSE(prod.is_irreducible());
      }
  }
}

TEST_CASE("bezout witnesses for coprime pairs") {
  auto verify = [](const FieldDescriptor& f, const LaurentPoly& a, const LaurentPoly& b) {
    auto w = bezout_one(a, b);
    REQUIRE(w.has_value());
    CHECK(w->first * a + w->second * b == LaurentPoly::one(f));
  };
  verify(kF2, P(kF2, "x + 1"), P(kF2, "x^2 + x + 1"));
  verify(kQ, P(kQ, "x - 1"), P(kQ, "x + 1"));
  verify(kQ, P(kQ, "x^2 + 1"), P(kQ, "x^3 - 2"));
  verify(kF5, P(kF5, "x + 2"), P(kF5, "x + 3"));
  CHECK_FALSE(bezout_one(P(kF2, "x + 1"), P(kF2, "x^2 + 1")).has_value());
  CHECK_FALSE(bezout_one(P(kQ, "x - 1"), P(kQ, "x^2 - 1")).has_value());
}

TEST_CASE("laurent ring axioms on random samples") {
  std::mt19937_64 rng(31337);
  auto rand_poly = [&](const FieldDescriptor& f) {
    LaurentPoly p = LaurentPoly::zero(f);
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
      long long c = static_cast<long long>(rng() % 7) - 3;
      p = p + LaurentPoly::monomial(f, Scalar::from_integer(f, c),
                                    static_cast<long long>(rng() % 7) - 3);
    }
    return p;
  };
  for (const FieldDescriptor& f : {kQ, kF5}) {
    for (int i = 0; i < 200; ++i) {
      LaurentPoly a = rand_poly(f), b = rand_poly(f), c = rand_poly(f);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK((a - a).is_zero());
    }
  }
}
