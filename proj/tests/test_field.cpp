#include <doctest.h>

#include "hopfalgd/field.hpp"

using namespace hopfalgd;

TEST_CASE("rational arithmetic is exact") {
  Field k = Field::rationals();
  Fq a = k.parse("1/3"), b = k.parse("2/5");
  CHECK((a + b).str() == "11/15");
  CHECK((a * b).str() == "2/15");
  CHECK((a - a).is_zero());
  CHECK((a / a).is_one());
  CHECK(k.parse("-7/3").str() == "-7/3");
  CHECK(k.parse("4/2").str() == "2");
  CHECK((-k.parse("3")).str() == "-3");
}

TEST_CASE("rational parsing rejects garbage") {
  Field k = Field::rationals();
  CHECK_THROWS_AS(k.parse("1.5"), InputError);
  CHECK_THROWS_AS(k.parse("x"), InputError);
  CHECK_THROWS_AS(k.parse(""), InputError);
  CHECK_THROWS_AS(k.parse("1/0"), InputError);
}

TEST_CASE("prime field keeps canonical representatives") {
  Field k = Field::gf(7);
  CHECK(Fq::residue(-1, 7).res() == 6);
  CHECK(k.parse("12").res() == 5);
  Fq three = k.from_long(3);
  CHECK((three * three.inv()).is_one());
  CHECK((k.from_long(6) + k.from_long(3)).res() == 2);
  CHECK((k.from_long(1) - k.from_long(5)).res() == 3);
}

TEST_CASE("field specs parse and non-primes are rejected") {
  CHECK(Field::parse_spec("rational").rational());
  CHECK(Field::parse_spec("gf:101").prime() == 101);
  CHECK_THROWS_AS(Field::parse_spec("gf:4"), InputError);
  CHECK_THROWS_AS(Field::parse_spec("float"), InputError);
  CHECK_THROWS_AS(Field::gf(1), InputError);
}

TEST_CASE("neutral zero combines with either mode") {
  Fq z;
  Fq r = Fq::residue(3, 7);
  CHECK((z + r).res() == 3);
  CHECK((r - z).res() == 3);
  CHECK(z == Fq::residue(0, 7));
}
