#include <doctest.h>

#include "hopfalgd/algebra.hpp"

using namespace hopfalgd;

namespace {

// brute-force Gram matrix of the trace form, kept independent of radical_dim
std::vector<std::vector<Fq>> trace_gram(const AlgebraR& R) {
  const int d = R.dim;
  auto trace_of = [&](const std::vector<Fq>& v) {
    Fq tr = R.k.zero();
    for (int s = 0; s < d; ++s) {
      // coefficient of e_s in v * e_s
      std::vector<Fq> es(d, R.k.zero());
      es[s] = R.k.one();
      auto prod = R.multiply(v, es);
      tr += prod[s];
    }
    return tr;
  };
  std::vector<std::vector<Fq>> g(d, std::vector<Fq>(d, R.k.zero()));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::vector<Fq> ei(d, R.k.zero()), ej(d, R.k.zero());
      ei[i] = R.k.one();
      ej[j] = R.k.one();
      g[i][j] = trace_of(R.multiply(ei, ej));
    }
  return g;
}

}  // namespace

TEST_CASE("presets validate and behave") {
  Field k = Field::rationals();
  for (const char* name : {"base", "dual", "mat2"}) {
    AlgebraR r = AlgebraR::preset(k, name);
    CHECK_NOTHROW(r.validate());
  }
  AlgebraR dual = AlgebraR::dual(k);
  std::vector<Fq> x = {k.zero(), k.one()};
  auto x2 = dual.multiply(x, x);
  CHECK(x2[0].is_zero());
  CHECK(x2[1].is_zero());
  CHECK(dual.is_commutative());
  CHECK_FALSE(AlgebraR::mat2(k).is_commutative());
}

TEST_CASE("trace form of the dual numbers is [[2,0],[0,0]]") {
  AlgebraR dual = AlgebraR::dual(Field::rationals());
  auto g = trace_gram(dual);
  CHECK(g[0][0].str() == "2");
  CHECK(g[0][1].is_zero());
  CHECK(g[1][0].is_zero());
  CHECK(g[1][1].is_zero());
}

TEST_CASE("radical dimension detects semisimplicity") {
  Field k = Field::rationals();
  CHECK(AlgebraR::base(k).radical_dim() == 0);
  CHECK(AlgebraR::dual(k).radical_dim() == 1);
  CHECK(AlgebraR::mat2(k).radical_dim() == 0);
}

TEST_CASE("radical dimension needs rational mode") {
  CHECK_THROWS_AS(AlgebraR::dual(Field::gf(7)).radical_dim(), UnsupportedMode);
}

TEST_CASE("custom structure constants are validated at load") {
  Field k = Field::rationals();
  // e1*e1 = e0 with unit e0 is the complex-like algebra; fine
  std::vector<Fq> mul(8, k.zero());
  auto set = [&](int i, int j, int t, long v) { mul[(i * 2 + j) * 2 + t] = k.from_long(v); };
  set(0, 0, 0, 1);
  set(0, 1, 1, 1);
  set(1, 0, 1, 1);
  set(1, 1, 0, -1);
  CHECK_NOTHROW(AlgebraR::custom(k, 2, mul, {k.one(), k.zero()}));
  // a wrong unit vector is rejected
  CHECK_THROWS_AS(AlgebraR::custom(k, 2, mul, {k.zero(), k.one()}), InputError);
  // a non-associative table is rejected: e1(e1e1) != (e1e1)e1 in dim 3
  std::vector<Fq> bad(27, k.zero());
  auto set3 = [&](int i, int j, int t, long v) { bad[(i * 3 + j) * 3 + t] = k.from_long(v); };
  for (int i = 0; i < 3; ++i) {
    set3(0, i, i, 1);
    set3(i, 0, i, 1);
  }
  set3(1, 1, 2, 1);  // e1e1 = e2
  set3(1, 2, 0, 1);  // e1e2 = 1
  set3(2, 1, 1, 1);  // e2e1 = e1, so (e1e1)e1 = e1 but e1(e1e1) = 1
  CHECK_THROWS_AS(AlgebraR::custom(k, 3, bad, {k.one(), k.zero(), k.zero()}), InputError);
}
