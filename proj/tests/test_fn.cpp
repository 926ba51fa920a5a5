#include <doctest.h>

#include "hopfalgd/fn.hpp"
#include "hopfalgd/quasigroup.hpp"

using namespace hopfalgd;

namespace {
RingCtxPtr ctx(int h, const std::string& algebra = "base") {
  Field k = Field::rationals();
  return make_ring_ctx(k, AlgebraR::preset(k, algebra), h);
}
}  // namespace

TEST_CASE("pointwise product is unital with disjoint-support kill") {
  auto rc = ctx(2);
  auto one = FnElement::one(rc);
  auto e0 = FnElement::indicator(rc, 0);
  auto e1 = FnElement::indicator(rc, 1);
  CHECK(one * e0 == e0);
  CHECK(e0 * one == e0);
  CHECK((e0 * e1).is_zero());
}

TEST_CASE("nilpotency comes straight from the structure constants") {
  auto rc = ctx(3, "dual");
  std::vector<Fq> xvec = {rc->k.zero(), rc->k.one()};
  auto x_everywhere = FnElement::constant(rc, xvec);
  CHECK((x_everywhere * x_everywhere).is_zero());
}

TEST_CASE("shape mismatch is an input error") {
  auto a = FnElement::one(ctx(2));
  auto b = FnElement::one(ctx(3));
  CHECK_THROWS_AS(a * b, InputError);
}

TEST_CASE("left and right multiplication operators") {
  auto rc = ctx(2);
  CHECK(rho_left(FnElement::one(rc)) == LOperator::identity(rc));
  // commutative coefficients: both sides agree on the whole basis
  for (int p = 0; p < 2; ++p) {
    auto f = FnElement::basis(rc, p, 0);
    CHECK(rho_left(f) == rho_right(f));
  }
  // matrix coefficients: E12 acts differently from the two sides
  auto rcm = ctx(2, "mat2");
  std::vector<Fq> e12(4, rcm->k.zero());
  e12[1] = rcm->k.one();
  auto f = FnElement::constant(rcm, e12);
  CHECK(rho_left(f) != rho_right(f));
  // and both match direct multiplication on every basis vector
  for (int p = 0; p < rcm->dim_l(); ++p) {
    auto g = FnElement::basis(rcm, p / rcm->dim_r(), p % rcm->dim_r());
    CHECK(rho_left(f).apply(g) == f * g);
    CHECK(rho_right(f).apply(g) == g * f);
  }
}

TEST_CASE("left and right multiplications commute as operators") {
  auto rc = ctx(2, "mat2");
  for (int p = 0; p < rc->dim_l(); ++p)
    for (int q = 0; q < rc->dim_l(); ++q) {
      auto f = FnElement::basis(rc, p / rc->dim_r(), p % rc->dim_r());
      auto g = FnElement::basis(rc, q / rc->dim_r(), q % rc->dim_r());
      CHECK(rho_left(f).compose(rho_right(g)) == rho_right(g).compose(rho_left(f)));
    }
}

TEST_CASE("point permutations act as algebra automorphisms") {
  auto rc = ctx(2);
  auto ident = AutomorphismT::identity(rc);
  auto f = FnElement::indicator(rc, 0);
  CHECK(t_apply(ident, f) == f);
  AutomorphismT swap(rc, {1, 0});
  CHECK(t_apply(swap, FnElement::indicator(rc, 0)) == FnElement::indicator(rc, 1));
  CHECK(swap.is_algebra_automorphism());
  CHECK(swap.compose(swap.inverse()).as_operator() == LOperator::identity(rc));

  // multiplicativity on all basis pairs
  for (int p = 0; p < rc->dim_l(); ++p)
    for (int q = 0; q < rc->dim_l(); ++q) {
      auto a = FnElement::basis(rc, p / rc->dim_r(), p % rc->dim_r());
      auto b = FnElement::basis(rc, q / rc->dim_r(), q % rc->dim_r());
      CHECK(t_apply(swap, a * b) == t_apply(swap, a) * t_apply(swap, b));
    }
}

TEST_CASE("the degree permutation of the built-in five-element table") {
  auto rc = ctx(5);
  DegreeMap deg = DegreeMap::from(builtin_qg5());
  // column 0 of the table: p -> p*0
  CHECK(deg.perm[0] == std::vector<int>{4, 3, 0, 1, 2});
  AutomorphismT t0(rc, deg.perm[0]);
  CHECK(t_apply(t0, FnElement::indicator(rc, 0)) == FnElement::indicator(rc, 2));
}

TEST_CASE("associativity of the function algebra on basis triples") {
  auto rc = ctx(2, "dual");
  for (int p = 0; p < rc->dim_l(); ++p)
    for (int q = 0; q < rc->dim_l(); ++q)
      for (int r = 0; r < rc->dim_l(); ++r) {
        auto f = FnElement::basis(rc, p / rc->dim_r(), p % rc->dim_r());
        auto g = FnElement::basis(rc, q / rc->dim_r(), q % rc->dim_r());
        auto h = FnElement::basis(rc, r / rc->dim_r(), r % rc->dim_r());
        CHECK((f * g) * h == f * (g * h));
      }
}

TEST_CASE("operator composition matches application") {
  auto rc = ctx(2, "dual");
  auto f = FnElement::basis(rc, 0, 1);
  auto g = FnElement::basis(rc, 1, 0) + FnElement::basis(rc, 0, 0);
  auto a = rho_left(f), b = rho_right(g);
  for (int p = 0; p < rc->dim_l(); ++p) {
    auto v = FnElement::basis(rc, p / rc->dim_r(), p % rc->dim_r());
    CHECK(a.compose(b).apply(v) == a.apply(b.apply(v)));
  }
}
