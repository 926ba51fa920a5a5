#include <doctest.h>

#include "hopfalgd/quasigroup.hpp"

using namespace hopfalgd;

TEST_CASE("Latin validation") {
  CHECK_FALSE(Quasigroup::abelian(2).validate_latin().has_value());
  CHECK_FALSE(builtin_qg5().validate_latin().has_value());
  auto bad = Quasigroup::from_table({{0, 1}, {0, 1}});
  auto v = bad.validate_latin();
  REQUIRE(v.has_value());
  CHECK_FALSE(v->row);
  CHECK(v->index == 0);
  CHECK(v->value == 0);
}

TEST_CASE("the built-in five-element table matches its published rows") {
  Quasigroup q = builtin_qg5();
  CHECK(std::vector<int>(q.table.begin(), q.table.begin() + 5) == std::vector<int>{4, 3, 2, 1, 0});
  CHECK(std::vector<int>(q.table.begin() + 15, q.table.begin() + 20) ==
        std::vector<int>{1, 0, 4, 3, 2});
  CHECK(q.mul(0, 2) == 2);
  // non-associativity witness
  CHECK(q.mul(q.mul(1, 2), 3) == 1);
  CHECK(q.mul(1, q.mul(2, 3)) == 4);
  CHECK(q.left_divide(0, 3) == 1);
}

TEST_CASE("divisions undo multiplication everywhere") {
  for (const Quasigroup& q : {builtin_qg5(), Quasigroup::abelian(2), Quasigroup::abelian(7)}) {
    for (int a = 0; a < q.n; ++a)
      for (int c = 0; c < q.n; ++c) {
        CHECK(q.mul(a, q.left_divide(a, c)) == c);
        CHECK(q.mul(q.right_divide(c, a), a) == c);
      }
  }
  CHECK_THROWS_AS(builtin_qg5().left_divide(9, 0), InputError);
}

TEST_CASE("ternary axioms for the difference-sum operation") {
  for (int n : {2, 3, 4, 5, 6, 7}) CHECK(TernaryOp::abelian_default(n).validate().empty());
  // the constant map breaks all three unique-solvability axioms
  TernaryOp zero;
  zero.n = 2;
  zero.mu.assign(8, 0);
  auto v = zero.validate();
  REQUIRE(v.size() >= 3);
  bool q3 = false, q4 = false, q5 = false;
  for (const auto& t : v) {
    if (t.axiom == "QG3") q3 = true;
    if (t.axiom == "QG4") q4 = true;
    if (t.axiom == "QG5") q5 = true;
    CHECK_FALSE(t.witness.empty());
  }
  CHECK(q3);
  CHECK(q4);
  CHECK(q5);
}

TEST_CASE("degree map stores the table columns with inverses") {
  DegreeMap d2 = DegreeMap::from(Quasigroup::abelian(2));
  CHECK(d2.perm[0] == std::vector<int>{0, 1});
  CHECK(d2.perm[1] == std::vector<int>{1, 0});
  DegreeMap d5 = DegreeMap::from(builtin_qg5());
  CHECK(d5.perm[0] == std::vector<int>{4, 3, 0, 1, 2});
  for (int a = 0; a < 5; ++a)
    for (int p = 0; p < 5; ++p) CHECK(d5.perm_inv[a][d5.perm[a][p]] == p);
}

TEST_CASE("abelian companion instance") {
  auto inst = from_abelian_group(2);
  CHECK(inst.q.table == std::vector<int>{0, 1, 1, 0});
  for (int c = 0; c < 2; ++c) CHECK(inst.mu.eval(1, 1, c) == c);
  CHECK(from_abelian_group(3).mu.eval(1, 2, 0) == 2);
  CHECK(from_abelian_group(5).mu.validate().empty());
  CHECK_THROWS_AS(from_abelian_group(1), InputError);
}
