#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfalgd/field.hpp"

namespace hopfalgd {

struct LatinViolation {
  bool row;  // false: column
  int index;
  int value;
  std::string str() const;
};

// Finite quasigroup on labels 0..n-1, given by its Cayley table
// (table[a][b] = a*b, row = left factor). Valid iff the table is a Latin
// square; divisions are then unique.
struct Quasigroup {
  int n = 0;
  std::vector<int> table;  // row-major n*n

  static Quasigroup from_table(std::vector<std::vector<int>> rows);
  static Quasigroup abelian(int n);  // Z/n addition
  static Quasigroup qg5();           // the built-in 5-element example

  int mul(int a, int b) const { return table[a * n + b]; }
  int left_divide(int a, int c) const;   // unique b with a*b = c
  int right_divide(int c, int b) const;  // unique a with a*b = c
  std::optional<LatinViolation> validate_latin() const;
  void check_range(int v, const char* what) const;
};

struct TernaryViolation {
  std::string axiom;  // "QG1".."QG5"
  std::vector<int> witness;
  std::string str() const;
};

// Ternary operation mu on labels 0..n-1 subject to the two 4-variable
// identities QG1/QG2 and the three unique-solvability axioms QG3-QG5,
// all checked exhaustively.
struct TernaryOp {
  int n = 0;
  std::vector<int> mu;  // [(a*n + b)*n + c]

  static TernaryOp from_table(std::vector<std::vector<std::vector<int>>> t);
  static TernaryOp abelian_default(int n);  // mu(a,b,c) = a - b + c mod n

  int eval(int a, int b, int c) const { return mu[(a * n + b) * n + c]; }
  std::vector<TernaryViolation> validate() const;
};

// Bijection between quasigroup labels and ternary-operation labels.
struct PiBijection {
  std::vector<int> map;
  std::vector<int> inv;

  static PiBijection identity(int n);
  static PiBijection from_permutation(std::vector<int> perm);
  int fwd(int a) const { return map[a]; }
  int bwd(int m) const { return inv[m]; }
};

// deg(a) is the permutation p -> p*a of the label set (a column of the Cayley
// table); inverses are stored alongside.
struct DegreeMap {
  int n = 0;
  std::vector<std::vector<int>> perm;      // perm[a][p] = p*a
  std::vector<std::vector<int>> perm_inv;

  static DegreeMap from(const Quasigroup& q);
};

std::optional<LatinViolation> validate_latin(const Quasigroup& q);
std::vector<TernaryViolation> validate_ternary(const TernaryOp& m);
DegreeMap degree_map(const Quasigroup& q);
Quasigroup builtin_qg5();

struct AbelianInstance {
  Quasigroup q;
  TernaryOp mu;
  PiBijection pi;
};
AbelianInstance from_abelian_group(int n);  // n >= 2

}  // namespace hopfalgd
