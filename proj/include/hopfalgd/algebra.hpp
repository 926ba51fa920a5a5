#pragma once

#include <span>
#include <string>
#include <vector>

#include "hopfalgd/field.hpp"

namespace hopfalgd {

// Finite-dimensional associative unital algebra R over the coefficient field,
// given by structure constants: mul[(i*dim + j)*dim + t] is the e_t-coordinate
// of e_i * e_j. Presets: "base" (R = k), "dual" (k[x]/(x^2)), "mat2" (2x2
// matrices). Custom tables are validated at load.
struct AlgebraR {
  Field k = Field::rationals();
  int dim = 1;
  std::vector<Fq> mul;
  std::vector<Fq> unit;
  std::string name = "base";

  static AlgebraR base(const Field& k);
  static AlgebraR dual(const Field& k);
  static AlgebraR mat2(const Field& k);
  static AlgebraR custom(const Field& k, int dim, std::vector<Fq> mul, std::vector<Fq> unit);
  static AlgebraR preset(const Field& k, const std::string& name);

  // Associativity on all basis triples and two-sided unit law; throws
  // InputError with the offending triple otherwise.
  void validate() const;

  std::vector<Fq> multiply(std::span<const Fq> a, std::span<const Fq> b) const;
  bool is_commutative() const;

  // Dimension of the radical of the trace form tr(rho_l(xy)); zero iff R is
  // semisimple in characteristic 0. GF(p) mode is rejected.
  int radical_dim() const;
};

}  // namespace hopfalgd
