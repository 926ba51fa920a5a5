#include "hopfalgd/algebra.hpp"

namespace hopfalgd {

AlgebraR AlgebraR::base(const Field& k) {
  AlgebraR r;
  r.k = k;
  r.dim = 1;
  r.mul = {k.one()};
  r.unit = {k.one()};
  r.name = "base";
  return r;
}

AlgebraR AlgebraR::dual(const Field& k) {
  AlgebraR r;
  r.k = k;
  r.dim = 2;
  // basis {1, x}, x^2 = 0
  r.mul.assign(8, k.zero());
  auto set = [&](int i, int j, int t, long v) { r.mul[(i * 2 + j) * 2 + t] = k.from_long(v); };
  set(0, 0, 0, 1);
  set(0, 1, 1, 1);
  set(1, 0, 1, 1);
  r.unit = {k.one(), k.zero()};
  r.name = "dual";
  return r;
}

AlgebraR AlgebraR::mat2(const Field& k) {
  AlgebraR r;
  r.k = k;
  r.dim = 4;
  // basis E11, E12, E21, E22; Eij * Ekl = delta_jk * Eil
  r.mul.assign(64, k.zero());
  auto eidx = [](int i, int j) { return i * 2 + j; };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int kk = 0; kk < 2; ++kk)
        for (int l = 0; l < 2; ++l)
          if (j == kk) r.mul[(eidx(i, j) * 4 + eidx(kk, l)) * 4 + eidx(i, l)] = k.one();
  r.unit.assign(4, k.zero());
  r.unit[eidx(0, 0)] = k.one();
  r.unit[eidx(1, 1)] = k.one();
  r.name = "mat2";
  return r;
}

AlgebraR AlgebraR::custom(const Field& k, int dim, std::vector<Fq> mul, std::vector<Fq> unit) {
  if (dim <= 0) throw InputError("algebra dimension must be positive");
  AlgebraR r;
  r.k = k;
  r.dim = dim;
  r.mul = std::move(mul);
  r.unit = std::move(unit);
  r.name = "custom";
  if (r.mul.size() != static_cast<size_t>(dim) * dim * dim)
    throw InputError("structure constant table has wrong size");
  if (r.unit.size() != static_cast<size_t>(dim))
    throw InputError("unit vector has wrong size");
  r.validate();
  return r;
}

AlgebraR AlgebraR::preset(const Field& k, const std::string& name) {
  if (name == "base") return base(k);
  if (name == "dual") return dual(k);
  if (name == "mat2") return mat2(k);
  throw InputError("unknown algebra preset '" + name + "'");
}

std::vector<Fq> AlgebraR::multiply(std::span<const Fq> a, std::span<const Fq> b) const {
  std::vector<Fq> out(dim, k.zero());
  for (int i = 0; i < dim; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < dim; ++j) {
      if (b[j].is_zero()) continue;
      Fq c = a[i] * b[j];
      for (int t = 0; t < dim; ++t) {
        const Fq& s = mul[(i * dim + j) * dim + t];
        if (!s.is_zero()) out[t] += c * s;
      }
    }
  }
  return out;
}

void AlgebraR::validate() const {
  std::vector<Fq> ei(dim, k.zero());
  // unit law on basis
  for (int i = 0; i < dim; ++i) {
    ei.assign(dim, k.zero());
    ei[i] = k.one();
    auto ue = multiply(unit, ei);
    auto eu = multiply(ei, unit);
    for (int t = 0; t < dim; ++t)
      if (ue[t] != ei[t] || eu[t] != ei[t])
        throw InputError("unit is not a two-sided identity on basis element " + std::to_string(i));
  }
  // associativity on basis triples
  std::vector<Fq> ej(dim, k.zero()), ek(dim, k.zero());
  for (int i = 0; i < dim; ++i) {
    ei.assign(dim, k.zero());
    ei[i] = k.one();
    for (int j = 0; j < dim; ++j) {
      ej.assign(dim, k.zero());
      ej[j] = k.one();
      auto ij = multiply(ei, ej);
      for (int t = 0; t < dim; ++t) {
        ek.assign(dim, k.zero());
        ek[t] = k.one();
        auto l = multiply(ij, ek);
        auto r = multiply(ei, multiply(ej, ek));
        for (int s = 0; s < dim; ++s)
          if (l[s] != r[s])
            throw InputError("structure constants are not associative at triple (" +
                             std::to_string(i) + "," + std::to_string(j) + "," +
                             std::to_string(t) + ")");
      }
    }
  }
}

bool AlgebraR::is_commutative() const {
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < i; ++j)
      for (int t = 0; t < dim; ++t)
        if (mul[(i * dim + j) * dim + t] != mul[(j * dim + i) * dim + t]) return false;
  return true;
}

int AlgebraR::radical_dim() const {
  if (!k.rational())
    throw UnsupportedMode("radical_dim needs characteristic 0 (rational mode)");
  // trace of left multiplication by the element with coordinates v
  auto trace_of = [&](const std::vector<Fq>& v) {
    Fq tr = k.zero();
    for (int s = 0; s < dim; ++s)
      for (int u = 0; u < dim; ++u)
        if (!v[u].is_zero()) tr += v[u] * mul[(u * dim + s) * dim + s];
    return tr;
  };
  // Gram matrix of the trace form on the basis
  std::vector<std::vector<Fq>> gram(dim, std::vector<Fq>(dim, k.zero()));
  std::vector<Fq> ei(dim, k.zero()), ej(dim, k.zero());
  for (int i = 0; i < dim; ++i) {
    ei.assign(dim, k.zero());
    ei[i] = k.one();
    for (int j = 0; j < dim; ++j) {
      ej.assign(dim, k.zero());
      ej[j] = k.one();
      gram[i][j] = trace_of(multiply(ei, ej));
    }
  }
  // rank by Gaussian elimination
  int rank = 0;
  for (int col = 0; col < dim && rank < dim; ++col) {
    int piv = -1;
    for (int r = rank; r < dim; ++r)
      if (!gram[r][col].is_zero()) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(gram[rank], gram[piv]);
    Fq inv = gram[rank][col].inv();
    for (int r = rank + 1; r < dim; ++r) {
      if (gram[r][col].is_zero()) continue;
      Fq f = gram[r][col] * inv;
      for (int c2 = col; c2 < dim; ++c2) gram[r][c2] -= f * gram[rank][c2];
    }
    ++rank;
  }
  return dim - rank;
}

}  // namespace hopfalgd
