#include "hopfalgd/quasigroup.hpp"

#include <sstream>

namespace hopfalgd {

std::string LatinViolation::str() const {
  std::ostringstream os;
  os << (row ? "row " : "column ") << index << " repeats value " << value;
  return os.str();
}

std::string TernaryViolation::str() const {
  std::ostringstream os;
  os << axiom << " fails at (";
  for (size_t i = 0; i < witness.size(); ++i) {
    if (i) os << ",";
    os << witness[i];
  }
  os << ")";
  return os.str();
}

Quasigroup Quasigroup::from_table(std::vector<std::vector<int>> rows) {
  Quasigroup q;
  q.n = static_cast<int>(rows.size());
  if (q.n == 0) throw InputError("quasigroup table is empty");
  q.table.reserve(static_cast<size_t>(q.n) * q.n);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != q.n) throw InputError("quasigroup table is not square");
    for (int v : r) {
      if (v < 0 || v >= q.n) throw InputError("quasigroup table entry out of range");
      q.table.push_back(v);
    }
  }
  return q;
}

Quasigroup Quasigroup::abelian(int n) {
  if (n < 1) throw InputError("group order must be positive");
  Quasigroup q;
  q.n = n;
  q.table.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) q.table[a * n + b] = (a + b) % n;
  return q;
}

Quasigroup Quasigroup::qg5() {
  return from_table({{4, 3, 2, 1, 0},
                     {3, 1, 0, 2, 4},
                     {0, 2, 3, 4, 1},
                     {1, 0, 4, 3, 2},
                     {2, 4, 1, 0, 3}});
}

void Quasigroup::check_range(int v, const char* what) const {
  if (v < 0 || v >= n) throw InputError(std::string(what) + " out of range");
}

int Quasigroup::left_divide(int a, int c) const {
  check_range(a, "left_divide a");
  check_range(c, "left_divide c");
  for (int b = 0; b < n; ++b)
    if (mul(a, b) == c) return b;
  throw InputError("left division has no solution (table is not Latin)");
}

int Quasigroup::right_divide(int c, int b) const {
  check_range(c, "right_divide c");
  check_range(b, "right_divide b");
  for (int a = 0; a < n; ++a)
    if (mul(a, b) == c) return a;
  throw InputError("right division has no solution (table is not Latin)");
}

std::optional<LatinViolation> Quasigroup::validate_latin() const {
  std::vector<int> seen(n);
  for (int a = 0; a < n; ++a) {
    seen.assign(n, 0);
    for (int b = 0; b < n; ++b) {
      int v = mul(a, b);
      if (seen[v]++) return LatinViolation{true, a, v};
    }
  }
  for (int b = 0; b < n; ++b) {
    seen.assign(n, 0);
    for (int a = 0; a < n; ++a) {
      int v = mul(a, b);
      if (seen[v]++) return LatinViolation{false, b, v};
    }
  }
  return std::nullopt;
}

TernaryOp TernaryOp::from_table(std::vector<std::vector<std::vector<int>>> t) {
  TernaryOp m;
  m.n = static_cast<int>(t.size());
  if (m.n == 0) throw InputError("ternary table is empty");
  m.mu.reserve(static_cast<size_t>(m.n) * m.n * m.n);
  for (const auto& plane : t) {
    if (static_cast<int>(plane.size()) != m.n) throw InputError("ternary table is not cubic");
    for (const auto& row : plane) {
      if (static_cast<int>(row.size()) != m.n) throw InputError("ternary table is not cubic");
      for (int v : row) {
        if (v < 0 || v >= m.n) throw InputError("ternary table entry out of range");
        m.mu.push_back(v);
      }
    }
  }
  return m;
}

TernaryOp TernaryOp::abelian_default(int n) {
  if (n < 1) throw InputError("ternary size must be positive");
  TernaryOp m;
  m.n = n;
  m.mu.resize(static_cast<size_t>(n) * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) m.mu[(a * n + b) * n + c] = ((a - b + c) % n + n) % n;
  return m;
}

std::vector<TernaryViolation> TernaryOp::validate() const {
  std::vector<TernaryViolation> out;
  // QG1 and QG2: full 4-variable enumeration
  for (int a = 0; a < n && out.size() < 64; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          int abc = eval(a, b, c);
          int bcd = eval(b, c, d);
          if (eval(a, abc, eval(abc, c, d)) != eval(a, b, bcd)) {
            out.push_back({"QG1", {a, b, c, d}});
            goto qg2;
          }
        }
qg2:
  for (int a = 0; a < n && out.size() < 64; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          int abc = eval(a, b, c);
          int bcd = eval(b, c, d);
          if (eval(abc, c, d) != eval(eval(a, b, bcd), bcd, d)) {
            out.push_back({"QG2", {a, b, c, d}});
            goto solv;
          }
        }
solv:
  // QG3: unique a with mu(a,b,c) = d; QG4: unique b; QG5: unique c
  for (int axis = 0; axis < 3; ++axis) {
    const char* names[] = {"QG3", "QG4", "QG5"};
    bool bad = false;
    for (int u = 0; u < n && !bad; ++u)
      for (int v = 0; v < n && !bad; ++v)
        for (int d = 0; d < n && !bad; ++d) {
          int count = 0;
          for (int w = 0; w < n; ++w) {
            int r = axis == 0 ? eval(w, u, v) : axis == 1 ? eval(u, w, v) : eval(u, v, w);
            if (r == d) ++count;
          }
          if (count != 1) {
            out.push_back({names[axis], {u, v, d}});
            bad = true;
          }
        }
  }
  return out;
}

PiBijection PiBijection::identity(int n) {
  PiBijection p;
  p.map.resize(n);
  p.inv.resize(n);
  for (int i = 0; i < n; ++i) p.map[i] = p.inv[i] = i;
  return p;
}

PiBijection PiBijection::from_permutation(std::vector<int> perm) {
  PiBijection p;
  int n = static_cast<int>(perm.size());
  p.map = std::move(perm);
  p.inv.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    int v = p.map[i];
    if (v < 0 || v >= n || p.inv[v] != -1) throw InputError("pi is not a bijection");
    p.inv[v] = i;
  }
  return p;
}

DegreeMap DegreeMap::from(const Quasigroup& q) {
  DegreeMap d;
  d.n = q.n;
  d.perm.assign(q.n, std::vector<int>(q.n));
  d.perm_inv.assign(q.n, std::vector<int>(q.n));
  for (int a = 0; a < q.n; ++a) {
    for (int p = 0; p < q.n; ++p) d.perm[a][p] = q.mul(p, a);
    for (int p = 0; p < q.n; ++p) d.perm_inv[a][d.perm[a][p]] = p;
  }
  return d;
}

std::optional<LatinViolation> validate_latin(const Quasigroup& q) { return q.validate_latin(); }
std::vector<TernaryViolation> validate_ternary(const TernaryOp& m) { return m.validate(); }
DegreeMap degree_map(const Quasigroup& q) { return DegreeMap::from(q); }
Quasigroup builtin_qg5() { return Quasigroup::qg5(); }

AbelianInstance from_abelian_group(int n) {
  if (n < 2) throw InputError("abelian instance needs n >= 2");
  return {Quasigroup::abelian(n), TernaryOp::abelian_default(n), PiBijection::identity(n)};
}

}  // namespace hopfalgd
