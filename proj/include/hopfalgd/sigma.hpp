#pragma once

#include <optional>

#include "hopfalgd/fn.hpp"
#include "hopfalgd/quasigroup.hpp"

namespace hopfalgd {

// Everything downstream of a configured instance hangs off this context:
// the function algebra L = R^H, the quasigroup with its ternary companion,
// and the degree permutations driving the T-automorphisms.
struct SigmaCtx {
  RingCtxPtr ring;
  Quasigroup q;
  TernaryOp tern;
  PiBijection pi;
  DegreeMap deg;

  int nx() const { return q.n; }
  AutomorphismT t_deg(int a) const { return AutomorphismT(ring, deg.perm[a]); }
  AutomorphismT t_deg_inv(int a) const { return AutomorphismT(ring, deg.perm_inv[a]); }
};

using SigmaCtxPtr = std::shared_ptr<const SigmaCtx>;

// Validates the combinatorial data (Latin square, ternary axioms, pi) before
// assembling the context; hsize of `ring` must equal q.n.
SigmaCtxPtr make_sigma_ctx(RingCtxPtr ring, Quasigroup q, TernaryOp tern, PiBijection pi);

// The structure tensor: an X^4-indexed family of elements of L.
class SigmaTensor {
 public:
  SigmaTensor(SigmaCtxPtr sc, std::vector<FnElement> entries);

  // sigma^{ab}_{cd}(p) = 1_R iff c and d solve the two divisions determined by
  // the ternary operation at (p, a, b); built entries are 0/1-indicators and
  // sum to 1_L over (c,d) for each (a,b).
  static SigmaTensor build_from_quasigroup(SigmaCtxPtr sc);

  const SigmaCtx& sc() const { return *sc_; }
  const SigmaCtxPtr& sc_ptr() const { return sc_; }
  int nx() const { return sc_->nx(); }
  const FnElement& entry(int a, int b, int c, int d) const { return e_[idx(a, b, c, d)]; }

  // test hook: returns a copy with 1_R added to one entry at one point
  SigmaTensor mutated_add_unit(int a, int b, int c, int d, int point) const;

  bool row_sums_to_one() const;

  size_t idx(int a, int b, int c, int d) const {
    int n = nx();
    return ((static_cast<size_t>(a) * n + b) * n + c) * n + d;
  }

 private:
  SigmaCtxPtr sc_;
  std::vector<FnElement> e_;
};

// sigma-tilde: entrywise T_{deg(d)^-1} of sigma.
class SigmaTilde {
 public:
  explicit SigmaTilde(const SigmaTensor& s);
  const SigmaCtxPtr& sc_ptr() const { return sc_; }
  const FnElement& entry(int a, int b, int c, int d) const {
    int n = sc_->nx();
    return e_[((static_cast<size_t>(a) * n + b) * n + c) * n + d];
  }

 private:
  SigmaCtxPtr sc_;
  std::vector<FnElement> e_;
};

struct SigmaCounterexample {
  int a, b, c, d;
  std::string lhs, rhs;
};

// The three conditions, checked exactly over all index tuples. Counterexamples
// carry the tuple and both evaluated sides, serialized.
std::optional<SigmaCounterexample> check_tt(const SigmaTensor& s, int threads = 1);
std::optional<SigmaCounterexample> check_left_rhot(const SigmaTensor& s, int threads = 1);
std::optional<SigmaCounterexample> check_right_rhot(const SigmaTensor& s, int threads = 1);

struct RemarkReport {
  bool right_ok = false;
  bool left_ok = false;
  bool tt_ok = false;
  // right <=> (left && tt) on this instance
  bool consistent() const { return right_ok == (left_ok && tt_ok); }
};

RemarkReport check_remark_equivalence(const SigmaTensor& s, int threads = 1);

}  // namespace hopfalgd
