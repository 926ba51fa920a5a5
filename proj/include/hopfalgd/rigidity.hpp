#pragma once

#include <variant>

#include "hopfalgd/freealg.hpp"
#include "hopfalgd/sigma.hpp"

namespace hopfalgd {

// n x n matrix over L.
struct LMatrix {
  int n = 0;
  std::vector<FnElement> e;

  LMatrix() = default;
  LMatrix(int n_, const FnElement& fill) : n(n_), e(static_cast<size_t>(n_) * n_, fill) {}
  const FnElement& at(int a, int b) const { return e[static_cast<size_t>(a) * n + b]; }
  FnElement& at(int a, int b) { return e[static_cast<size_t>(a) * n + b]; }
};

// Solution of the contraction identity: the X^4 family pairing with
// sigma-tilde to the double Kronecker delta on both sides.
class IStarTensor {
 public:
  IStarTensor(SigmaCtxPtr sc, std::vector<FnElement> entries);
  const SigmaCtxPtr& sc_ptr() const { return sc_; }
  int nx() const { return sc_->nx(); }
  const FnElement& entry(int a, int b, int c, int d) const {
    int n = nx();
    return e_[((static_cast<size_t>(a) * n + b) * n + c) * n + d];
  }

 private:
  SigmaCtxPtr sc_;
  std::vector<FnElement> e_;
};

struct IStarFailure {
  std::string reason;
  uint64_t rank = 0;
  uint64_t unknowns = 0;
};

// Solves both contraction identities simultaneously as one exact linear
// system in the unknown entries, then re-verifies the two products.
std::variant<IStarTensor, IStarFailure> solve_istar(const SigmaTilde& st, int threads = 1);

// Exact check of both contractions; used as the post-hoc verifier.
bool verify_istar(const IStarTensor& is, const SigmaTilde& st, int threads = 1);

struct QFamily {
  LMatrix q, qp, qpp, qppp;      // the four trace-like sums of i_*
  LMatrix qi, qpi, qppi, qpppi;  // the stated one-sided inverses
  bool two_sided[4] = {false, false, false, false};
};

struct QFailure {
  int condition;  // 2..5
  int point;      // first point of H where the solve degenerates
};

// Builds the four matrices from i_* and computes the inverses demanded by the
// sufficient conditions, then re-verifies the stated one-sided identities in
// their exact multiplication order (L may be noncommutative). Two-sided
// inverses are checked opportunistically and reported.
std::variant<QFamily, QFailure> build_q_family(const IStarTensor& is, int threads = 1);

struct AntipodeElements {
  int n = 0;
  std::vector<FreeElement> x, x_alt, y, y_alt;

  const FreeElement& x_at(int a, int b) const { return x[static_cast<size_t>(a) * n + b]; }
  const FreeElement& x_alt_at(int a, int b) const { return x_alt[static_cast<size_t>(a) * n + b]; }
  const FreeElement& y_at(int a, int b) const { return y[static_cast<size_t>(a) * n + b]; }
  const FreeElement& y_alt_at(int a, int b) const { return y_alt[static_cast<size_t>(a) * n + b]; }
};

// Both displayed formulas for each element; downstream checks certify that
// the two variants agree modulo the ideal.
AntipodeElements antipode_elements(const QFamily& qs, const SigmaCtxPtr& sc);

struct RigidityCertificate {
  IStarTensor istar;
  QFamily qs;
  AntipodeElements xy;
};

struct RigidityFailure {
  std::string stage;  // "istar" or "q2".."q5"
  std::string detail;
};

std::variant<RigidityCertificate, RigidityFailure> build_rigidity_certificate(
    const SigmaTensor& s, int threads = 1);

}  // namespace hopfalgd
