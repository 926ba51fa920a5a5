#pragma once

#include "hopfalgd/rigidity.hpp"
#include "hopfalgd/sigma.hpp"

namespace hopfalgd::testing {

inline SigmaCtxPtr abelian_ctx(int n, const std::string& algebra = "base",
                               Field k = Field::rationals()) {
  auto inst = from_abelian_group(n);
  auto ring = make_ring_ctx(k, AlgebraR::preset(k, algebra), n);
  return make_sigma_ctx(ring, inst.q, inst.mu, inst.pi);
}

inline SigmaCtxPtr qg5_ctx(const std::string& algebra = "base", Field k = Field::rationals()) {
  auto ring = make_ring_ctx(k, AlgebraR::preset(k, algebra), 5);
  return make_sigma_ctx(ring, builtin_qg5(), TernaryOp::abelian_default(5), PiBijection::identity(5));
}

// independent oracle for the flip tensor expected on abelian instances
inline bool is_flip(const SigmaTensor& s) {
  const int n = s.nx();
  auto one = FnElement::one(s.sc().ring);
  auto zero = FnElement::zero(s.sc().ring);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          if (s.entry(a, b, c, d) != ((c == b && d == a) ? one : zero)) return false;
  return true;
}

inline bool istar_is_flip(const IStarTensor& is) {
  const int n = is.nx();
  auto one = FnElement::one(is.sc_ptr()->ring);
  auto zero = FnElement::zero(is.sc_ptr()->ring);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          if (is.entry(a, b, c, d) != ((c == b && d == a) ? one : zero)) return false;
  return true;
}

}  // namespace hopfalgd::testing
