#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hopfalgd/algebra.hpp"

namespace hopfalgd {

// Shared context for the function algebra L = R^H. The basis of L is fixed
// once per session as (point, R-basis index), ordered lexicographically, so
// operator equality is a bit-exact matrix comparison.
struct RingCtx {
  Field k = Field::rationals();
  AlgebraR R;
  int hsize = 1;

  int dim_r() const { return R.dim; }
  int dim_l() const { return hsize * R.dim; }
  int lidx(int point, int ri) const { return point * R.dim + ri; }
};

using RingCtxPtr = std::shared_ptr<const RingCtx>;

RingCtxPtr make_ring_ctx(const Field& k, AlgebraR R, int hsize);

// Element of L = R^H with pointwise product.
class FnElement {
 public:
  FnElement(RingCtxPtr ctx, std::vector<Fq> coords);
  static FnElement zero(RingCtxPtr ctx);
  static FnElement one(RingCtxPtr ctx);
  // indicator of a point, carrying 1_R there
  static FnElement indicator(RingCtxPtr ctx, int point);
  static FnElement basis(RingCtxPtr ctx, int point, int ri);
  // the same R-element at every point
  static FnElement constant(RingCtxPtr ctx, std::span<const Fq> rvec);

  const RingCtx& ctx() const { return *ctx_; }
  const RingCtxPtr& ctx_ptr() const { return ctx_; }
  const std::vector<Fq>& coords() const { return c_; }
  const Fq& at(int point, int ri) const { return c_[ctx_->lidx(point, ri)]; }

  FnElement operator+(const FnElement& o) const;
  FnElement operator-(const FnElement& o) const;
  FnElement operator*(const FnElement& o) const;  // pointwise in R
  FnElement scaled(const Fq& s) const;
  bool is_zero() const;
  bool operator==(const FnElement& o) const;
  bool operator!=(const FnElement& o) const { return !(*this == o); }

  std::string str() const;

 private:
  RingCtxPtr ctx_;
  std::vector<Fq> c_;
};

// k-linear operator on L as a dense matrix in the fixed basis.
class LOperator {
 public:
  LOperator(RingCtxPtr ctx, std::vector<Fq> m);
  static LOperator zero(RingCtxPtr ctx);
  static LOperator identity(RingCtxPtr ctx);

  const RingCtx& ctx() const { return *ctx_; }
  const Fq& at(int r, int c) const { return m_[static_cast<size_t>(r) * ctx_->dim_l() + c]; }
  Fq& at(int r, int c) { return m_[static_cast<size_t>(r) * ctx_->dim_l() + c]; }

  LOperator compose(const LOperator& o) const;  // this after o
  FnElement apply(const FnElement& f) const;
  LOperator operator+(const LOperator& o) const;
  LOperator operator-(const LOperator& o) const;
  LOperator scaled(const Fq& s) const;
  bool is_zero() const;
  bool operator==(const LOperator& o) const;
  bool operator!=(const LOperator& o) const { return !(*this == o); }

  std::string str() const;

 private:
  RingCtxPtr ctx_;
  std::vector<Fq> m_;
};

LOperator rho_left(const FnElement& f);
LOperator rho_right(const FnElement& f);

// Algebra automorphism of L acting by precomposition with a permutation of
// the point set: (T f)(p) = f(perm[p]). Closed under inverse and always
// multiplicative and unital; is_algebra_automorphism re-verifies this.
class AutomorphismT {
 public:
  AutomorphismT(RingCtxPtr ctx, std::vector<int> perm);
  static AutomorphismT identity(RingCtxPtr ctx);

  const std::vector<int>& perm() const { return perm_; }
  FnElement apply(const FnElement& f) const;
  AutomorphismT inverse() const;
  AutomorphismT compose(const AutomorphismT& o) const;  // this after o
  LOperator as_operator() const;
  bool is_algebra_automorphism() const;

 private:
  RingCtxPtr ctx_;
  std::vector<int> perm_;
};

FnElement t_apply(const AutomorphismT& t, const FnElement& f);

}  // namespace hopfalgd
