#include "hopfalgd/fn.hpp"

#include <sstream>

namespace hopfalgd {

RingCtxPtr make_ring_ctx(const Field& k, AlgebraR R, int hsize) {
  if (hsize <= 0) throw InputError("point set must be nonempty");
  if (R.k != k) throw InputError("algebra field does not match ring field");
  auto ctx = std::make_shared<RingCtx>();
  ctx->k = k;
  ctx->R = std::move(R);
  ctx->hsize = hsize;
  return ctx;
}

FnElement::FnElement(RingCtxPtr ctx, std::vector<Fq> coords) : ctx_(std::move(ctx)), c_(std::move(coords)) {
  if (c_.size() != static_cast<size_t>(ctx_->dim_l()))
    throw InputError("FnElement coordinate vector has wrong size");
}

FnElement FnElement::zero(RingCtxPtr ctx) {
  std::vector<Fq> c(ctx->dim_l(), ctx->k.zero());
  return FnElement(std::move(ctx), std::move(c));
}

FnElement FnElement::one(RingCtxPtr ctx) {
  std::vector<Fq> c(ctx->dim_l(), ctx->k.zero());
  for (int p = 0; p < ctx->hsize; ++p)
    for (int i = 0; i < ctx->dim_r(); ++i) c[ctx->lidx(p, i)] = ctx->R.unit[i];
  return FnElement(std::move(ctx), std::move(c));
}

FnElement FnElement::indicator(RingCtxPtr ctx, int point) {
  std::vector<Fq> c(ctx->dim_l(), ctx->k.zero());
  for (int i = 0; i < ctx->dim_r(); ++i) c[ctx->lidx(point, i)] = ctx->R.unit[i];
  return FnElement(std::move(ctx), std::move(c));
}

FnElement FnElement::basis(RingCtxPtr ctx, int point, int ri) {
  std::vector<Fq> c(ctx->dim_l(), ctx->k.zero());
  c[ctx->lidx(point, ri)] = ctx->k.one();
  return FnElement(std::move(ctx), std::move(c));
}

FnElement FnElement::constant(RingCtxPtr ctx, std::span<const Fq> rvec) {
  if (rvec.size() != static_cast<size_t>(ctx->dim_r()))
    throw InputError("constant: R-coordinate vector has wrong size");
  std::vector<Fq> c(ctx->dim_l(), ctx->k.zero());
  for (int p = 0; p < ctx->hsize; ++p)
    for (int i = 0; i < ctx->dim_r(); ++i) c[ctx->lidx(p, i)] = rvec[i];
  return FnElement(std::move(ctx), std::move(c));
}

FnElement FnElement::operator+(const FnElement& o) const {
  if (ctx_->dim_l() != o.ctx_->dim_l()) throw InputError("FnElement shape mismatch");
  std::vector<Fq> c(c_);
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
  return FnElement(ctx_, std::move(c));
}

FnElement FnElement::operator-(const FnElement& o) const {
  if (ctx_->dim_l() != o.ctx_->dim_l()) throw InputError("FnElement shape mismatch");
  std::vector<Fq> c(c_);
  for (size_t i = 0; i < c.size(); ++i) c[i] -= o.c_[i];
  return FnElement(ctx_, std::move(c));
}

FnElement FnElement::operator*(const FnElement& o) const {
  if (ctx_->dim_l() != o.ctx_->dim_l() || ctx_->dim_r() != o.ctx_->dim_r())
    throw InputError("FnElement shape mismatch");
  const int dr = ctx_->dim_r();
  std::vector<Fq> c(c_.size(), ctx_->k.zero());
  for (int p = 0; p < ctx_->hsize; ++p) {
    std::span<const Fq> a(&c_[ctx_->lidx(p, 0)], dr);
    std::span<const Fq> b(&o.c_[ctx_->lidx(p, 0)], dr);
    auto prod = ctx_->R.multiply(a, b);
    for (int i = 0; i < dr; ++i) c[ctx_->lidx(p, i)] = std::move(prod[i]);
  }
  return FnElement(ctx_, std::move(c));
}

FnElement FnElement::scaled(const Fq& s) const {
  std::vector<Fq> c(c_);
  for (auto& v : c) v *= s;
  return FnElement(ctx_, std::move(c));
}

bool FnElement::is_zero() const {
  for (const auto& v : c_)
    if (!v.is_zero()) return false;
  return true;
}

bool FnElement::operator==(const FnElement& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

std::string FnElement::str() const {
  std::ostringstream os;
  os << "[";
  for (int p = 0; p < ctx_->hsize; ++p) {
    if (p) os << ", ";
    os << "(";
    for (int i = 0; i < ctx_->dim_r(); ++i) {
      if (i) os << ",";
      os << at(p, i).str();
    }
    os << ")";
  }
  os << "]";
  return os.str();
}

LOperator::LOperator(RingCtxPtr ctx, std::vector<Fq> m) : ctx_(std::move(ctx)), m_(std::move(m)) {
  size_t n = ctx_->dim_l();
  if (m_.size() != n * n) throw InputError("LOperator matrix has wrong size");
}

LOperator LOperator::zero(RingCtxPtr ctx) {
  size_t n = ctx->dim_l();
  std::vector<Fq> m(n * n, ctx->k.zero());
  return LOperator(std::move(ctx), std::move(m));
}

LOperator LOperator::identity(RingCtxPtr ctx) {
  size_t n = ctx->dim_l();
  std::vector<Fq> m(n * n, ctx->k.zero());
  for (size_t i = 0; i < n; ++i) m[i * n + i] = ctx->k.one();
  return LOperator(std::move(ctx), std::move(m));
}

LOperator LOperator::compose(const LOperator& o) const {
  const int n = ctx_->dim_l();
  LOperator out = LOperator::zero(ctx_);
  for (int r = 0; r < n; ++r)
    for (int k2 = 0; k2 < n; ++k2) {
      const Fq& a = at(r, k2);
      if (a.is_zero()) continue;
      for (int c = 0; c < n; ++c) {
        const Fq& b = o.at(k2, c);
        if (!b.is_zero()) out.at(r, c) += a * b;
      }
    }
  return out;
}

FnElement LOperator::apply(const FnElement& f) const {
  const int n = ctx_->dim_l();
  std::vector<Fq> c(n, ctx_->k.zero());
  for (int r = 0; r < n; ++r)
    for (int k2 = 0; k2 < n; ++k2) {
      const Fq& a = at(r, k2);
      if (!a.is_zero()) c[r] += a * f.coords()[k2];
    }
  return FnElement(ctx_, std::move(c));
}

LOperator LOperator::operator+(const LOperator& o) const {
  std::vector<Fq> m(m_);
  for (size_t i = 0; i < m.size(); ++i) m[i] += o.m_[i];
  return LOperator(ctx_, std::move(m));
}

LOperator LOperator::operator-(const LOperator& o) const {
  std::vector<Fq> m(m_);
  for (size_t i = 0; i < m.size(); ++i) m[i] -= o.m_[i];
  return LOperator(ctx_, std::move(m));
}

LOperator LOperator::scaled(const Fq& s) const {
  std::vector<Fq> m(m_);
  for (auto& v : m) v *= s;
  return LOperator(ctx_, std::move(m));
}

bool LOperator::is_zero() const {
  for (const auto& v : m_)
    if (!v.is_zero()) return false;
  return true;
}

bool LOperator::operator==(const LOperator& o) const {
  for (size_t i = 0; i < m_.size(); ++i)
    if (m_[i] != o.m_[i]) return false;
  return true;
}

std::string LOperator::str() const {
  const int n = ctx_->dim_l();
  std::ostringstream os;
  os << "[";
  for (int r = 0; r < n; ++r) {
    if (r) os << "; ";
    for (int c = 0; c < n; ++c) {
      if (c) os << ",";
      os << at(r, c).str();
    }
  }
  os << "]";
  return os.str();
}

LOperator rho_left(const FnElement& f) {
  const auto& ctx = f.ctx();
  const int dr = ctx.dim_r();
  LOperator out = LOperator::zero(f.ctx_ptr());
  for (int p = 0; p < ctx.hsize; ++p)
    for (int j = 0; j < dr; ++j)
      for (int i = 0; i < dr; ++i) {
        const Fq& fi = f.at(p, i);
        if (fi.is_zero()) continue;
        for (int t = 0; t < dr; ++t) {
          const Fq& s = ctx.R.mul[(i * dr + j) * dr + t];
          if (!s.is_zero()) out.at(ctx.lidx(p, t), ctx.lidx(p, j)) += fi * s;
        }
      }
  return out;
}

LOperator rho_right(const FnElement& f) {
  const auto& ctx = f.ctx();
  const int dr = ctx.dim_r();
  LOperator out = LOperator::zero(f.ctx_ptr());
  for (int p = 0; p < ctx.hsize; ++p)
    for (int j = 0; j < dr; ++j)
      for (int i = 0; i < dr; ++i) {
        const Fq& fi = f.at(p, i);
        if (fi.is_zero()) continue;
        for (int t = 0; t < dr; ++t) {
          const Fq& s = ctx.R.mul[(j * dr + i) * dr + t];
          if (!s.is_zero()) out.at(ctx.lidx(p, t), ctx.lidx(p, j)) += fi * s;
        }
      }
  return out;
}

AutomorphismT::AutomorphismT(RingCtxPtr ctx, std::vector<int> perm)
    : ctx_(std::move(ctx)), perm_(std::move(perm)) {
  if (perm_.size() != static_cast<size_t>(ctx_->hsize)) throw InputError("permutation has wrong size");
  std::vector<bool> seen(perm_.size(), false);
  for (int v : perm_) {
    if (v < 0 || v >= ctx_->hsize || seen[v]) throw InputError("not a permutation of the point set");
    seen[v] = true;
  }
}

AutomorphismT AutomorphismT::identity(RingCtxPtr ctx) {
  std::vector<int> p(ctx->hsize);
  for (int i = 0; i < ctx->hsize; ++i) p[i] = i;
  return AutomorphismT(std::move(ctx), std::move(p));
}

FnElement AutomorphismT::apply(const FnElement& f) const {
  const int dr = ctx_->dim_r();
  std::vector<Fq> c(ctx_->dim_l(), ctx_->k.zero());
  for (int p = 0; p < ctx_->hsize; ++p)
    for (int i = 0; i < dr; ++i) c[ctx_->lidx(p, i)] = f.at(perm_[p], i);
  return FnElement(ctx_, std::move(c));
}

AutomorphismT AutomorphismT::inverse() const {
  std::vector<int> inv(perm_.size());
  for (size_t i = 0; i < perm_.size(); ++i) inv[perm_[i]] = static_cast<int>(i);
  return AutomorphismT(ctx_, std::move(inv));
}

AutomorphismT AutomorphismT::compose(const AutomorphismT& o) const {
  // (this ∘ o)(f)(p) = (o f)(perm_[p]) = f(o.perm_[perm_[p]])
  std::vector<int> comp(perm_.size());
  for (size_t i = 0; i < perm_.size(); ++i) comp[i] = o.perm_[perm_[i]];
  return AutomorphismT(ctx_, std::move(comp));
}

LOperator AutomorphismT::as_operator() const {
  LOperator out = LOperator::zero(ctx_);
  for (int p = 0; p < ctx_->hsize; ++p)
    for (int i = 0; i < ctx_->dim_r(); ++i)
      out.at(ctx_->lidx(p, i), ctx_->lidx(perm_[p], i)) = ctx_->k.one();
  return out;
}

bool AutomorphismT::is_algebra_automorphism() const {
  if (apply(FnElement::one(ctx_)) != FnElement::one(ctx_)) return false;
  for (int p = 0; p < ctx_->hsize; ++p)
    for (int i = 0; i < ctx_->dim_r(); ++i) {
      auto ei = FnElement::basis(ctx_, p, i);
      for (int j = 0; j < ctx_->dim_r(); ++j) {
        auto ej = FnElement::basis(ctx_, p, j);
        if (apply(ei * ej) != apply(ei) * apply(ej)) return false;
      }
    }
  auto inv = inverse();
  return compose(inv).apply(FnElement::indicator(ctx_, 0)) == FnElement::indicator(ctx_, 0);
}

FnElement t_apply(const AutomorphismT& t, const FnElement& f) { return t.apply(f); }

}  // namespace hopfalgd
