#include "hopfalgd/sigma.hpp"

#include "hopfalgd/parallel.hpp"

namespace hopfalgd {

SigmaCtxPtr make_sigma_ctx(RingCtxPtr ring, Quasigroup q, TernaryOp tern, PiBijection pi) {
  if (ring->hsize != q.n) throw InputError("ring point set must match quasigroup size");
  if (tern.n != q.n) throw InputError("ternary operation size must match quasigroup size");
  if (static_cast<int>(pi.map.size()) != q.n) throw InputError("pi size must match quasigroup size");
  if (auto bad = q.validate_latin()) throw InputError("quasigroup is not Latin: " + bad->str());
  if (auto bad = tern.validate(); !bad.empty()) throw InputError("ternary axioms fail: " + bad.front().str());
  auto sc = std::make_shared<SigmaCtx>();
  sc->ring = std::move(ring);
  sc->q = std::move(q);
  sc->tern = std::move(tern);
  sc->pi = std::move(pi);
  sc->deg = DegreeMap::from(sc->q);
  return sc;
}

SigmaTensor::SigmaTensor(SigmaCtxPtr sc, std::vector<FnElement> entries)
    : sc_(std::move(sc)), e_(std::move(entries)) {
  size_t n = sc_->nx();
  if (e_.size() != n * n * n * n) throw InputError("sigma tensor has wrong entry count");
}

SigmaTensor SigmaTensor::build_from_quasigroup(SigmaCtxPtr sc) {
  const int n = sc->nx();
  const auto& q = sc->q;
  const auto& ring = sc->ring;
  std::vector<std::vector<Fq>> coords(static_cast<size_t>(n) * n * n * n,
                                      std::vector<Fq>(ring->dim_l(), ring->k.zero()));
  auto idx = [n](int a, int b, int c, int d) {
    return ((static_cast<size_t>(a) * n + b) * n + c) * n + d;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int p = 0; p < n; ++p) {
        int pb = q.mul(p, b);
        int pba = q.mul(pb, a);
        int m = sc->pi.bwd(sc->tern.eval(sc->pi.fwd(p), sc->pi.fwd(pb), sc->pi.fwd(pba)));
        int c = q.left_divide(m, pba);
        int d = q.left_divide(p, m);
        auto& v = coords[idx(a, b, c, d)];
        for (int i = 0; i < ring->dim_r(); ++i) v[ring->lidx(p, i)] += ring->R.unit[i];
      }
  std::vector<FnElement> entries;
  entries.reserve(coords.size());
  for (auto& v : coords) entries.emplace_back(ring, std::move(v));
  return SigmaTensor(sc, std::move(entries));
}

SigmaTensor SigmaTensor::mutated_add_unit(int a, int b, int c, int d, int point) const {
  std::vector<FnElement> entries(e_);
  auto coords = entries[idx(a, b, c, d)].coords();
  const auto& ring = sc_->ring;
  for (int i = 0; i < ring->dim_r(); ++i) coords[ring->lidx(point, i)] += ring->R.unit[i];
  entries[idx(a, b, c, d)] = FnElement(ring, std::move(coords));
  return SigmaTensor(sc_, std::move(entries));
}

bool SigmaTensor::row_sums_to_one() const {
  const int n = nx();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      FnElement sum = FnElement::zero(sc_->ring);
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) sum = sum + entry(a, b, c, d);
      if (sum != FnElement::one(sc_->ring)) return false;
    }
  return true;
}

SigmaTilde::SigmaTilde(const SigmaTensor& s) : sc_(s.sc_ptr()) {
  const int n = sc_->nx();
  e_.reserve(static_cast<size_t>(n) * n * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) e_.push_back(sc_->t_deg_inv(d).apply(s.entry(a, b, c, d)));
}

namespace {

// Shared driver: evaluate a per-tuple comparison over X^4 in parallel and
// return the canonically first counterexample.
template <typename Eval>
std::optional<SigmaCounterexample> first_counterexample(int n, int threads, Eval eval) {
  int64_t total = static_cast<int64_t>(n) * n * n * n;
  std::vector<uint8_t> bad(total, 0);
  parallel_for(total, threads, [&](int64_t i) { bad[i] = eval(i) ? 0 : 1; });
  for (int64_t i = 0; i < total; ++i) {
    if (!bad[i]) continue;
    int d = static_cast<int>(i % n), c = static_cast<int>(i / n % n),
        b = static_cast<int>(i / n / n % n), a = static_cast<int>(i / n / n / n);
    return eval.describe(a, b, c, d);
  }
  return std::nullopt;
}

struct TTEval {
  const SigmaTensor& s;
  int n;
  bool operator()(int64_t i) const {
    int d = static_cast<int>(i % n), c = static_cast<int>(i / n % n),
        b = static_cast<int>(i / n / n % n), a = static_cast<int>(i / n / n / n);
    return lhs(a, b, c, d) == rhs(a, b, c, d);
  }
  FnElement lhs(int a, int b, int c, int d) const {
    return s.sc().t_deg_inv(a).apply(s.sc().t_deg_inv(c).apply(s.entry(b, d, a, c)));
  }
  FnElement rhs(int a, int b, int c, int d) const {
    return s.sc().t_deg_inv(b).apply(s.sc().t_deg_inv(d).apply(s.entry(b, d, a, c)));
  }
  SigmaCounterexample describe(int a, int b, int c, int d) const {
    return {a, b, c, d, lhs(a, b, c, d).str(), rhs(a, b, c, d).str()};
  }
};

struct OperatorEval {
  const SigmaTensor& s;
  int n;
  bool left_form;  // true: rho/T on the right; false: T-inverses on the left
  bool operator()(int64_t i) const {
    int d = static_cast<int>(i % n), c = static_cast<int>(i / n % n),
        b = static_cast<int>(i / n / n % n), a = static_cast<int>(i / n / n / n);
    return lhs(a, b, c, d) == rhs(a, b, c, d);
  }
  LOperator lhs(int a, int b, int c, int d) const {
    const auto& sc = s.sc();
    const FnElement& f = s.entry(b, d, a, c);
    if (left_form)
      return rho_left(f).compose(sc.t_deg(d).as_operator()).compose(sc.t_deg(b).as_operator());
    return sc.t_deg_inv(a).as_operator().compose(sc.t_deg_inv(c).as_operator()).compose(rho_left(f));
  }
  LOperator rhs(int a, int b, int c, int d) const {
    const auto& sc = s.sc();
    const FnElement& f = s.entry(b, d, a, c);
    if (left_form)
      return rho_right(f).compose(sc.t_deg(c).as_operator()).compose(sc.t_deg(a).as_operator());
    return sc.t_deg_inv(b).as_operator().compose(sc.t_deg_inv(d).as_operator()).compose(rho_right(f));
  }
  SigmaCounterexample describe(int a, int b, int c, int d) const {
    return {a, b, c, d, lhs(a, b, c, d).str(), rhs(a, b, c, d).str()};
  }
};

}  // namespace

std::optional<SigmaCounterexample> check_tt(const SigmaTensor& s, int threads) {
  return first_counterexample(s.nx(), threads, TTEval{s, s.nx()});
}

std::optional<SigmaCounterexample> check_left_rhot(const SigmaTensor& s, int threads) {
  return first_counterexample(s.nx(), threads, OperatorEval{s, s.nx(), true});
}

std::optional<SigmaCounterexample> check_right_rhot(const SigmaTensor& s, int threads) {
  return first_counterexample(s.nx(), threads, OperatorEval{s, s.nx(), false});
}

RemarkReport check_remark_equivalence(const SigmaTensor& s, int threads) {
  RemarkReport r;
  r.right_ok = !check_right_rhot(s, threads).has_value();
  r.left_ok = !check_left_rhot(s, threads).has_value();
  r.tt_ok = !check_tt(s, threads).has_value();
  return r;
}

}  // namespace hopfalgd
