#include "hopfalgd/freealg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hopfalgd/parallel.hpp"

namespace hopfalgd {

std::string letter_str(const Letter& l) {
  std::ostringstream os;
  os << (l.kind == kLetterL ? "L[" : "Li[") << l.a << "," << l.b << "]";
  return os.str();
}

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ".";
    out += letter_str(unpack_letter(w[i]));
  }
  return out;
}

Letter parse_letter(const std::string& s) {
  uint32_t kind;
  size_t pos;
  if (s.rfind("Li[", 0) == 0) {
    kind = kLetterLi;
    pos = 3;
  } else if (s.rfind("L[", 0) == 0) {
    kind = kLetterL;
    pos = 2;
  } else {
    throw InputError("bad letter '" + s + "'");
  }
  size_t comma = s.find(',', pos), close = s.find(']', pos);
  if (comma == std::string::npos || close == std::string::npos || close != s.size() - 1 || comma > close)
    throw InputError("bad letter '" + s + "'");
  try {
    int a = std::stoi(s.substr(pos, comma - pos));
    int b = std::stoi(s.substr(comma + 1, close - comma - 1));
    if (a < 0 || b < 0 || a > 255 || b > 255) throw InputError("letter index out of range in '" + s + "'");
    return Letter{kind, a, b};
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError("bad letter '" + s + "'");
  }
}

CoeffLL::CoeffLL(RingCtxPtr rc, SparseVec v) : rc_(std::move(rc)), v_(std::move(v)) {}

CoeffLL CoeffLL::zero(RingCtxPtr rc) { return CoeffLL(std::move(rc), SparseVec()); }

CoeffLL CoeffLL::unit(RingCtxPtr rc) {
  auto one = FnElement::one(rc);
  return of_pair(one, one);
}

CoeffLL CoeffLL::of_pair(const FnElement& f, const FnElement& g) {
  const auto& rc = f.ctx_ptr();
  const uint64_t dl = rc->dim_l();
  std::map<uint64_t, Fq> m;
  for (uint64_t p = 0; p < dl; ++p) {
    const Fq& fp = f.coords()[p];
    if (fp.is_zero()) continue;
    for (uint64_t q = 0; q < dl; ++q) {
      const Fq& gq = g.coords()[q];
      if (!gq.is_zero()) m[p * dl + q] = fp * gq;
    }
  }
  return CoeffLL(rc, SparseVec::from_map(m));
}

CoeffLL CoeffLL::basis(RingCtxPtr rc, uint64_t idx) {
  Fq one = rc->k.one();
  return CoeffLL(std::move(rc), SparseVec::single(idx, std::move(one)));
}

CoeffLL CoeffLL::operator+(const CoeffLL& o) const {
  SparseVec v = v_;
  v.axpy(rc_->k.one(), o.v_);
  return CoeffLL(rc_, std::move(v));
}

CoeffLL CoeffLL::operator*(const CoeffLL& o) const {
  const int dr = rc_->dim_r();
  const uint64_t dl = rc_->dim_l();
  const auto& mul = rc_->R.mul;
  std::map<uint64_t, Fq> acc;
  for (const auto& [i1, v1] : v_.entries()) {
    const uint64_t p1 = i1 / dl, q1 = i1 % dl;
    const int lam1 = static_cast<int>(p1) / dr, i = static_cast<int>(p1) % dr;
    const int mu1 = static_cast<int>(q1) / dr, j = static_cast<int>(q1) % dr;
    for (const auto& [i2, v2] : o.v_.entries()) {
      const uint64_t p2 = i2 / dl, q2 = i2 % dl;
      const int lam2 = static_cast<int>(p2) / dr, i2r = static_cast<int>(p2) % dr;
      const int mu2 = static_cast<int>(q2) / dr, j2r = static_cast<int>(q2) % dr;
      if (lam1 != lam2 || mu1 != mu2) continue;
      Fq w = v1 * v2;
      // first legs multiply in order, second legs opposite
      for (int t = 0; t < dr; ++t) {
        const Fq& c1 = mul[(i * dr + i2r) * dr + t];
        if (c1.is_zero()) continue;
        for (int s = 0; s < dr; ++s) {
          const Fq& c2 = mul[(j2r * dr + j) * dr + s];
          if (c2.is_zero()) continue;
          uint64_t key = (static_cast<uint64_t>(lam1) * dr + t) * dl + static_cast<uint64_t>(mu1) * dr + s;
          auto [it, ins] = acc.try_emplace(key, rc_->k.zero());
          it->second += w * c1 * c2;
        }
      }
    }
  }
  return CoeffLL(rc_, SparseVec::from_map(acc));
}

CoeffLL CoeffLL::scaled(const Fq& s) const {
  SparseVec v = v_;
  v.scale(s);
  return CoeffLL(rc_, std::move(v));
}

void move_maps(const Word& w, const SigmaCtx& sc, std::vector<int>& leg1, std::vector<int>& leg2) {
  const int h = sc.ring->hsize;
  leg1.resize(h);
  leg2.resize(h);
  for (int p = 0; p < h; ++p) leg1[p] = leg2[p] = p;
  // The move applies the last letter first; compose position maps accordingly.
  for (size_t i = w.size(); i-- > 0;) {
    Letter l = unpack_letter(w[i]);
    const std::vector<int>* f1;
    const std::vector<int>* f2;
    if (l.kind == kLetterL) {
      f1 = &sc.deg.perm_inv[l.a];
      f2 = &sc.deg.perm_inv[l.b];
    } else {
      f1 = &sc.deg.perm[l.b];
      f2 = &sc.deg.perm[l.a];
    }
    for (int p = 0; p < h; ++p) {
      leg1[p] = (*f1)[leg1[p]];
      leg2[p] = (*f2)[leg2[p]];
    }
  }
}

CoeffLL CoeffLL::moved_left_across(const Word& w, const SigmaCtx& sc) const {
  if (w.empty() || v_.empty()) return *this;
  std::vector<int> map1, map2;
  move_maps(w, sc, map1, map2);
  const int dr = rc_->dim_r();
  const uint64_t dl = rc_->dim_l();
  std::map<uint64_t, Fq> m;
  for (const auto& [idx, val] : v_.entries()) {
    const uint64_t p = idx / dl, q = idx % dl;
    uint64_t np = static_cast<uint64_t>(map1[p / dr]) * dr + p % dr;
    uint64_t nq = static_cast<uint64_t>(map2[q / dr]) * dr + q % dr;
    m[np * dl + nq] = val;
  }
  return CoeffLL(rc_, SparseVec::from_map(m));
}

FreeElement FreeElement::zero(SigmaCtxPtr sc) { return FreeElement(std::move(sc)); }

FreeElement FreeElement::unit(SigmaCtxPtr sc) {
  FreeElement e(sc);
  e.add_term(Word(), CoeffLL::unit(sc->ring));
  return e;
}

FreeElement FreeElement::letter(SigmaCtxPtr sc, uint32_t kind, int a, int b) {
  FreeElement e(sc);
  Word w(1, pack_letter(kind, a, b));
  e.add_term(w, CoeffLL::unit(sc->ring));
  return e;
}

FreeElement FreeElement::word(SigmaCtxPtr sc, const Word& w) {
  FreeElement e(sc);
  e.add_term(w, CoeffLL::unit(sc->ring));
  return e;
}

FreeElement FreeElement::coeff(SigmaCtxPtr sc, CoeffLL c) {
  FreeElement e(sc);
  e.add_term(Word(), c);
  return e;
}

int FreeElement::degree() const {
  size_t d = 0;
  for (const auto& [w, c] : t_) d = std::max(d, w.size());
  return static_cast<int>(d);
}

FreeElement& FreeElement::add_term(const Word& w, const CoeffLL& c) {
  if (c.is_zero()) return *this;
  auto it = t_.find(w);
  if (it == t_.end()) {
    t_.emplace(w, c);
  } else {
    CoeffLL sum = it->second + c;
    if (sum.is_zero())
      t_.erase(it);
    else
      it->second = sum;
  }
  return *this;
}

FreeElement FreeElement::operator+(const FreeElement& o) const {
  FreeElement out(*this);
  for (const auto& [w, c] : o.t_) out.add_term(w, c);
  return out;
}

FreeElement FreeElement::operator-(const FreeElement& o) const {
  FreeElement out(*this);
  Fq neg = -sc_->ring->k.one();
  for (const auto& [w, c] : o.t_) out.add_term(w, c.scaled(neg));
  return out;
}

FreeElement FreeElement::operator*(const FreeElement& o) const {
  FreeElement out(sc_);
  for (const auto& [w1, c1] : t_)
    for (const auto& [w2, c2] : o.t_) {
      Word w = w1 + w2;
      out.add_term(w, c1 * c2.moved_left_across(w1, *sc_));
    }
  return out;
}

FreeElement FreeElement::scaled(const Fq& s) const {
  FreeElement out(sc_);
  for (const auto& [w, c] : t_) out.add_term(w, c.scaled(s));
  return out;
}

bool FreeElement::operator==(const FreeElement& o) const {
  if (t_.size() != o.t_.size()) return false;
  auto it = t_.begin();
  auto jt = o.t_.begin();
  for (; it != t_.end(); ++it, ++jt) {
    if (it->first != jt->first) return false;
    if (!(it->second == jt->second)) return false;
  }
  return true;
}

std::string FreeElement::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(";
    bool f2 = true;
    for (const auto& [i, v] : c.vec().entries()) {
      if (!f2) os << ", ";
      f2 = false;
      os << i << ":" << v.str();
    }
    os << ")*" << word_str(w);
  }
  return os.str();
}

FreeElement straighten(const SigmaCtxPtr& sc, const std::vector<RawTerm>& raw) {
  FreeElement out(sc);
  for (const auto& term : raw) {
    CoeffLL acc = CoeffLL::unit(sc->ring);
    Word w;
    for (const auto& rl : term.seq) {
      if (std::holds_alternative<Letter>(rl)) {
        const Letter& l = std::get<Letter>(rl);
        w.push_back(pack_letter(l.kind, l.a, l.b));
      } else {
        acc = acc * std::get<CoeffLL>(rl).moved_left_across(w, *sc);
      }
    }
    out.add_term(w, acc.scaled(term.scalar));
  }
  return out;
}

std::string RelId::str() const {
  std::ostringstream os;
  switch (kind) {
    case RelKind::R2a: os << "R2a[" << a << "," << b << "]"; break;
    case RelKind::R2b: os << "R2b[" << a << "," << b << "]"; break;
    case RelKind::R4: os << "R4[" << a << "," << b << "," << c << "," << d << "]"; break;
  }
  return os.str();
}

RelationSet RelationSet::build(const SigmaTensor& s) {
  RelationSet out;
  out.sc_ = s.sc_ptr();
  const auto& sc = out.sc_;
  const auto& rc = sc->ring;
  const int n = sc->nx();
  const auto one = FnElement::one(rc);
  const Fq neg = -rc->k.one();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      FreeElement r(sc);
      for (int c = 0; c < n; ++c) {
        Word w;
        w.push_back(pack_letter(kLetterL, a, c));
        w.push_back(pack_letter(kLetterLi, c, b));
        r.add_term(w, CoeffLL::unit(rc));
      }
      if (a == b) r.add_term(Word(), CoeffLL::unit(rc).scaled(neg));
      out.ids_.push_back(RelId{RelKind::R2a, a, b, 0, 0});
      out.rels_.push_back(std::move(r));
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      FreeElement r(sc);
      for (int c = 0; c < n; ++c) {
        Word w;
        w.push_back(pack_letter(kLetterLi, a, c));
        w.push_back(pack_letter(kLetterL, c, b));
        r.add_term(w, CoeffLL::unit(rc));
      }
      if (a == b) r.add_term(Word(), CoeffLL::unit(rc).scaled(neg));
      out.ids_.push_back(RelId{RelKind::R2b, a, b, 0, 0});
      out.rels_.push_back(std::move(r));
    }
  out.r2_count_ = out.rels_.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          FreeElement r(sc);
          for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
              Word w1;
              w1.push_back(pack_letter(kLetterL, y, d));
              w1.push_back(pack_letter(kLetterL, x, b));
              r.add_term(w1, CoeffLL::of_pair(s.entry(x, y, a, c), one));
              Word w2;
              w2.push_back(pack_letter(kLetterL, c, y));
              w2.push_back(pack_letter(kLetterL, a, x));
              r.add_term(w2, CoeffLL::of_pair(one, s.entry(b, d, x, y)).scaled(neg));
            }
          out.ids_.push_back(RelId{RelKind::R4, a, b, c, d});
          out.rels_.push_back(std::move(r));
        }
  return out;
}

int RelationSet::degree(size_t i) const { return rels_[i].degree(); }

bool absorbed_families_vanish(const SigmaTensor& s, std::string* diagnostic) {
  const auto& sc = s.sc_ptr();
  const auto& rc = sc->ring;
  auto fail = [&](const std::string& what) {
    if (diagnostic) *diagnostic = what;
    return false;
  };
  const Fq one = rc->k.one();
  const Fq neg = -one;

  // unit family: the empty word is the coefficient unit
  {
    std::vector<RawTerm> raw;
    raw.push_back(RawTerm{one, {}});
    raw.push_back(RawTerm{neg, {RawLetter(CoeffLL::unit(rc))}});
    if (!straighten(sc, raw).is_zero()) return fail("empty word != unit coefficient");
  }

  // merge family on a spread of basis pairs, plus linearity samples
  {
    const uint64_t dl = rc->dim_l();
    for (uint64_t i = 0; i < dl * dl; ++i) {
      uint64_t j = (i * 7 + 3) % (dl * dl);
      CoeffLL x = CoeffLL::basis(rc, i), y = CoeffLL::basis(rc, j);
      std::vector<RawTerm> raw;
      raw.push_back(RawTerm{one, {RawLetter(x), RawLetter(y)}});
      raw.push_back(RawTerm{neg, {RawLetter(x * y)}});
      if (!straighten(sc, raw).is_zero()) return fail("adjacent coefficients fail to merge");
      CoeffLL sum = x + y.scaled(rc->k.from_long(2));
      std::vector<RawTerm> raw2;
      raw2.push_back(RawTerm{one, {RawLetter(x)}});
      raw2.push_back(RawTerm{rc->k.from_long(2), {RawLetter(y)}});
      raw2.push_back(RawTerm{neg, {RawLetter(sum)}});
      if (!straighten(sc, raw2).is_zero()) return fail("coefficient linearity fails");
    }
  }

  // exchange family over every basis element of L and all letters
  const int n = sc->nx();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int p = 0; p < rc->hsize; ++p)
        for (int i = 0; i < rc->dim_r(); ++i) {
          FnElement f = FnElement::basis(rc, p, i);
          FnElement fone = FnElement::one(rc);
          FnElement ta = sc->t_deg(a).apply(f);
          FnElement tb = sc->t_deg(b).apply(f);
          Letter L{kLetterL, a, b}, Li{kLetterLi, a, b};
          auto check = [&](CoeffLL lhs_c, Letter lhs_l, Letter rhs_l, CoeffLL rhs_c, const char* what) {
            std::vector<RawTerm> raw;
            raw.push_back(RawTerm{one, {RawLetter(lhs_c), RawLetter(lhs_l)}});
            raw.push_back(RawTerm{neg, {RawLetter(rhs_l), RawLetter(rhs_c)}});
            return straighten(sc, raw).is_zero() ? true : fail(what);
          };
          if (!check(CoeffLL::of_pair(ta, fone), L, L, CoeffLL::of_pair(f, fone),
                     "exchange fails for (T f ⊗ 1)·L"))
            return false;
          if (!check(CoeffLL::of_pair(fone, tb), L, L, CoeffLL::of_pair(fone, f),
                     "exchange fails for (1 ⊗ T f)·L"))
            return false;
          if (!check(CoeffLL::of_pair(f, fone), Li, Li, CoeffLL::of_pair(tb, fone),
                     "exchange fails for (f ⊗ 1)·Li"))
            return false;
          if (!check(CoeffLL::of_pair(fone, f), Li, Li, CoeffLL::of_pair(fone, ta),
                     "exchange fails for (1 ⊗ f)·Li"))
            return false;
        }
  return true;
}

namespace {

// interning of words; row index = word_id * dimLL + coefficient index
struct ColumnSpace {
  std::map<Word, uint64_t> ids;
  uint64_t dimLL;

  explicit ColumnSpace(uint64_t d) : dimLL(d) {}

  uint64_t word_id(const Word& w) {
    auto [it, ins] = ids.try_emplace(w, ids.size());
    return it->second;
  }

  SparseVec flatten(const FreeElement& fe) {
    std::map<uint64_t, Fq> m;
    for (const auto& [w, c] : fe.terms()) {
      uint64_t base = word_id(w) * dimLL;
      for (const auto& [i, v] : c.vec().entries()) m[base + i] = v;
    }
    return SparseVec::from_map(m);
  }
};

std::vector<Word> words_of_length(const SigmaCtx& sc, int len) {
  std::vector<char32_t> alphabet;
  const int n = sc.nx();
  for (uint32_t kind = 0; kind <= 1; ++kind)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) alphabet.push_back(pack_letter(kind, a, b));
  std::vector<Word> out;
  Word cur(len, alphabet.empty() ? 0 : alphabet[0]);
  std::vector<size_t> odo(len, 0);
  if (len == 0) {
    out.push_back(Word());
    return out;
  }
  while (true) {
    for (int i = 0; i < len; ++i) cur[i] = alphabet[odo[i]];
    out.push_back(cur);
    int pos = len - 1;
    while (pos >= 0 && ++odo[pos] == alphabet.size()) {
      odo[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

std::optional<SparseVec> vec_mod_p(const SparseVec& v, uint32_t p) {
  std::map<uint64_t, Fq> m;
  for (const auto& [i, val] : v.entries()) {
    const mpq_class& q = val.rat();
    uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
    if (den == 0) return std::nullopt;
    uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p);
    Fq r = Fq::residue(static_cast<int64_t>(num), p) / Fq::residue(static_cast<int64_t>(den), p);
    if (!r.is_zero()) m[i] = r;
  }
  return SparseVec::from_map(m);
}

struct SpanProblem {
  const RelationSet& rels;
  int D;
  std::vector<IdealColumn> cols;
  ColumnSpace space;
  uint64_t dimLL;

  SpanProblem(const RelationSet& r, int d, int threads)
      : rels(r),
        D(d),
        cols(enumerate_ideal_columns(r, d, threads)),
        space(static_cast<uint64_t>(r.sc_ptr()->ring->dim_l()) *
              static_cast<uint64_t>(r.sc_ptr()->ring->dim_l())),
        dimLL(space.dimLL) {}

  SparseVec column(size_t desc, uint64_t xi) {
    const auto& rc = rels.sc_ptr()->ring;
    FreeElement scaledcol = FreeElement::zero(rels.sc_ptr());
    CoeffLL xic = CoeffLL::basis(rc, xi);
    for (const auto& [w, c] : cols[desc].elem.terms()) scaledcol.add_term(w, xic * c);
    return space.flatten(scaledcol);
  }
};

MembershipCertificate build_certificate(const SpanProblem& prob, const FreeElement& target,
                                        const SparseVec& comb, bool negate, bool gfp) {
  MembershipCertificate cert{target, {}, gfp};
  for (const auto& [gid, c] : comb.entries()) {
    size_t desc = gid / prob.dimLL;
    uint64_t xi = gid % prob.dimLL;
    CertTerm t;
    t.rel_index = prob.cols[desc].rel;
    t.u = prob.cols[desc].u;
    t.v = prob.cols[desc].v;
    t.coeff_basis = xi;
    t.scalar = negate ? -c : c;
    cert.terms.push_back(std::move(t));
  }
  return cert;
}

struct DriverOutcome {
  bool member = false;
  SparseVec comb;  // combination with certificate sign convention
  MembershipStats stats;
};

// Incremental echelon over the span with optional restriction to the
// row-connected component of the target (complete: any combination can be
// restricted to columns word-connected to the target) and early exit.
DriverOutcome run_driver(SpanProblem& prob, const SparseVec& target_flat,
                         const std::vector<std::vector<uint64_t>>& desc_words,
                         const MembershipOptions& opts, uint32_t modp) {
  DriverOutcome out;
  const Field field = modp ? Field::gf(modp) : prob.rels.sc_ptr()->ring->k;
  SpanSolver solver(field, true);
  SparseVec residual = target_flat;
  SparseVec tcomb;
  if (residual.empty()) {
    out.member = true;
    return out;
  }
  std::set<uint64_t> active;
  for (const auto& [row, v] : residual.entries()) active.insert(row / prob.dimLL);
  std::vector<uint8_t> used(prob.cols.size(), 0);
  bool progress = true;
  while (progress) {
    progress = false;
    ++out.stats.passes;
    for (size_t desc = 0; desc < prob.cols.size(); ++desc) {
      if (used[desc]) continue;
      if (opts.prune_connected) {
        bool touch = false;
        for (uint64_t w : desc_words[desc])
          if (active.count(w)) {
            touch = true;
            break;
          }
        if (!touch) continue;
      }
      used[desc] = 1;
      progress = true;
      for (uint64_t w : desc_words[desc]) active.insert(w);
      for (uint64_t xi = 0; xi < prob.dimLL; ++xi) {
        ++out.stats.columns;
        if (opts.max_columns && out.stats.columns > opts.max_columns) {
          out.stats.aborted = true;
          return out;
        }
        SparseVec col = prob.column(desc, xi);
        if (modp) {
          auto mapped = vec_mod_p(col, modp);
          if (!mapped) {
            out.stats.aborted = true;
            return out;
          }
          col = std::move(*mapped);
        }
        if (solver.add_column(desc * prob.dimLL + xi, std::move(col))) ++out.stats.inserted;
      }
      solver.reduce(residual, &tcomb);
      if (residual.empty()) {
        out.member = true;
        out.comb = std::move(tcomb);
        // run_driver's reduce convention accumulates the negated combination
        out.comb.scale(-field.one());
        return out;
      }
    }
    if (!opts.prune_connected) break;  // one pass covers everything
  }
  return out;
}

}  // namespace

std::vector<IdealColumn> enumerate_ideal_columns(const RelationSet& rels, int D, int threads) {
  const auto& sc = rels.sc_ptr();
  int min_deg = D;
  for (size_t r = 0; r < rels.size(); ++r) min_deg = std::min(min_deg, rels.degree(r));
  const int max_len = std::max(0, D - min_deg);
  std::vector<std::vector<Word>> wl;
  for (int len = 0; len <= max_len; ++len) wl.push_back(words_of_length(*sc, len));
  std::vector<IdealColumn> out;
  for (size_t r = 0; r < rels.size(); ++r) {
    int dg = rels.degree(r);
    for (int lu = 0; lu + dg <= D && lu <= max_len; ++lu)
      for (const auto& u : wl[lu])
        for (int lv = 0; lu + dg + lv <= D && lv <= max_len; ++lv)
          for (const auto& v : wl[lv]) out.push_back(IdealColumn{r, u, v, FreeElement(sc)});
  }
  parallel_for(static_cast<int64_t>(out.size()), threads, [&](int64_t i) {
    auto& col = out[i];
    col.elem = FreeElement::word(sc, col.u) * rels.rel(col.rel) * FreeElement::word(sc, col.v);
  });
  return out;
}

MembershipResult ideal_membership(const FreeElement& target, const RelationSet& rels, int D,
                                  const MembershipOptions& opts) {
  MembershipResult res;
  if (target.is_zero()) {
    res.member = true;
    res.cert = MembershipCertificate{target, {}, false};
    return res;
  }
  if (D < target.degree())
    throw InputError("degree bound " + std::to_string(D) + " below target degree " +
                     std::to_string(target.degree()));

  SpanProblem prob(rels, D, opts.threads);
  SparseVec tf = prob.space.flatten(target);
  std::vector<std::vector<uint64_t>> desc_words(prob.cols.size());
  for (size_t i = 0; i < prob.cols.size(); ++i)
    for (const auto& [w, c] : prob.cols[i].elem.terms())
      desc_words[i].push_back(prob.space.word_id(w));

  const Field& k = rels.sc_ptr()->ring->k;
  bool gfp_native = !k.rational();

  if (opts.gfp_prepass && k.rational()) {
    auto tmod = vec_mod_p(tf, opts.prepass_prime);
    if (tmod) {
      DriverOutcome pre = run_driver(prob, *tmod, desc_words, opts, opts.prepass_prime);
      if (pre.member) {
        // restricted rational re-solve over the support found modulo p
        SpanSolver solver(k, true);
        for (const auto& [gid, c] : pre.comb.entries())
          solver.add_column(gid, prob.column(gid / prob.dimLL, gid % prob.dimLL));
        if (auto comb = solver.solve(tf)) {
          res.member = true;
          res.cert = build_certificate(prob, target, *comb, false, false);
          res.stats = pre.stats;
          std::string diag;
          if (!replay(*res.cert, rels, &diag))
            throw std::logic_error("membership certificate failed replay: " + diag);
          return res;
        }
      }
      // fall through to the full rational solve
    }
  }

  DriverOutcome outc = run_driver(prob, tf, desc_words, opts, 0);
  res.stats = outc.stats;
  res.member = outc.member;
  if (outc.member) {
    res.cert = build_certificate(prob, target, outc.comb, false, gfp_native);
    std::string diag;
    if (!replay(*res.cert, rels, &diag))
      throw std::logic_error("membership certificate failed replay: " + diag);
  }
  return res;
}

ModEqResult mod_eq(const FreeElement& u, const FreeElement& v, const RelationSet& rels, int D,
                   const MembershipOptions& opts) {
  ModEqResult r;
  FreeElement diff = u - v;
  if (diff.is_zero()) {
    r.equal = true;
    r.cert = MembershipCertificate{diff, {}, false};
    return r;
  }
  MembershipResult m = ideal_membership(diff, rels, D, opts);
  r.equal = m.member;
  r.cert = std::move(m.cert);
  r.stats = m.stats;
  return r;
}

bool replay(const MembershipCertificate& cert, const RelationSet& rels, std::string* diagnostic) {
  const auto& sc = rels.sc_ptr();
  FreeElement acc = FreeElement::zero(sc);
  for (const auto& t : cert.terms) {
    FreeElement x = FreeElement::word(sc, t.u) * rels.rel(t.rel_index) * FreeElement::word(sc, t.v);
    CoeffLL xi = CoeffLL::basis(sc->ring, t.coeff_basis).scaled(t.scalar);
    for (const auto& [w, c] : x.terms()) acc.add_term(w, xi * c);
  }
  if (acc == cert.target) return true;
  if (diagnostic) *diagnostic = "replay difference: " + (acc - cert.target).str();
  return false;
}

std::optional<MembershipCertificate> rational_replay(const MembershipCertificate& cert,
                                                     const RelationSet& rational_rels,
                                                     const FreeElement& rational_target, int D) {
  const auto& sc = rational_rels.sc_ptr();
  if (!sc->ring->k.rational()) throw InputError("rational_replay needs a rational relation set");
  // canonical order over the certificate's support
  std::vector<CertTerm> terms = cert.terms;
  std::sort(terms.begin(), terms.end(), [](const CertTerm& a, const CertTerm& b) {
    auto ka = std::make_tuple(a.rel_index, a.u.size(), a.u, a.v.size(), a.v, a.coeff_basis);
    auto kb = std::make_tuple(b.rel_index, b.u.size(), b.u, b.v.size(), b.v, b.coeff_basis);
    return ka < kb;
  });
  terms.erase(std::unique(terms.begin(), terms.end(),
                          [](const CertTerm& a, const CertTerm& b) {
                            return a.rel_index == b.rel_index && a.u == b.u && a.v == b.v &&
                                   a.coeff_basis == b.coeff_basis;
                          }),
              terms.end());
  const uint64_t dimLL =
      static_cast<uint64_t>(sc->ring->dim_l()) * static_cast<uint64_t>(sc->ring->dim_l());
  ColumnSpace space(dimLL);
  SparseVec tf = space.flatten(rational_target);
  SpanSolver solver(sc->ring->k, true);
  for (size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    if (static_cast<int>(t.u.size() + t.v.size()) + rational_rels.degree(t.rel_index) > D) return std::nullopt;
    FreeElement x = FreeElement::word(sc, t.u) * rational_rels.rel(t.rel_index) *
                    FreeElement::word(sc, t.v);
    FreeElement col = FreeElement::zero(sc);
    CoeffLL xi = CoeffLL::basis(sc->ring, t.coeff_basis);
    for (const auto& [w, c] : x.terms()) col.add_term(w, xi * c);
    solver.add_column(i, space.flatten(col));
  }
  auto comb = solver.solve(tf);
  if (!comb) return std::nullopt;
  MembershipCertificate out{rational_target, {}, false};
  for (const auto& [i, c] : comb->entries()) {
    CertTerm t = terms[i];
    t.scalar = c;
    out.terms.push_back(std::move(t));
  }
  std::string diag;
  if (!replay(out, rational_rels, &diag)) return std::nullopt;
  return out;
}

struct MembershipEngine::Impl {
  RelationSet rels;  // owned: the engine outlives its construction arguments
  SpanProblem prob;
  SpanSolver solver;
  int D;

  Impl(const RelationSet& r, int d, int threads)
      : rels(r), prob(rels, d, threads), solver(rels.sc_ptr()->ring->k, true), D(d) {
    for (size_t desc = 0; desc < prob.cols.size(); ++desc)
      for (uint64_t xi = 0; xi < prob.dimLL; ++xi)
        solver.add_column(desc * prob.dimLL + xi, prob.column(desc, xi));
  }
};

MembershipEngine::MembershipEngine(const RelationSet& rels, int D, int threads)
    : impl_(std::make_unique<Impl>(rels, D, threads)) {}

MembershipEngine::~MembershipEngine() = default;

int MembershipEngine::degree_bound() const { return impl_->D; }

MembershipOracle::MembershipOracle(const RelationSet& rels, int D, MembershipOptions opts)
    : rels_(rels), D_(D), opts_(opts) {
  // descriptor count of the bounded span; the engine is worthwhile only while
  // the full echelon stays small
  const int n = rels.sc_ptr()->nx();
  uint64_t letters = 2ull * n * n;
  uint64_t pairs = 0;
  for (int lu = 0; lu + 2 <= D; ++lu)
    for (int lv = 0; lu + 2 + lv <= D; ++lv) {
      uint64_t wu = 1, wv = 1;
      for (int i = 0; i < lu; ++i) wu *= letters;
      for (int i = 0; i < lv; ++i) wv *= letters;
      pairs += wu * wv;
    }
  uint64_t dimLL = static_cast<uint64_t>(rels.sc_ptr()->ring->dim_l()) *
                   rels.sc_ptr()->ring->dim_l();
  if (rels.size() * pairs * dimLL <= 150000)
    engine_.emplace(rels, D, opts.threads);
}

MembershipResult MembershipOracle::query(const FreeElement& target) {
  if (engine_) return engine_->query(target);
  return ideal_membership(target, rels_, D_, opts_);
}

MembershipResult MembershipEngine::query(const FreeElement& target) {
  MembershipResult res;
  if (target.is_zero()) {
    res.member = true;
    res.cert = MembershipCertificate{target, {}, false};
    return res;
  }
  if (impl_->D < target.degree())
    throw InputError("degree bound " + std::to_string(impl_->D) + " below target degree " +
                     std::to_string(target.degree()));
  SparseVec tf = impl_->prob.space.flatten(target);
  auto comb = impl_->solver.solve(tf);
  res.stats.columns = impl_->prob.cols.size() * impl_->prob.dimLL;
  res.stats.inserted = impl_->solver.rank();
  if (!comb) return res;
  res.member = true;
  bool gfp = !impl_->prob.rels.sc_ptr()->ring->k.rational();
  res.cert = build_certificate(impl_->prob, target, *comb, false, gfp);
  std::string diag;
  if (!replay(*res.cert, impl_->prob.rels, &diag))
    throw std::logic_error("membership certificate failed replay: " + diag);
  return res;
}

}  // namespace hopfalgd
