#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hopfalgd/sigma.hpp"
#include "hopfalgd/spansolver.hpp"

namespace hopfalgd {

// Generator letters besides coefficients: L[a,b] and the formal inverse
// Li[a,b]. A word is a sequence of letters packed into a u32string, so words
// compare lexicographically for free and short words stay inline.
enum : uint32_t { kLetterL = 0, kLetterLi = 1 };

struct Letter {
  uint32_t kind;
  int a, b;
};

inline char32_t pack_letter(uint32_t kind, int a, int b) {
  return static_cast<char32_t>((kind << 16) | (static_cast<uint32_t>(a) << 8) |
                               static_cast<uint32_t>(b));
}

inline Letter unpack_letter(char32_t c) {
  uint32_t v = static_cast<uint32_t>(c);
  return Letter{v >> 16, static_cast<int>((v >> 8) & 0xff), static_cast<int>(v & 0xff)};
}

using Word = std::u32string;

std::string letter_str(const Letter& l);  // "L[a,b]" / "Li[a,b]"
std::string word_str(const Word& w);
Letter parse_letter(const std::string& s);

// Element of L ⊗ L^op, sparse over the basis pairs of the fixed L-basis;
// index = p * dimL + q where p indexes the first leg and q the second.
// The second leg multiplies opposite: (f⊗g)(f'⊗g') = ff' ⊗ g'g.
class CoeffLL {
 public:
  CoeffLL(RingCtxPtr rc, SparseVec v);
  static CoeffLL zero(RingCtxPtr rc);
  static CoeffLL unit(RingCtxPtr rc);  // 1_L ⊗ 1_L
  static CoeffLL of_pair(const FnElement& f, const FnElement& g);
  static CoeffLL basis(RingCtxPtr rc, uint64_t idx);

  const RingCtxPtr& rc() const { return rc_; }
  const SparseVec& vec() const { return v_; }
  int dim() const { return rc_->dim_l() * rc_->dim_l(); }

  CoeffLL operator+(const CoeffLL& o) const;
  CoeffLL operator*(const CoeffLL& o) const;
  CoeffLL scaled(const Fq& s) const;
  bool is_zero() const { return v_.empty(); }
  bool operator==(const CoeffLL& o) const { return v_ == o.v_; }

  // Exchange move: the image of this coefficient when commuted from the right
  // end of word w to its front. Per letter, L[a,b] twists the legs by
  // T_{deg(a)} / T_{deg(b)} and Li[a,b] by the inverses, swapped.
  CoeffLL moved_left_across(const Word& w, const SigmaCtx& sc) const;

 private:
  RingCtxPtr rc_;
  SparseVec v_;
};

// k-linear combination of normal-form words: every term is one L⊗L^op
// coefficient followed by a word in L/Li letters. All products straighten
// eagerly, so elements stay in coefficient-left normal form.
class FreeElement {
 public:
  explicit FreeElement(SigmaCtxPtr sc) : sc_(std::move(sc)) {}
  static FreeElement zero(SigmaCtxPtr sc);
  static FreeElement unit(SigmaCtxPtr sc);
  static FreeElement letter(SigmaCtxPtr sc, uint32_t kind, int a, int b);
  static FreeElement word(SigmaCtxPtr sc, const Word& w);
  static FreeElement coeff(SigmaCtxPtr sc, CoeffLL c);

  const SigmaCtxPtr& sc_ptr() const { return sc_; }
  const std::map<Word, CoeffLL>& terms() const { return t_; }
  int degree() const;

  FreeElement& add_term(const Word& w, const CoeffLL& c);
  FreeElement operator+(const FreeElement& o) const;
  FreeElement operator-(const FreeElement& o) const;
  FreeElement operator*(const FreeElement& o) const;
  FreeElement scaled(const Fq& s) const;
  bool is_zero() const { return t_.empty(); }
  bool operator==(const FreeElement& o) const;
  bool operator!=(const FreeElement& o) const { return !(*this == o); }

  std::string str() const;

 private:
  SigmaCtxPtr sc_;
  std::map<Word, CoeffLL> t_;
};

// Pre-straightening letter sequences, used to state the absorbed generator
// families and to feed the evaluation homomorphisms with raw inputs.
// composite position maps (one per tensor leg) applied when a coefficient
// moves from the right end of w to its front
void move_maps(const Word& w, const SigmaCtx& sc, std::vector<int>& leg1, std::vector<int>& leg2);

using RawLetter = std::variant<CoeffLL, Letter>;
struct RawTerm {
  Fq scalar;
  std::vector<RawLetter> seq;
};

FreeElement straighten(const SigmaCtxPtr& sc, const std::vector<RawTerm>& raw);

enum class RelKind { R2a, R2b, R4 };

struct RelId {
  RelKind kind;
  int a, b, c, d;  // c,d used by R4 only
  std::string str() const;
};

// The residual ideal generators: the two inverse-pairing families and the
// sigma-exchange family, straightened. The merge/exchange/unit families are
// absorbed into the normal form; absorbed_families_vanish certifies that.
class RelationSet {
 public:
  static RelationSet build(const SigmaTensor& s);

  const SigmaCtxPtr& sc_ptr() const { return sc_; }
  size_t size() const { return rels_.size(); }
  const RelId& id(size_t i) const { return ids_[i]; }
  const FreeElement& rel(size_t i) const { return rels_[i]; }
  int degree(size_t i) const;
  size_t r2_count() const { return r2_count_; }

 private:
  SigmaCtxPtr sc_;
  std::vector<RelId> ids_;
  std::vector<FreeElement> rels_;
  size_t r2_count_ = 0;
};

bool absorbed_families_vanish(const SigmaTensor& s, std::string* diagnostic = nullptr);

// straightened u * rel * v for every relation and word pair within the degree
// bound, enumerated in canonical order (relation, then u, then v, both by
// length then lexicographic)
struct IdealColumn {
  size_t rel;
  Word u, v;
  FreeElement elem;
};
std::vector<IdealColumn> enumerate_ideal_columns(const RelationSet& rels, int D, int threads = 1);

struct CertTerm {
  size_t rel_index;
  Word u, v;
  uint64_t coeff_basis;
  Fq scalar;
};

struct MembershipCertificate {
  FreeElement target;
  std::vector<CertTerm> terms;
  bool gfp_mode = false;
};

struct MembershipOptions {
  int threads = 1;
  bool prune_connected = true;
  bool gfp_prepass = false;  // rational instances only; result is re-solved rationally
  uint32_t prepass_prime = 2147483629u;
  uint64_t max_columns = 0;  // 0 = unlimited
};

struct MembershipStats {
  uint64_t columns = 0;
  uint64_t inserted = 0;
  uint64_t passes = 0;
  bool aborted = false;  // column budget exhausted; never counts as a verdict
};

struct MembershipResult {
  bool member = false;
  std::optional<MembershipCertificate> cert;
  MembershipStats stats;
};

// Sound bounded-degree ideal membership: spans straighten(xi * u * g * v)
// over relations g, words u,v with len(u)+deg(g)+len(v) <= D and xi over the
// coefficient basis, and solves the exact linear system. Member results are
// replay-verified before they are returned. Throws InputError when
// D < degree(target).
MembershipResult ideal_membership(const FreeElement& target, const RelationSet& rels, int D,
                                  const MembershipOptions& opts = {});

struct ModEqResult {
  bool equal = false;
  std::optional<MembershipCertificate> cert;
  MembershipStats stats;
};

// equal is sound; "not found at bound" is inconclusive, never an inequality
ModEqResult mod_eq(const FreeElement& u, const FreeElement& v, const RelationSet& rels, int D,
                   const MembershipOptions& opts = {});

bool replay(const MembershipCertificate& cert, const RelationSet& rels,
            std::string* diagnostic = nullptr);

// Re-derives exact rational scalars for a certificate found modulo a prime by
// re-solving over the certificate's column support; nullopt if that fails.
std::optional<MembershipCertificate> rational_replay(const MembershipCertificate& cert,
                                                     const RelationSet& rational_rels,
                                                     const FreeElement& rational_target, int D);

// Shared echelon over the full bounded span, for running many membership
// queries against one (relations, D) pair.
class MembershipEngine {
 public:
  MembershipEngine(const RelationSet& rels, int D, int threads = 1);
  ~MembershipEngine();
  MembershipEngine(const MembershipEngine&) = delete;
  MembershipEngine& operator=(const MembershipEngine&) = delete;

  MembershipResult query(const FreeElement& target);
  int degree_bound() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Query front end for the suites: precomputes the shared engine while the
// bounded span stays small and falls back to pruned per-target solves when it
// would not fit. The relation set must outlive the oracle.
class MembershipOracle {
 public:
  MembershipOracle(const RelationSet& rels, int D, MembershipOptions opts = {});
  MembershipResult query(const FreeElement& target);
  int degree_bound() const { return D_; }

 private:
  const RelationSet& rels_;
  int D_;
  MembershipOptions opts_;
  std::optional<MembershipEngine> engine_;
};

}  // namespace hopfalgd
