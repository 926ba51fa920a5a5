#pragma once

#include "hopfalgd/report.hpp"

namespace hopfalgd {

// Element of the tensor square: bilinear-normalized pairs of normal-form
// words with a joint coefficient over (L⊗L^op) ⊗ (L⊗L^op), stored sparsely
// as index c1 * dimLL + c2.
class TensorSquareElement {
 public:
  explicit TensorSquareElement(SigmaCtxPtr sc) : sc_(std::move(sc)) {}
  static TensorSquareElement zero(SigmaCtxPtr sc) { return TensorSquareElement(std::move(sc)); }
  static TensorSquareElement tensor(const FreeElement& a, const FreeElement& b);

  const SigmaCtxPtr& sc_ptr() const { return sc_; }
  const std::map<std::pair<Word, Word>, SparseVec>& terms() const { return t_; }

  TensorSquareElement& add_term(const Word& w1, const Word& w2, const SparseVec& coeff);
  TensorSquareElement operator+(const TensorSquareElement& o) const;
  TensorSquareElement operator-(const TensorSquareElement& o) const;
  TensorSquareElement operator*(const TensorSquareElement& o) const;  // legwise
  TensorSquareElement scaled(const Fq& s) const;
  bool is_zero() const { return t_.empty(); }
  bool operator==(const TensorSquareElement& o) const;

 private:
  SigmaCtxPtr sc_;
  std::map<std::pair<Word, Word>, SparseVec> t_;
};

FreeElement s_map(const SigmaCtxPtr& sc, const FnElement& f);
FreeElement t_map(const SigmaCtxPtr& sc, const FnElement& f);

// coproduct representative: multiplicative on letters, source/target split on
// coefficients
TensorSquareElement delta_bar(const FreeElement& u);

// The two evaluation homomorphisms into operators on L and the induced
// counit-style maps. Basis multiplication operators are cached per instance.
class StructureMaps {
 public:
  explicit StructureMaps(SigmaCtxPtr sc);

  LOperator epsilon(const FreeElement& u) const;
  LOperator epsilon_raw(const std::vector<RawTerm>& raw) const;  // pre-straightening
  LOperator epsilon_prime(const FreeElement& u) const;           // anti-homomorphism
  LOperator epsilon_prime_raw(const std::vector<RawTerm>& raw) const;
  FnElement pi_l(const FreeElement& u) const;
  FnElement pi_lop(const FreeElement& u) const;
  const SigmaCtxPtr& sc_ptr() const { return sc_; }

 private:
  LOperator coeff_op(const CoeffLL& c, bool prime) const;
  // nullptr for the zero operator (off-diagonal letters)
  const LOperator* letter_op(const Letter& l, bool prime) const;
  LOperator word_op(const Word& w, bool prime) const;

  SigmaCtxPtr sc_;
  std::vector<LOperator> rl_, rr_;  // rho of the L-basis
  std::vector<LOperator> td_, tdi_;
  LOperator zero_, id_;
};

// antipode representative: anti-multiplicative, swaps coefficient legs, sends
// L[a,b] to Li[a,b] and Li[a,b] to the certificate's x element
FreeElement s_bar(const FreeElement& u, const AntipodeElements& xy);
// inverse-direction representative built from the y elements
FreeElement s_bar_inv(const FreeElement& u, const AntipodeElements& xy);

// membership of a tensor-square element in the bounded lift of the exchange
// ideal (right ideal by default, left ideal for the mirrored axioms) plus the
// bounded ideal span in either leg
struct I2MembershipResult {
  bool member = false;
  nlohmann::json certificate;  // replayable; null when not member
  MembershipStats stats;
};

I2MembershipResult i2_lift_membership(const TensorSquareElement& target, const RelationSet& rels,
                                      int D, bool left_ideal, const MembershipOptions& opts = {});
bool i2_replay(const nlohmann::json& certificate, const RelationSet& rels,
               const TensorSquareElement& target, bool left_ideal);

// check suites

CheckReport verify_counit_kills_ideal(const RelationSet& rels, int threads = 1);
CheckReport verify_coproduct_exchange_ideal(const RelationSet& rels, int D,
                                            const MembershipOptions& opts = {});
CheckReport verify_antipode_kills_ideal(const RelationSet& rels, const RigidityCertificate& cert,
                                        int D, const MembershipOptions& opts = {});
CheckReport verify_rigidity_identities(const RigidityCertificate& cert, const RelationSet& rels,
                                       MembershipOracle& oracle);
CheckReport verify_bialgebroid_axioms(const RelationSet& rels, MembershipOracle& oracle,
                                      uint64_t seed, const MembershipOptions& opts = {});
CheckReport verify_hopf_axioms(const RigidityCertificate& cert, const RelationSet& rels,
                               MembershipOracle& oracle, uint64_t seed);

}  // namespace hopfalgd
