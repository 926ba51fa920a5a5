// Acceptance suite: one pass/fail line per criterion, with measured runtime
// against the stated budget. Exits nonzero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "hopfalgd/bialgebroid.hpp"
#include "hopfalgd/instance.hpp"

using namespace hopfalgd;
using namespace hopfalgd::testing;
using nlohmann::json;

namespace {

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

bool g_any_fail = false;

void run_criterion(const Criterion& c) {
  std::string detail;
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = c.run(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= c.budget_seconds) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over budget");
  }
  printf("%s criterion %2d [%7.2fs / %gs budget] %s%s%s\n", ok ? "PASS" : "FAIL", c.number, secs,
         c.budget_seconds, c.title.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  fflush(stdout);
  if (!ok) g_any_fail = true;
}

SigmaCtxPtr ctx_for(int which, const std::string& algebra) {
  // 0..2: abelian n = 2,3,5; 3: the five-element table with its companion
  if (which == 3) return qg5_ctx(algebra);
  int n = which == 0 ? 2 : which == 1 ? 3 : 5;
  return abelian_ctx(n, algebra);
}

bool all_pass(const CheckReport& rep, std::string& detail) {
  for (const auto& e : rep.entries)
    if (e.status != CheckStatus::Pass) {
      detail = e.id + " is " + status_str(e.status);
      return false;
    }
  return true;
}

// --- criteria ---------------------------------------------------------------

bool c1_qg5_fidelity(std::string& detail) {
  Quasigroup q = builtin_qg5();
  const int want[5][5] = {
      {4, 3, 2, 1, 0}, {3, 1, 0, 2, 4}, {0, 2, 3, 4, 1}, {1, 0, 4, 3, 2}, {2, 4, 1, 0, 3}};
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      if (q.mul(a, b) != want[a][b]) {
        detail = "table mismatch";
        return false;
      }
  if (q.validate_latin().has_value()) {
    detail = "latin validation failed";
    return false;
  }
  if (q.mul(0, 2) != 2) {
    detail = "0*2 != 2";
    return false;
  }
  if (q.mul(q.mul(1, 2), 3) != 1 || q.mul(1, q.mul(2, 3)) != 4) {
    detail = "associativity counterexample not reproduced";
    return false;
  }
  return true;
}

bool c2_ternary_axioms(std::string& detail) {
  for (int n : {2, 3, 5})
    if (!TernaryOp::abelian_default(n).validate().empty()) {
      detail = "difference-sum operation fails at n=" + std::to_string(n);
      return false;
    }
  // the five-element companion uses the same operation on five labels with
  // the identity bijection
  auto sc = qg5_ctx();
  if (!sc->tern.validate().empty()) {
    detail = "companion ternary operation fails";
    return false;
  }
  return true;
}

bool c3_sigma_conditions(std::string& detail) {
  for (int which = 0; which < 4; ++which)
    for (const char* algebra : {"base", "dual"}) {
      auto s = SigmaTensor::build_from_quasigroup(ctx_for(which, algebra));
      if (check_right_rhot(s) || check_left_rhot(s) || check_tt(s)) {
        detail = "condition fails on instance " + std::to_string(which) + "/" + algebra;
        return false;
      }
      RemarkReport rem = check_remark_equivalence(s);
      if (!rem.consistent() || !rem.right_ok) {
        detail = "equivalence verdict inconsistent on instance " + std::to_string(which);
        return false;
      }
    }
  return true;
}

bool c4_rigidity(std::string& detail) {
  for (int which = 0; which < 4; ++which) {
    auto sc = ctx_for(which, "base");
    auto s = SigmaTensor::build_from_quasigroup(sc);
    auto built = build_rigidity_certificate(s);
    if (!std::holds_alternative<RigidityCertificate>(built)) {
      detail = "certificate fails on instance " + std::to_string(which) + ": " +
               std::get<RigidityFailure>(built).detail;
      return false;
    }
    const auto& cert = std::get<RigidityCertificate>(built);
    if (which < 3) {
      // abelian instances: the dual tensor is the flip and every trace sum is
      // the identity matrix, agreeing with the independent oracle
      if (!istar_is_flip(cert.istar)) {
        detail = "dual tensor is not the flip on abelian instance";
        return false;
      }
      SigmaTilde st(s);
      if (!verify_istar(cert.istar, st)) {
        detail = "contraction oracle disagrees";
        return false;
      }
      auto one = FnElement::one(sc->ring);
      auto zero = FnElement::zero(sc->ring);
      for (const LMatrix* m : {&cert.qs.q, &cert.qs.qp, &cert.qs.qpp, &cert.qs.qppp,
                               &cert.qs.qi, &cert.qs.qpi, &cert.qs.qppi, &cert.qs.qpppi})
        for (int a = 0; a < m->n; ++a)
          for (int b = 0; b < m->n; ++b)
            if (m->at(a, b) != (a == b ? one : zero)) {
              detail = "trace sums are not the identity on abelian instance";
              return false;
            }
    }
  }
  return true;
}

bool c5_antipode_identities(std::string& detail) {
  auto sc = abelian_ctx(2);
  auto s = SigmaTensor::build_from_quasigroup(sc);
  auto built = build_rigidity_certificate(s);
  if (!std::holds_alternative<RigidityCertificate>(built)) {
    detail = "no rigidity certificate";
    return false;
  }
  const auto& cert = std::get<RigidityCertificate>(built);
  RelationSet rels = RelationSet::build(s);
  MembershipOracle eng(rels, 4);
  CheckReport rep = verify_rigidity_identities(cert, rels, eng);
  if (!all_pass(rep, detail)) return false;
  // 100% of the produced certificates must replay from their serialized form
  size_t replayed = 0;
  for (const auto& e : rep.entries) {
    if (e.certificate.is_null()) continue;
    MembershipCertificate c = membership_cert_from_json(sc, e.certificate);
    if (!replay(c, rels)) {
      detail = "certificate for " + e.id + " does not replay";
      return false;
    }
    ++replayed;
  }
  if (replayed == 0) {
    detail = "no certificates produced";
    return false;
  }
  return true;
}

bool c6_counit_kills(std::string& detail) {
  for (int which = 0; which < 4; ++which)
    for (const char* algebra : {"base", "dual"}) {
      auto s = SigmaTensor::build_from_quasigroup(ctx_for(which, algebra));
      RelationSet rels = RelationSet::build(s);
      CheckReport rep = verify_counit_kills_ideal(rels, 2);
      if (!all_pass(rep, detail)) {
        detail += " on instance " + std::to_string(which) + "/" + algebra;
        return false;
      }
    }
  return true;
}

bool c7_coproduct_ideal(std::string& detail) {
  auto sc = abelian_ctx(2);
  auto s = SigmaTensor::build_from_quasigroup(sc);
  RelationSet rels = RelationSet::build(s);
  CheckReport rep = verify_coproduct_exchange_ideal(rels, 4, MembershipOptions{});
  return all_pass(rep, detail);
}

bool c8_antipode_kills(std::string& detail) {
  auto sc = abelian_ctx(2);
  auto s = SigmaTensor::build_from_quasigroup(sc);
  auto built = build_rigidity_certificate(s);
  const auto& cert = std::get<RigidityCertificate>(built);
  RelationSet rels = RelationSet::build(s);
  CheckReport rep = verify_antipode_kills_ideal(rels, cert, 4, MembershipOptions{});
  return all_pass(rep, detail);
}

bool c9_hopf(std::string& detail) {
  auto sc = abelian_ctx(2);
  auto s = SigmaTensor::build_from_quasigroup(sc);
  auto built = build_rigidity_certificate(s);
  const auto& cert = std::get<RigidityCertificate>(built);
  RelationSet rels = RelationSet::build(s);
  MembershipOracle eng(rels, 4);
  CheckReport rep = verify_hopf_axioms(cert, rels, eng, 0);
  return all_pass(rep, detail);
}

bool c10_weak_hopf_witness(std::string& detail) {
  InstanceConfig dual = InstanceConfig::parse(
      R"({"algebra_r": "dual", "quasigroup": {"kind": "builtin_qg5"}})");
  RunResult r = run_check_sigma(dual);
  if (r.report["base_algebra"]["radical_dim"] != 1) {
    detail = "radical dimension of the dual numbers is not 1";
    return false;
  }
  std::string annot = r.report["base_algebra"].value("annotation", "");
  if (annot.find("is not a weak Hopf algebra") == std::string::npos) {
    detail = "missing annotation";
    return false;
  }
  InstanceConfig base = InstanceConfig::parse(
      R"({"algebra_r": "base", "quasigroup": {"kind": "builtin_qg5"}})");
  RunResult r2 = run_check_sigma(base);
  if (r2.report["base_algebra"]["radical_dim"] != 0 ||
      r2.report["base_algebra"].contains("annotation")) {
    detail = "field base algebra mis-reported";
    return false;
  }
  return true;
}

bool c11_soundness_guards(std::string& detail) {
  auto sc = abelian_ctx(2);
  auto s = SigmaTensor::build_from_quasigroup(sc);
  RelationSet rels = RelationSet::build(s);
  StructureMaps sm(sc);
  // the functional argument: the evaluation homomorphism kills every relation
  // but sends the unit to the identity
  for (size_t i = 0; i < rels.size(); ++i)
    if (!sm.epsilon(rels.rel(i)).is_zero()) {
      detail = "evaluation homomorphism does not kill " + rels.id(i).str();
      return false;
    }
  if (sm.epsilon(FreeElement::unit(sc)) != LOperator::identity(sc->ring)) {
    detail = "evaluation of the unit is not the identity";
    return false;
  }
  // the solver must agree at every tested bound
  for (int D = 2; D <= 5; ++D) {
    MembershipResult r = ideal_membership(FreeElement::unit(sc), rels, D);
    if (r.member || r.stats.aborted) {
      detail = "unit misclassified at bound " + std::to_string(D);
      return false;
    }
  }

  // every pass with a membership component carries a certificate that
  // replays from its serialized form
  InstanceConfig cfg = InstanceConfig::parse(
      R"({"quasigroup": {"kind": "abelian", "n": 2}, "degree_bound": 4})");
  cfg.threads = 1;
  RunResult a = run_verify(cfg);
  if (a.status != 0) {
    detail = "full verify run is not clean";
    return false;
  }
  size_t audited = 0;
  for (const auto& [name, content] : a.artifacts) {
    if (name.rfind("certificates/", 0) != 0) continue;
    if (content.value("kind", "") == "ideal-membership") {
      MembershipCertificate c = membership_cert_from_json(sc, content);
      if (!replay(c, rels)) {
        detail = "artifact " + name + " does not replay";
        return false;
      }
      ++audited;
    }
  }
  if (audited == 0) {
    detail = "no membership certificates to audit";
    return false;
  }

  // determinism across worker counts
  InstanceConfig cfg4 = cfg;
  cfg4.threads = 4;
  RunResult b = run_verify(cfg4);
  if (a.report["checks"].dump() != b.report["checks"].dump()) {
    detail = "reports differ across worker counts";
    return false;
  }
  json arts_a = json::object(), arts_b = json::object();
  for (const auto& [name, content] : a.artifacts) arts_a[name] = content;
  for (const auto& [name, content] : b.artifacts) arts_b[name] = content;
  if (arts_a.dump() != arts_b.dump()) {
    detail = "artifacts differ across worker counts";
    return false;
  }
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "five-element table fidelity", 1, c1_qg5_fidelity},
      {2, "ternary axioms, exhaustive", 5, c2_ternary_axioms},
      {3, "sigma operator conditions", 10, c3_sigma_conditions},
      {4, "rigidity certificates with abelian oracle", 10, c4_rigidity},
      {5, "antipode identities with replayed certificates", 120, c5_antipode_identities},
      {6, "both counit homomorphisms kill the ideal", 10, c6_counit_kills},
      {7, "coproduct lands in the exchange-ideal lift", 300, c7_coproduct_ideal},
      {8, "antipode image lands in the ideal", 300, c8_antipode_kills},
      {9, "antipode compatibility identities", 120, c9_hopf},
      {10, "non-semisimple base annotation", 1, c10_weak_hopf_witness},
      {11, "soundness guards and determinism", 600, c11_soundness_guards},
  };
  for (const auto& c : criteria) run_criterion(c);
  return g_any_fail ? 1 : 0;
}
