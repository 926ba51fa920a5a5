#pragma once

#include <nlohmann/json.hpp>

#include "hopfalgd/freealg.hpp"
#include "hopfalgd/rigidity.hpp"
#include "hopfalgd/sigma.hpp"

namespace hopfalgd {

enum class CheckStatus { Pass, Fail, Inconclusive };

std::string status_str(CheckStatus s);

// One verified statement instance. Every fail carries a witness; pass entries
// with a membership component carry a replayable certificate.
struct CheckEntry {
  std::string id;
  std::string anchor;  // statement identifier
  CheckStatus status = CheckStatus::Pass;
  nlohmann::json witness;             // null unless populated
  std::string certificate_name;       // empty or artifact name
  nlohmann::json certificate;         // null or replayable content
};

struct CheckReport {
  std::vector<CheckEntry> entries;

  CheckEntry& add(std::string id, std::string anchor, CheckStatus status);
  void merge(CheckReport other);
  bool any_fail() const;
  bool any_inconclusive() const;
  nlohmann::json to_json() const;
};

// element/certificate serialization ("3/4"-style field element strings)
nlohmann::json fn_to_json(const FnElement& f);
FnElement fn_from_json(const RingCtxPtr& rc, const nlohmann::json& j);
nlohmann::json coeff_to_json(const CoeffLL& c);
CoeffLL coeff_from_json(const RingCtxPtr& rc, const nlohmann::json& j);
nlohmann::json word_to_json(const Word& w);
Word word_from_json(const nlohmann::json& j);
nlohmann::json free_to_json(const FreeElement& e);
FreeElement free_from_json(const SigmaCtxPtr& sc, const nlohmann::json& j);
nlohmann::json membership_cert_to_json(const MembershipCertificate& c, const RelationSet& rels);
MembershipCertificate membership_cert_from_json(const SigmaCtxPtr& sc, const nlohmann::json& j);

// sigma.json: {"X": n, "entries": {"a,b,c,d": <coords>}} with zeros omitted
nlohmann::json sigma_to_json(const SigmaTensor& s);
SigmaTensor sigma_from_json(const SigmaCtxPtr& sc, const nlohmann::json& j);

nlohmann::json lmatrix_to_json(const LMatrix& m);
nlohmann::json rigidity_to_json(const RigidityCertificate& cert);

}  // namespace hopfalgd
