#include "hopfalgd/report.hpp"

namespace hopfalgd {

using nlohmann::json;

std::string status_str(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive-at-bound";
  }
  return "?";
}

CheckEntry& CheckReport::add(std::string id, std::string anchor, CheckStatus status) {
  CheckEntry e;
  e.id = std::move(id);
  e.anchor = std::move(anchor);
  e.status = status;
  entries.push_back(std::move(e));
  return entries.back();
}

void CheckReport::merge(CheckReport other) {
  for (auto& e : other.entries) entries.push_back(std::move(e));
}

bool CheckReport::any_fail() const {
  for (const auto& e : entries)
    if (e.status == CheckStatus::Fail) return true;
  return false;
}

bool CheckReport::any_inconclusive() const {
  for (const auto& e : entries)
    if (e.status == CheckStatus::Inconclusive) return true;
  return false;
}

json CheckReport::to_json() const {
  json arr = json::array();
  for (const auto& e : entries) {
    json o;
    o["id"] = e.id;
    o["anchor"] = e.anchor;
    o["status"] = status_str(e.status);
    if (!e.witness.is_null()) o["witness"] = e.witness;
    if (!e.certificate_name.empty()) o["certificate"] = e.certificate_name;
    arr.push_back(std::move(o));
  }
  return arr;
}

json fn_to_json(const FnElement& f) {
  const auto& rc = f.ctx();
  json out = json::array();
  for (int p = 0; p < rc.hsize; ++p) {
    json pt = json::array();
    for (int i = 0; i < rc.dim_r(); ++i) pt.push_back(f.at(p, i).str());
    out.push_back(std::move(pt));
  }
  return out;
}

FnElement fn_from_json(const RingCtxPtr& rc, const json& j) {
  if (!j.is_array() || static_cast<int>(j.size()) != rc->hsize)
    throw InputError("element table has wrong point count");
  std::vector<Fq> c(rc->dim_l(), rc->k.zero());
  for (int p = 0; p < rc->hsize; ++p) {
    const json& pt = j[p];
    if (!pt.is_array() || static_cast<int>(pt.size()) != rc->dim_r())
      throw InputError("element table has wrong coordinate count");
    for (int i = 0; i < rc->dim_r(); ++i)
      c[rc->lidx(p, i)] = rc->k.parse(pt[i].get<std::string>());
  }
  return FnElement(rc, std::move(c));
}

json coeff_to_json(const CoeffLL& c) {
  const auto& rc = *c.rc();
  const int h = rc.hsize, dr = rc.dim_r();
  const uint64_t dl = rc.dim_l();
  // [first-leg point][second-leg point][i*dimR + j] as strings
  json out = json::array();
  for (int p1 = 0; p1 < h; ++p1) {
    json row = json::array();
    for (int p2 = 0; p2 < h; ++p2) {
      json cell = json::array();
      for (int i = 0; i < dr; ++i)
        for (int j = 0; j < dr; ++j) {
          uint64_t idx = (static_cast<uint64_t>(p1) * dr + i) * dl + static_cast<uint64_t>(p2) * dr + j;
          const Fq* v = c.vec().at(idx);
          cell.push_back(v ? v->str() : "0");
        }
      row.push_back(std::move(cell));
    }
    out.push_back(std::move(row));
  }
  return out;
}

CoeffLL coeff_from_json(const RingCtxPtr& rc, const json& j) {
  const int h = rc->hsize, dr = rc->dim_r();
  const uint64_t dl = rc->dim_l();
  if (!j.is_array() || static_cast<int>(j.size()) != h) throw InputError("coefficient table has wrong shape");
  std::map<uint64_t, Fq> m;
  for (int p1 = 0; p1 < h; ++p1) {
    const json& row = j[p1];
    if (!row.is_array() || static_cast<int>(row.size()) != h)
      throw InputError("coefficient table has wrong shape");
    for (int p2 = 0; p2 < h; ++p2) {
      const json& cell = row[p2];
      if (!cell.is_array() || static_cast<int>(cell.size()) != dr * dr)
        throw InputError("coefficient table has wrong shape");
      for (int i = 0; i < dr; ++i)
        for (int j2 = 0; j2 < dr; ++j2) {
          Fq v = rc->k.parse(cell[i * dr + j2].get<std::string>());
          if (!v.is_zero())
            m[(static_cast<uint64_t>(p1) * dr + i) * dl + static_cast<uint64_t>(p2) * dr + j2] = v;
        }
    }
  }
  return CoeffLL(rc, SparseVec::from_map(m));
}

json word_to_json(const Word& w) {
  json out = json::array();
  for (char32_t ch : w) out.push_back(letter_str(unpack_letter(ch)));
  return out;
}

Word word_from_json(const json& j) {
  if (!j.is_array()) throw InputError("word must be an array of letters");
  Word w;
  for (const auto& t : j) {
    Letter l = parse_letter(t.get<std::string>());
    w.push_back(pack_letter(l.kind, l.a, l.b));
  }
  return w;
}

json free_to_json(const FreeElement& e) {
  json terms = json::array();
  for (const auto& [w, c] : e.terms()) {
    json t;
    t["word"] = word_to_json(w);
    t["coeff"] = coeff_to_json(c);
    terms.push_back(std::move(t));
  }
  return json{{"terms", std::move(terms)}};
}

FreeElement free_from_json(const SigmaCtxPtr& sc, const json& j) {
  FreeElement e(sc);
  if (!j.contains("terms") || !j["terms"].is_array()) throw InputError("missing terms array");
  for (const auto& t : j["terms"])
    e.add_term(word_from_json(t.at("word")), coeff_from_json(sc->ring, t.at("coeff")));
  return e;
}

json membership_cert_to_json(const MembershipCertificate& c, const RelationSet& rels) {
  json terms = json::array();
  for (const auto& t : c.terms) {
    json o;
    o["relation"] = rels.id(t.rel_index).str();
    o["relation_index"] = t.rel_index;
    o["left_word"] = word_to_json(t.u);
    o["right_word"] = word_to_json(t.v);
    o["coeff_basis"] = t.coeff_basis;
    o["scalar"] = t.scalar.str();
    terms.push_back(std::move(o));
  }
  json out;
  out["kind"] = "ideal-membership";
  out["field"] = c.gfp_mode ? "gfp" : "rational";
  out["target"] = free_to_json(c.target);
  out["terms"] = std::move(terms);
  return out;
}

MembershipCertificate membership_cert_from_json(const SigmaCtxPtr& sc, const json& j) {
  if (j.at("kind").get<std::string>() != "ideal-membership")
    throw InputError("not an ideal-membership certificate");
  MembershipCertificate c{free_from_json(sc, j.at("target")), {},
                          j.at("field").get<std::string>() == "gfp"};
  for (const auto& t : j.at("terms")) {
    CertTerm ct;
    ct.rel_index = t.at("relation_index").get<size_t>();
    ct.u = word_from_json(t.at("left_word"));
    ct.v = word_from_json(t.at("right_word"));
    ct.coeff_basis = t.at("coeff_basis").get<uint64_t>();
    ct.scalar = sc->ring->k.parse(t.at("scalar").get<std::string>());
    c.terms.push_back(std::move(ct));
  }
  return c;
}

json sigma_to_json(const SigmaTensor& s) {
  const int n = s.nx();
  json entries = json::object();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const FnElement& e = s.entry(a, b, c, d);
          if (e.is_zero()) continue;
          std::string key = std::to_string(a) + "," + std::to_string(b) + "," +
                            std::to_string(c) + "," + std::to_string(d);
          entries[key] = fn_to_json(e);
        }
  return json{{"X", n}, {"entries", std::move(entries)}};
}

SigmaTensor sigma_from_json(const SigmaCtxPtr& sc, const json& j) {
  const int n = sc->nx();
  if (j.at("X").get<int>() != n) throw InputError("sigma.json index set size mismatch");
  std::vector<FnElement> entries(static_cast<size_t>(n) * n * n * n,
                                 FnElement::zero(sc->ring));
  for (const auto& [key, val] : j.at("entries").items()) {
    int idx[4] = {0, 0, 0, 0};
    size_t pos = 0;
    for (int t = 0; t < 4; ++t) {
      size_t comma = key.find(',', pos);
      std::string part = key.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      idx[t] = std::stoi(part);
      if (idx[t] < 0 || idx[t] >= n) throw InputError("sigma.json index out of range");
      pos = comma + 1;
    }
    entries[((static_cast<size_t>(idx[0]) * n + idx[1]) * n + idx[2]) * n + idx[3]] =
        fn_from_json(sc->ring, val);
  }
  return SigmaTensor(sc, std::move(entries));
}

json lmatrix_to_json(const LMatrix& m) {
  json out = json::array();
  for (int a = 0; a < m.n; ++a) {
    json row = json::array();
    for (int b = 0; b < m.n; ++b) row.push_back(fn_to_json(m.at(a, b)));
    out.push_back(std::move(row));
  }
  return out;
}

json rigidity_to_json(const RigidityCertificate& cert) {
  const int n = cert.qs.q.n;
  json istar = json::object();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const FnElement& e = cert.istar.entry(a, b, c, d);
          if (e.is_zero()) continue;
          std::string key = std::to_string(a) + "," + std::to_string(b) + "," +
                            std::to_string(c) + "," + std::to_string(d);
          istar[key] = fn_to_json(e);
        }
  json xs = json::array(), xalts = json::array(), ys = json::array(), yalts = json::array();
  for (int a = 0; a < n; ++a) {
    json xr = json::array(), xar = json::array(), yr = json::array(), yar = json::array();
    for (int b = 0; b < n; ++b) {
      xr.push_back(free_to_json(cert.xy.x_at(a, b)));
      xar.push_back(free_to_json(cert.xy.x_alt_at(a, b)));
      yr.push_back(free_to_json(cert.xy.y_at(a, b)));
      yar.push_back(free_to_json(cert.xy.y_alt_at(a, b)));
    }
    xs.push_back(std::move(xr));
    xalts.push_back(std::move(xar));
    ys.push_back(std::move(yr));
    yalts.push_back(std::move(yar));
  }
  json out;
  out["istar"] = std::move(istar);
  out["Q"] = lmatrix_to_json(cert.qs.q);
  out["Q_inv"] = lmatrix_to_json(cert.qs.qi);
  out["Qp"] = lmatrix_to_json(cert.qs.qp);
  out["Qp_inv"] = lmatrix_to_json(cert.qs.qpi);
  out["Qpp"] = lmatrix_to_json(cert.qs.qpp);
  out["Qpp_inv"] = lmatrix_to_json(cert.qs.qppi);
  out["Qppp"] = lmatrix_to_json(cert.qs.qppp);
  out["Qppp_inv"] = lmatrix_to_json(cert.qs.qpppi);
  out["two_sided"] = json::array({cert.qs.two_sided[0], cert.qs.two_sided[1],
                                  cert.qs.two_sided[2], cert.qs.two_sided[3]});
  out["x"] = std::move(xs);
  out["x_alt"] = std::move(xalts);
  out["y"] = std::move(ys);
  out["y_alt"] = std::move(yalts);
  return out;
}

}  // namespace hopfalgd
