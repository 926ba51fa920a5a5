#include "hopfalgd/instance.hpp"

#include <algorithm>

namespace hopfalgd {

using nlohmann::json;

const std::vector<std::string> kAllSuites = {
    "sigma",           "rigidity",          "epsilon-kills", "coproduct-ideal",
    "antipode-ideal",  "rigid-identities",  "bialgebroid-axioms", "hopf"};

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw InputError("config error at " + where + ": " + what);
}

int get_int(const json& j, const std::string& where, int lo, int hi) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  long long v = j.get<long long>();
  if (v < lo || v > hi) bad(where, "out of range");
  return static_cast<int>(v);
}

}  // namespace

InstanceConfig InstanceConfig::parse(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config must be a JSON object");
  InstanceConfig cfg;
  for (const auto& [key, val] : j.items()) {
    if (key == "field") {
      cfg.field = Field::parse_spec(val.get<std::string>());
    } else if (key == "algebra_r") {
      if (val.is_string()) {
        cfg.algebra_name = val.get<std::string>();
        if (cfg.algebra_name != "base" && cfg.algebra_name != "dual" && cfg.algebra_name != "mat2")
          bad("/algebra_r", "unknown preset '" + cfg.algebra_name + "'");
      } else if (val.is_object()) {
        cfg.algebra_name = "custom";
        cfg.algebra_custom = val;
      } else {
        bad("/algebra_r", "expected preset name or object");
      }
    } else if (key == "quasigroup") {
      if (!val.is_object() || !val.contains("kind")) bad("/quasigroup", "expected {\"kind\": ...}");
      cfg.quasigroup_spec = val;
    } else if (key == "ternary") {
      if (!val.is_object() || !val.contains("kind")) bad("/ternary", "expected {\"kind\": ...}");
      cfg.ternary_spec = val;
    } else if (key == "pi") {
      if (!val.is_array()) bad("/pi", "expected a permutation array");
      for (const auto& e : val) cfg.pi.push_back(get_int(e, "/pi", 0, 255));
    } else if (key == "degree_bound") {
      cfg.degree_bound = get_int(val, "/degree_bound", 0, 16);
    } else if (key == "suites") {
      if (!val.is_array()) bad("/suites", "expected an array of suite names");
      for (const auto& e : val) {
        std::string s = e.get<std::string>();
        if (std::find(kAllSuites.begin(), kAllSuites.end(), s) == kAllSuites.end())
          bad("/suites", "unknown suite '" + s + "'");
        cfg.suites.push_back(std::move(s));
      }
    } else if (key == "seed") {
      if (!val.is_number_unsigned() && !val.is_number_integer()) bad("/seed", "expected an integer");
      cfg.seed = val.get<uint64_t>();
    } else if (key == "threads") {
      cfg.threads = get_int(val, "/threads", 1, 256);
    } else if (key == "debug_mutation") {
      if (!val.is_object() || !val.contains("entry") || !val.contains("point"))
        bad("/debug_mutation", "expected {\"entry\":[a,b,c,d],\"point\":p}");
      const auto& e = val["entry"];
      if (!e.is_array() || e.size() != 4) bad("/debug_mutation/entry", "expected 4 indices");
      std::array<int, 5> m{};
      for (int i = 0; i < 4; ++i) m[i] = get_int(e[i], "/debug_mutation/entry", 0, 255);
      m[4] = get_int(val["point"], "/debug_mutation/point", 0, 255);
      cfg.debug_mutation = m;
    } else {
      bad("/" + key, "unknown key");
    }
  }
  return cfg;
}

json InstanceConfig::canonical() const {
  json j;
  j["field"] = field.spec();
  j["algebra_r"] = algebra_name == "custom" ? algebra_custom : json(algebra_name);
  j["quasigroup"] = quasigroup_spec;
  j["ternary"] = ternary_spec;
  if (!pi.empty()) j["pi"] = pi;
  j["degree_bound"] = degree_bound;
  j["suites"] = suites.empty() ? kAllSuites : suites;
  j["seed"] = seed;
  j["threads"] = threads;
  if (debug_mutation)
    j["debug_mutation"] = json{{"entry", {(*debug_mutation)[0], (*debug_mutation)[1],
                                          (*debug_mutation)[2], (*debug_mutation)[3]}},
                               {"point", (*debug_mutation)[4]}};
  return j;
}

std::string InstanceConfig::digest() const {
  std::string s = canonical().dump();
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

RunOptions parse_run_options(const std::string& json_text) {
  RunOptions o;
  if (json_text.empty()) return o;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("options parse error: ") + e.what());
  }
  if (j.is_null()) return o;
  if (!j.is_object()) throw InputError("options must be a JSON object");
  for (const auto& [key, val] : j.items()) {
    if (key == "field") o.field = val.get<std::string>();
    else if (key == "degree_bound") o.degree_bound = get_int(val, "/degree_bound", 0, 16);
    else if (key == "suites") {
      if (!val.is_array()) bad("/suites", "expected an array");
      for (const auto& e : val) {
        std::string s = e.get<std::string>();
        if (std::find(kAllSuites.begin(), kAllSuites.end(), s) == kAllSuites.end())
          bad("/suites", "unknown suite '" + s + "'");
        o.suites.push_back(std::move(s));
      }
    } else if (key == "seed") o.seed = val.get<uint64_t>();
    else if (key == "threads") o.threads = get_int(val, "/threads", 1, 256);
    else bad("/" + key, "unknown option");
  }
  return o;
}

InstanceConfig apply_overrides(InstanceConfig cfg, const RunOptions& opts) {
  if (opts.field) cfg.field = Field::parse_spec(*opts.field);
  if (opts.degree_bound) cfg.degree_bound = *opts.degree_bound;
  if (!opts.suites.empty()) {
    for (const auto& s : opts.suites)
      if (std::find(kAllSuites.begin(), kAllSuites.end(), s) == kAllSuites.end())
        throw InputError("unknown suite '" + s + "'");
    cfg.suites = opts.suites;
  }
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.threads) cfg.threads = *opts.threads;
  return cfg;
}

Instance Instance::build(const InstanceConfig& cfg) {
  Instance ins;
  ins.cfg = cfg;

  AlgebraR R;
  if (cfg.algebra_name == "custom") {
    const json& a = cfg.algebra_custom;
    int dim = get_int(a.at("dim"), "/algebra_r/dim", 1, 64);
    std::vector<Fq> mul, unit;
    const json& m = a.at("mul");
    if (!m.is_array() || static_cast<int>(m.size()) != dim) bad("/algebra_r/mul", "wrong shape");
    for (const auto& plane : m) {
      if (!plane.is_array() || static_cast<int>(plane.size()) != dim)
        bad("/algebra_r/mul", "wrong shape");
      for (const auto& row : plane) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
          bad("/algebra_r/mul", "wrong shape");
        for (const auto& v : row) mul.push_back(cfg.field.parse(v.get<std::string>()));
      }
    }
    const json& u = a.at("unit");
    if (!u.is_array() || static_cast<int>(u.size()) != dim) bad("/algebra_r/unit", "wrong shape");
    for (const auto& v : u) unit.push_back(cfg.field.parse(v.get<std::string>()));
    R = AlgebraR::custom(cfg.field, dim, std::move(mul), std::move(unit));
  } else {
    R = AlgebraR::preset(cfg.field, cfg.algebra_name);
  }

  const json& qs = cfg.quasigroup_spec;
  std::string kind = qs.at("kind").get<std::string>();
  if (kind == "builtin_qg5") {
    ins.q = Quasigroup::qg5();
  } else if (kind == "abelian") {
    ins.q = Quasigroup::abelian(get_int(qs.at("n"), "/quasigroup/n", 1, 64));
  } else if (kind == "table") {
    const json& t = qs.at("table");
    if (!t.is_array()) bad("/quasigroup/table", "expected an array of rows");
    std::vector<std::vector<int>> rows;
    for (const auto& r : t) {
      std::vector<int> row;
      for (const auto& v : r) row.push_back(get_int(v, "/quasigroup/table", 0, 255));
      rows.push_back(std::move(row));
    }
    ins.q = Quasigroup::from_table(std::move(rows));
  } else {
    bad("/quasigroup/kind", "unknown kind '" + kind + "'");
  }

  const json& ts = cfg.ternary_spec;
  std::string tkind = ts.at("kind").get<std::string>();
  if (tkind == "abelian_default") {
    ins.tern = TernaryOp::abelian_default(ins.q.n);
  } else if (tkind == "table") {
    const json& t = ts.at("mu");
    std::vector<std::vector<std::vector<int>>> cube;
    if (!t.is_array()) bad("/ternary/mu", "expected a triple-nested array");
    for (const auto& plane : t) {
      std::vector<std::vector<int>> p2;
      for (const auto& row : plane) {
        std::vector<int> r2;
        for (const auto& v : row) r2.push_back(get_int(v, "/ternary/mu", 0, 255));
        p2.push_back(std::move(r2));
      }
      cube.push_back(std::move(p2));
    }
    ins.tern = TernaryOp::from_table(std::move(cube));
  } else {
    bad("/ternary/kind", "unknown kind '" + tkind + "'");
  }
  if (ins.tern.n != ins.q.n) bad("/ternary", "size does not match the quasigroup");

  if (cfg.pi.empty()) {
    ins.pi = PiBijection::identity(ins.q.n);
  } else {
    if (static_cast<int>(cfg.pi.size()) != ins.q.n) bad("/pi", "size does not match the quasigroup");
    ins.pi = PiBijection::from_permutation(cfg.pi);
  }

  ins.ring = make_ring_ctx(cfg.field, std::move(R), ins.q.n);
  return ins;
}

namespace {

json report_skeleton(const InstanceConfig& cfg, const std::string& command) {
  json rep;
  rep["instance"] = cfg.digest();
  rep["command"] = command;
  rep["field"] = cfg.field.spec();
  rep["bounds"] = json{{"D", cfg.degree_bound}};
  return rep;
}

int status_of(const CheckReport& rep) {
  if (rep.any_fail()) return 1;
  if (rep.any_inconclusive()) return 3;
  return 0;
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') out += c;
    else out += '_';
  }
  return out;
}

void collect_certificates(const CheckReport& rep, RunResult& out) {
  for (const auto& e : rep.entries)
    if (!e.certificate_name.empty() && !e.certificate.is_null())
      out.artifacts.emplace_back("certificates/" + sanitize(e.certificate_name) + ".json",
                                 e.certificate);
}

CheckReport validation_report(const Instance& ins) {
  CheckReport rep;
  auto latin = ins.q.validate_latin();
  rep.add("validate/latin", "quasigroup-definition",
          latin ? CheckStatus::Fail : CheckStatus::Pass)
      .witness = latin ? json{{"violation", latin->str()}} : json{{"n", ins.q.n}};
  auto viol = ins.tern.validate();
  json vw = json::array();
  for (const auto& v : viol) vw.push_back(v.str());
  rep.add("validate/ternary", "ternary-operation-axioms",
          viol.empty() ? CheckStatus::Pass : CheckStatus::Fail)
      .witness = viol.empty() ? json{{"axioms", "QG1..QG5"}} : json{{"violations", vw}};
  bool pi_ok = true;
  for (int i = 0; i < ins.q.n && pi_ok; ++i)
    pi_ok = ins.pi.bwd(ins.pi.fwd(i)) == i && ins.pi.fwd(ins.pi.bwd(i)) == i;
  rep.add("validate/pi", "label-bijection", pi_ok ? CheckStatus::Pass : CheckStatus::Fail);

  bool t_ok = !latin.has_value();
  if (t_ok) {
    DegreeMap deg = DegreeMap::from(ins.q);
    for (int a = 0; a < ins.q.n && t_ok; ++a) {
      AutomorphismT t(ins.ring, deg.perm[a]);
      AutomorphismT ti(ins.ring, deg.perm_inv[a]);
      t_ok = t.is_algebra_automorphism() &&
             t.compose(ti).apply(FnElement::one(ins.ring)) == FnElement::one(ins.ring) &&
             t.compose(ti).as_operator() == LOperator::identity(ins.ring);
    }
  }
  rep.add("validate/t-system", "degree-automorphisms",
          t_ok ? CheckStatus::Pass : CheckStatus::Fail);
  return rep;
}

SigmaTensor build_sigma(const Instance& ins, const SigmaCtxPtr& sc) {
  SigmaTensor s = SigmaTensor::build_from_quasigroup(sc);
  if (ins.cfg.debug_mutation) {
    const auto& m = *ins.cfg.debug_mutation;
    for (int i = 0; i < 4; ++i)
      if (m[i] < 0 || m[i] >= ins.q.n) throw InputError("debug_mutation index out of range");
    if (m[4] < 0 || m[4] >= ins.q.n) throw InputError("debug_mutation point out of range");
    s = s.mutated_add_unit(m[0], m[1], m[2], m[3], m[4]);
  }
  return s;
}

void add_sigma_checks(CheckReport& rep, const SigmaTensor& s, int threads) {
  auto tuple_witness = [](const SigmaCounterexample& c) {
    return json{{"tuple", {c.a, c.b, c.c, c.d}}, {"lhs", c.lhs}, {"rhs", c.rhs}};
  };
  auto tt = check_tt(s, threads);
  rep.add("sigma/tt", "tt-compatibility", tt ? CheckStatus::Fail : CheckStatus::Pass).witness =
      tt ? tuple_witness(*tt) : json();
  auto lr = check_left_rhot(s, threads);
  rep.add("sigma/left-rhot", "left-bialgebroid-condition",
          lr ? CheckStatus::Fail : CheckStatus::Pass)
      .witness = lr ? tuple_witness(*lr) : json();
  auto rr = check_right_rhot(s, threads);
  rep.add("sigma/right-rhot", "right-bialgebroid-condition",
          rr ? CheckStatus::Fail : CheckStatus::Pass)
      .witness = rr ? tuple_witness(*rr) : json();
  RemarkReport rem{!rr.has_value(), !lr.has_value(), !tt.has_value()};
  rep.add("sigma/right-iff-left-and-tt", "right-iff-left-and-tt",
          rem.consistent() ? CheckStatus::Pass : CheckStatus::Fail)
      .witness = json{{"right", rem.right_ok}, {"left", rem.left_ok}, {"tt", rem.tt_ok}};
}

json radical_annotation(const InstanceConfig& cfg, const Instance& ins) {
  json out;
  if (!cfg.field.rational()) {
    out["radical_dim"] = nullptr;
    out["note"] = "semisimplicity witness needs rational mode";
    return out;
  }
  int rd = ins.ring->R.radical_dim();
  out["radical_dim"] = rd;
  if (rd > 0)
    out["annotation"] =
        "base algebra R has a nonzero trace-form radical: A_sigma is not a weak Hopf algebra";
  return out;
}

}  // namespace

RunResult run_validate(const InstanceConfig& cfg) {
  RunResult out;
  Instance ins = Instance::build(cfg);
  CheckReport rep = validation_report(ins);
  out.report = report_skeleton(cfg, "validate");
  out.report["checks"] = rep.to_json();
  out.status = status_of(rep);
  return out;
}

RunResult run_check_sigma(const InstanceConfig& cfg) {
  RunResult out;
  Instance ins = Instance::build(cfg);
  CheckReport rep = validation_report(ins);
  out.report = report_skeleton(cfg, "check-sigma");
  if (rep.any_fail()) {
    out.report["checks"] = rep.to_json();
    out.status = 1;
    return out;
  }
  SigmaCtxPtr sc = make_sigma_ctx(ins.ring, ins.q, ins.tern, ins.pi);
  SigmaTensor s = build_sigma(ins, sc);
  add_sigma_checks(rep, s, cfg.threads);
  out.report["checks"] = rep.to_json();
  out.report["base_algebra"] = radical_annotation(cfg, ins);
  out.artifacts.emplace_back("sigma.json", sigma_to_json(s));
  out.status = status_of(rep);
  return out;
}

RunResult run_verify(const InstanceConfig& cfg) {
  RunResult out;
  Instance ins = Instance::build(cfg);
  CheckReport rep = validation_report(ins);
  out.report = report_skeleton(cfg, "verify");
  if (rep.any_fail()) {
    out.report["checks"] = rep.to_json();
    out.status = 1;
    return out;
  }
  SigmaCtxPtr sc = make_sigma_ctx(ins.ring, ins.q, ins.tern, ins.pi);
  SigmaTensor s = build_sigma(ins, sc);

  const std::vector<std::string>& suites = cfg.suites.empty() ? kAllSuites : cfg.suites;
  auto selected = [&](const std::string& name) {
    return std::find(suites.begin(), suites.end(), name) != suites.end();
  };

  MembershipOptions mopts;
  mopts.threads = cfg.threads;
  mopts.max_columns = 500000;  // pipeline guard; aborted solves report as open

  if (selected("sigma")) add_sigma_checks(rep, s, cfg.threads);

  std::optional<RigidityCertificate> cert;
  bool need_cert = selected("rigidity") || selected("antipode-ideal") ||
                   selected("rigid-identities") || selected("hopf");
  if (need_cert) {
    auto built = build_rigidity_certificate(s, cfg.threads);
    if (std::holds_alternative<RigidityCertificate>(built)) {
      cert = std::move(std::get<RigidityCertificate>(built));
      if (selected("rigidity")) {
        rep.add("rigidity/contraction", "dual-tensor-contraction", CheckStatus::Pass);
        for (int c = 2; c <= 5; ++c)
          rep.add("rigidity/q" + std::to_string(c) + "-inverse", "q-family-inverses",
                  CheckStatus::Pass)
              .witness = json{{"two_sided", cert->qs.two_sided[c - 2]}};
        out.artifacts.emplace_back("rigidity.json", rigidity_to_json(*cert));
      }
    } else {
      const auto& f = std::get<RigidityFailure>(built);
      rep.add("rigidity/" + f.stage, f.stage == "istar" ? "dual-tensor-contraction" : "q-family-inverses",
              CheckStatus::Fail)
          .witness = json{{"detail", f.detail}};
    }
  }

  RelationSet rels = RelationSet::build(s);
  std::optional<MembershipOracle> oracle;
  auto eng = [&]() -> MembershipOracle& {
    if (!oracle) oracle.emplace(rels, cfg.degree_bound, mopts);
    return *oracle;
  };

  if (selected("epsilon-kills")) rep.merge(verify_counit_kills_ideal(rels, cfg.threads));
  if (selected("coproduct-ideal"))
    rep.merge(verify_coproduct_exchange_ideal(rels, cfg.degree_bound, mopts));
  if (selected("antipode-ideal")) {
    if (cert) rep.merge(verify_antipode_kills_ideal(rels, *cert, cfg.degree_bound, mopts));
    else rep.add("antipode-ideal/unavailable", "antipode-kills-ideal", CheckStatus::Inconclusive)
             .witness = json{{"reason", "no rigidity certificate"}};
  }
  if (selected("rigid-identities")) {
    if (cert) rep.merge(verify_rigidity_identities(*cert, rels, eng()));
    else rep.add("rigid-identities/unavailable", "rigidity-identities", CheckStatus::Inconclusive)
             .witness = json{{"reason", "no rigidity certificate"}};
  }
  if (selected("bialgebroid-axioms"))
    rep.merge(verify_bialgebroid_axioms(rels, eng(), cfg.seed, mopts));
  if (selected("hopf")) {
    if (cert) rep.merge(verify_hopf_axioms(*cert, rels, eng(), cfg.seed));
    else rep.add("hopf/unavailable", "antipode-compatibility", CheckStatus::Inconclusive)
             .witness = json{{"reason", "no rigidity certificate"}};
  }

  out.report["checks"] = rep.to_json();
  out.report["suites"] = suites;
  out.artifacts.emplace_back("sigma.json", sigma_to_json(s));
  collect_certificates(rep, out);
  out.status = status_of(rep);
  return out;
}

}  // namespace hopfalgd
