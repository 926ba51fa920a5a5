#pragma once

#include <array>

#include "hopfalgd/bialgebroid.hpp"

namespace hopfalgd {

// Parsed run configuration. The digest of the canonical form ties reports to
// the exact inputs that produced them.
struct InstanceConfig {
  Field field = Field::rationals();
  std::string algebra_name = "base";
  nlohmann::json algebra_custom;  // set iff algebra_name == "custom"
  nlohmann::json quasigroup_spec = nlohmann::json{{"kind", "abelian"}, {"n", 2}};
  nlohmann::json ternary_spec = nlohmann::json{{"kind", "abelian_default"}};
  std::vector<int> pi;  // empty: identity
  int degree_bound = 4;
  std::vector<std::string> suites;  // empty: all
  uint64_t seed = 0;
  int threads = 1;
  std::optional<std::array<int, 5>> debug_mutation;  // a,b,c,d,point

  static InstanceConfig parse(const std::string& json_text);
  nlohmann::json canonical() const;
  std::string digest() const;
};

struct RunOptions {
  std::optional<std::string> field;
  std::optional<int> degree_bound;
  std::vector<std::string> suites;
  std::optional<uint64_t> seed;
  std::optional<int> threads;
};

RunOptions parse_run_options(const std::string& json_text);
InstanceConfig apply_overrides(InstanceConfig cfg, const RunOptions& opts);

extern const std::vector<std::string> kAllSuites;

struct RunResult {
  int status = 0;  // 0 pass, 1 fail, 3 inconclusive
  nlohmann::json report;
  std::vector<std::pair<std::string, nlohmann::json>> artifacts;
};

// Materialized combinatorial data; construction validates shapes only, the
// mathematical validation is what run_validate reports on.
struct Instance {
  InstanceConfig cfg;
  RingCtxPtr ring;
  Quasigroup q;
  TernaryOp tern;
  PiBijection pi;

  static Instance build(const InstanceConfig& cfg);
};

RunResult run_validate(const InstanceConfig& cfg);
RunResult run_check_sigma(const InstanceConfig& cfg);
RunResult run_verify(const InstanceConfig& cfg);

}  // namespace hopfalgd
