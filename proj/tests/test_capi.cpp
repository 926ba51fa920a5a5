#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "hopfalgd.h"

namespace {

const char* kAbelian2 = R"({
  "quasigroup": {"kind": "abelian", "n": 2},
  "algebra_r": "base",
  "degree_bound": 4
})";

const char* kQg5Dual = R"({
  "quasigroup": {"kind": "builtin_qg5"},
  "algebra_r": "dual"
})";

}  // namespace

TEST_CASE("bad configs are rejected with a message") {
  hx_instance* ins = nullptr;
  char* err = nullptr;
  CHECK(hx_instance_new("{ not json", &ins, &err) == HX_EINVAL);
  CHECK(ins == nullptr);
  REQUIRE(err != nullptr);
  CHECK(strlen(err) > 0);
  hx_string_free(err);

  CHECK(hx_instance_new(R"({"bogus": 1})", &ins, &err) == HX_EINVAL);
  hx_string_free(err);
}

TEST_CASE("validate runs through the shared library surface") {
  hx_instance* ins = nullptr;
  char* err = nullptr;
  REQUIRE(hx_instance_new(kQg5Dual, &ins, &err) == HX_OK);
  CHECK(strlen(hx_instance_digest(ins)) == 16);

  hx_run* run = nullptr;
  REQUIRE(hx_run_command(ins, "validate", nullptr, &run, &err) == HX_OK);
  CHECK(hx_run_status(run) == HX_OK);
  std::string report = hx_run_report_json(run);
  CHECK(report.find("\"command\": \"validate\"") != std::string::npos);
  hx_run_free(run);

  // unknown command
  CHECK(hx_run_command(ins, "explode", nullptr, &run, &err) == HX_EINVAL);
  hx_string_free(err);
  err = nullptr;

  // bad options
  CHECK(hx_run_command(ins, "validate", R"({"suites": ["nope"]})", &run, &err) == HX_EINVAL);
  hx_string_free(err);
  hx_instance_free(ins);
}

TEST_CASE("check-sigma returns artifacts through the C surface") {
  hx_instance* ins = nullptr;
  char* err = nullptr;
  REQUIRE(hx_instance_new(kQg5Dual, &ins, &err) == HX_OK);
  hx_run* run = nullptr;
  REQUIRE(hx_run_command(ins, "check-sigma", nullptr, &run, &err) == HX_OK);
  CHECK(hx_run_status(run) == HX_OK);
  bool sigma_artifact = false;
  for (int i = 0; i < hx_run_artifact_count(run); ++i) {
    if (std::string(hx_run_artifact_name(run, i)) == "sigma.json") {
      sigma_artifact = true;
      CHECK(std::string(hx_run_artifact_json(run, i)).find("\"X\": 5") != std::string::npos);
    }
  }
  CHECK(sigma_artifact);
  std::string report = hx_run_report_json(run);
  CHECK(report.find("is not a weak Hopf algebra") != std::string::npos);
  hx_run_free(run);
  hx_instance_free(ins);
}

TEST_CASE("verify honors option overrides") {
  hx_instance* ins = nullptr;
  char* err = nullptr;
  REQUIRE(hx_instance_new(kAbelian2, &ins, &err) == HX_OK);
  hx_run* run = nullptr;
  REQUIRE(hx_run_command(ins, "verify", R"({"suites": ["sigma", "rigidity"]})", &run, &err) ==
          HX_OK);
  CHECK(hx_run_status(run) == HX_OK);
  hx_run_free(run);

  REQUIRE(hx_run_command(ins, "verify", R"({"suites": ["rigid-identities"], "degree_bound": 1})",
                         &run, &err) == HX_OK);
  CHECK(hx_run_status(run) == HX_INCONCLUSIVE);
  hx_run_free(run);
  hx_instance_free(ins);
}
