// Batch front door: parse an instance config, run a pipeline, emit the report
// and certificate artifacts. Links only the C API.
#include <sys/stat.h>
#include <sys/types.h>

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "hopfalgd.h"

namespace {

using nlohmann::json;

struct CommonFlags {
  std::string config_path;
  std::string field;
  int degree_bound = -1;
  std::vector<std::string> suites;
  int threads = 0;
  std::string certificates_dir = "certificates";
  long long seed = -1;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("config", f.config_path, "instance config JSON file")->required();
  cmd->add_option("--field", f.field, "field override: rational or gf:<p>");
  cmd->add_option("--degree-bound", f.degree_bound, "membership degree bound");
  cmd->add_option("--suite", f.suites, "suite selection (repeatable)");
  cmd->add_option("--threads", f.threads, "worker count");
  cmd->add_option("--certificates-dir", f.certificates_dir, "directory for certificate files");
  cmd->add_option("--seed", f.seed, "seed for randomized checks");
  cmd->add_option("--format", f.format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
}

std::string options_json(const CommonFlags& f) {
  json o = json::object();
  if (!f.field.empty()) o["field"] = f.field;
  if (f.degree_bound >= 0) o["degree_bound"] = f.degree_bound;
  if (!f.suites.empty()) o["suites"] = f.suites;
  if (f.threads > 0) o["threads"] = f.threads;
  if (f.seed >= 0) o["seed"] = static_cast<uint64_t>(f.seed);
  return o.dump();
}

int fail_input(const char* msg) {
  std::cerr << "error: " << (msg ? msg : "invalid input") << "\n";
  return HX_EINVAL;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << content << "\n";
  return static_cast<bool>(out);
}

void render_text(const json& report, std::ostream& os) {
  os << "instance " << report.value("instance", std::string("?")) << "  command "
     << report.value("command", std::string("?")) << "  field "
     << report.value("field", std::string("?")) << "\n";
  if (report.contains("bounds")) os << "degree bound " << report["bounds"]["D"] << "\n";
  if (report.contains("base_algebra")) {
    const json& ba = report["base_algebra"];
    if (ba.contains("radical_dim") && !ba["radical_dim"].is_null())
      os << "radical_dim(R) = " << ba["radical_dim"] << "\n";
    if (ba.contains("annotation")) os << ba["annotation"].get<std::string>() << "\n";
  }
  size_t pass = 0, fail = 0, open = 0;
  for (const auto& c : report.value("checks", json::array())) {
    std::string st = c.value("status", "?");
    if (st == "pass") ++pass;
    else if (st == "fail") ++fail;
    else ++open;
    os << "  [" << st << "] " << c.value("id", "?") << " (" << c.value("anchor", "?") << ")";
    if (c.contains("witness") && st != "pass") os << " witness=" << c["witness"].dump();
    os << "\n";
  }
  os << pass << " pass, " << fail << " fail, " << open << " inconclusive\n";
}

int run(const std::string& command, const CommonFlags& f) {
  std::ifstream in(f.config_path, std::ios::binary);
  if (!in) return fail_input(("cannot read config file '" + f.config_path + "'").c_str());
  std::stringstream ss;
  ss << in.rdbuf();

  hx_instance* ins = nullptr;
  char* err = nullptr;
  int rc = hx_instance_new(ss.str().c_str(), &ins, &err);
  if (rc != HX_OK) {
    int code = fail_input(err);
    hx_string_free(err);
    return code;
  }

  hx_run* r = nullptr;
  rc = hx_run_command(ins, command.c_str(), options_json(f).c_str(), &r, &err);
  if (rc != HX_OK) {
    std::cerr << "error: " << (err ? err : "run failed") << "\n";
    hx_string_free(err);
    hx_instance_free(ins);
    return rc == HX_EINVAL ? HX_EINVAL : HX_INTERNAL;
  }

  std::string report_text = hx_run_report_json(r);
  if (!write_file("report.json", report_text))
    std::cerr << "warning: could not write report.json\n";
  bool made_cert_dir = false;
  for (int i = 0; i < hx_run_artifact_count(r); ++i) {
    std::string name = hx_run_artifact_name(r, i);
    std::string path = name;
    if (name.rfind("certificates/", 0) == 0) {
      if (!made_cert_dir) {
        mkdir(f.certificates_dir.c_str(), 0755);
        made_cert_dir = true;
      }
      path = f.certificates_dir + "/" + name.substr(strlen("certificates/"));
    }
    if (!write_file(path, hx_run_artifact_json(r, i)))
      std::cerr << "warning: could not write " << path << "\n";
  }

  int status = hx_run_status(r);
  if (f.format == "text") {
    render_text(json::parse(report_text), std::cout);
  } else {
    std::cout << report_text << "\n";
  }
  hx_run_free(r);
  hx_instance_free(ins);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification toolkit for sigma-built Hopf algebroids"};
  app.require_subcommand(1);

  CommonFlags fv, fc, fy;
  CLI::App* validate = app.add_subcommand("validate", "validate the combinatorial input data");
  add_common(validate, fv);
  CLI::App* check = app.add_subcommand("check-sigma", "build sigma and check its conditions");
  add_common(check, fc);
  CLI::App* verify = app.add_subcommand("verify", "run rigidity and the verification suites");
  add_common(verify, fy);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : HX_EINVAL;
  }

  try {
    if (validate->parsed()) return run("validate", fv);
    if (check->parsed()) return run("check-sigma", fc);
    return run("verify", fy);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return HX_INTERNAL;
  }
}
