#include "hopfalgd.h"

#include <cstring>
#include <string>
#include <vector>

#include "hopfalgd/instance.hpp"

using namespace hopfalgd;

struct hx_instance {
  InstanceConfig cfg;
  std::string digest;
};

struct hx_run {
  int status = 0;
  std::string report;
  std::vector<std::pair<std::string, std::string>> artifacts;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(malloc(s.size() + 1));
  if (out) memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_err(char** errmsg, const std::string& what) {
  if (errmsg) *errmsg = dup_string(what);
}

}  // namespace

extern "C" {

int hx_instance_new(const char* config_json, hx_instance** out, char** errmsg) {
  if (!config_json || !out) {
    set_err(errmsg, "null argument");
    return HX_EINVAL;
  }
  *out = nullptr;
  try {
    auto ins = new hx_instance;
    ins->cfg = InstanceConfig::parse(config_json);
    ins->digest = ins->cfg.digest();
    *out = ins;
    return HX_OK;
  } catch (const InputError& e) {
    set_err(errmsg, e.what());
    return HX_EINVAL;
  } catch (const std::exception& e) {
    set_err(errmsg, e.what());
    return HX_INTERNAL;
  }
}

void hx_instance_free(hx_instance* ins) { delete ins; }

const char* hx_instance_digest(const hx_instance* ins) { return ins->digest.c_str(); }

int hx_run_command(hx_instance* ins, const char* command, const char* options_json, hx_run** out,
                   char** errmsg) {
  if (!ins || !command || !out) {
    set_err(errmsg, "null argument");
    return HX_EINVAL;
  }
  *out = nullptr;
  try {
    RunOptions opts = parse_run_options(options_json ? options_json : "");
    InstanceConfig cfg = apply_overrides(ins->cfg, opts);
    std::string cmd(command);
    RunResult res;
    if (cmd == "validate") res = run_validate(cfg);
    else if (cmd == "check-sigma") res = run_check_sigma(cfg);
    else if (cmd == "verify") res = run_verify(cfg);
    else {
      set_err(errmsg, "unknown command '" + cmd + "'");
      return HX_EINVAL;
    }
    auto run = new hx_run;
    run->status = res.status;
    run->report = res.report.dump(2);
    for (auto& [name, content] : res.artifacts)
      run->artifacts.emplace_back(name, content.dump(2));
    *out = run;
    return HX_OK;
  } catch (const InputError& e) {
    set_err(errmsg, e.what());
    return HX_EINVAL;
  } catch (const UnsupportedMode& e) {
    set_err(errmsg, e.what());
    return HX_EINVAL;
  } catch (const std::exception& e) {
    set_err(errmsg, e.what());
    return HX_INTERNAL;
  }
}

int hx_run_status(const hx_run* run) { return run->status; }

const char* hx_run_report_json(const hx_run* run) { return run->report.c_str(); }

int hx_run_artifact_count(const hx_run* run) { return static_cast<int>(run->artifacts.size()); }

const char* hx_run_artifact_name(const hx_run* run, int index) {
  if (index < 0 || index >= static_cast<int>(run->artifacts.size())) return nullptr;
  return run->artifacts[index].first.c_str();
}

const char* hx_run_artifact_json(const hx_run* run, int index) {
  if (index < 0 || index >= static_cast<int>(run->artifacts.size())) return nullptr;
  return run->artifacts[index].second.c_str();
}

void hx_run_free(hx_run* run) { delete run; }

void hx_string_free(char* s) { free(s); }

const char* hx_version(void) { return "0.1.0"; }

}  // extern "C"
