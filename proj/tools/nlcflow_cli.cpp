// Command-line front end over the nlcflow C interface.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlcflow/nlcflow.h"

namespace {

int fail(nlcf_status st) {
  std::fprintf(stderr, "error (%s): %s\n", nlcf_status_name(st), nlcf_last_error());
  return 2;
}

// A config argument is either a file path or "preset:NAME".
nlcf_status open_config(const std::string& arg, const std::vector<std::string>& overrides, nlcf_config** cfg) {
  nlcf_status st = arg.rfind("preset:", 0) == 0 ? nlcf_config_preset(arg.substr(7).c_str(), cfg)
                                                 : nlcf_config_load(arg.c_str(), cfg);
  if (st != NLCF_OK) return st;
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "--set expects key=value, got '%s'\n", kv.c_str());
      return NLCF_ERR_CONFIG;
    }
    st = nlcf_config_set(*cfg, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
    if (st != NLCF_OK) return st;
  }
  return NLCF_OK;
}

void print_and_free(char* s) {
  if (!s) return;
  std::printf("%s\n", s);
  nlcf_string_free(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonhomogeneous nematic liquid crystal flow simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", nlcf_version());

  std::string config_arg, csv_path, out_dir, snapshot_path;
  std::vector<std::string> overrides;
  double window_fraction = 0.5, xi = 0.0;

  auto* sim = app.add_subcommand("simulate", "run a scenario to t_end and report invariant checks");
  sim->add_option("config", config_arg, "config file or preset:NAME")->required();
  sim->add_option("--set", overrides, "override a setting, e.g. stepping.dt=1e-3");
  sim->add_option("--out", out_dir, "output directory (overrides output.out_dir)");

  auto* stat = app.add_subcommand("stationary", "solve the stationary director problem for the trace");
  stat->add_option("config", config_arg, "config file or preset:NAME")->required();
  stat->add_option("--set", overrides, "override a setting");
  stat->add_option("--snapshot", snapshot_path, "write d_inf to this snapshot file");

  auto* mms = app.add_subcommand("mms", "run the manufactured-solution refinement studies");
  mms->add_option("config", config_arg, "config file or preset:NAME")->required();
  mms->add_option("--set", overrides, "override a setting");

  auto* rep = app.add_subcommand("report", "summarize a diagnostics CSV");
  rep->add_option("csv", csv_path, "diagnostics CSV")->required()->check(CLI::ExistingFile);
  rep->add_option("--window", window_fraction, "tail fraction used by the decay fit");
  rep->add_option("--xi", xi, "force decay exponent for the predicted rate");

  CLI11_PARSE(app, argc, argv);

  if (*rep) {
    char* json = nullptr;
    const nlcf_status st = nlcf_report_csv(csv_path.c_str(), window_fraction, xi, &json);
    if (st != NLCF_OK) return fail(st);
    print_and_free(json);
    return 0;
  }

  nlcf_config* cfg = nullptr;
  nlcf_status st = open_config(config_arg, overrides, &cfg);
  if (st != NLCF_OK) {
    nlcf_config_free(cfg);
    return fail(st);
  }
  int code = 0;
  if (*sim) {
    if (!out_dir.empty()) st = nlcf_config_set(cfg, "output.out_dir", out_dir.c_str());
    int passed = 0;
    char* json = nullptr;
    if (st == NLCF_OK) st = nlcf_run(cfg, &json, &passed);
    if (st != NLCF_OK) {
      code = fail(st);
    } else {
      print_and_free(json);
      code = passed ? 0 : 1;
    }
  } else if (*stat) {
    char* json = nullptr;
    st = nlcf_stationary(cfg, snapshot_path.empty() ? nullptr : snapshot_path.c_str(), &json);
    if (st != NLCF_OK) {
      code = fail(st);
    } else {
      print_and_free(json);
    }
  } else if (*mms) {
    char* json = nullptr;
    int passed = 0;
    st = nlcf_mms(cfg, &json, &passed);
    print_and_free(json);
    code = st == NLCF_OK ? 0 : fail(st);
  }
  nlcf_config_free(cfg);
  return code;
}
