// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "kerrkit/kerrkit.h"

namespace {

enum Exit { kPass = 0, kCheckFailure = 1, kConfigError = 2 };

int exit_code(kk_status status) {
  switch (status) {
    case KK_OK: return kPass;
    case KK_CHECK_FAILED: return kCheckFailure;
    default: return kConfigError;
  }
}

int report(kk_status status, const kk_run_summary& summary) {
  if (status == KK_CHECK_FAILED) {
    std::fprintf(stderr, "kerrkit: %ld failing row(s)\n", summary.failures);
  } else if (status != KK_OK) {
    std::fprintf(stderr, "kerrkit: %s: %s\n", kk_status_name(status), kk_last_error());
  }
  return exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kerr geometry verification toolkit"};
  app.require_subcommand(1);
  std::string config_path, out_path, suite;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--out", out_path, "output file (default: stdout)");
  };
  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  add_common(verify);
  verify->add_option("--suite", suite, "suite name (default: all)");
  CLI::App* table = app.add_subcommand("table", "compare principal-frame values with closed forms");
  add_common(table);
  CLI::App* evolve = app.add_subcommand("evolve", "evolve the Regge-Wheeler equation");
  add_common(evolve);
  CLI::App* modes = app.add_subcommand("modes", "l = 1 projections and isothermal fit");
  add_common(modes);
  CLI::App* transform = app.add_subcommand("transform", "apply a frame transformation");
  add_common(transform);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kConfigError;
  }

  kk_config* cfg = nullptr;
  kk_status status = config_path.empty() ? kk_config_parse("", &cfg)
                                         : kk_config_load(config_path.c_str(), &cfg);
  if (status != KK_OK) {
    std::fprintf(stderr, "kerrkit: %s: %s\n", kk_status_name(status), kk_last_error());
    return kConfigError;
  }
  const char* out = out_path.empty() ? nullptr : out_path.c_str();
  kk_run_summary summary{0, 0};
  if (verify->parsed())
    status = kk_run_verify(cfg, suite.empty() ? nullptr : suite.c_str(), out, &summary);
  else if (table->parsed())
    status = kk_run_table(cfg, out, &summary);
  else if (evolve->parsed())
    status = kk_run_evolve(cfg, out, &summary);
  else if (modes->parsed())
    status = kk_run_modes(cfg, out, &summary);
  else
    status = kk_run_transform(cfg, out, &summary);
  kk_config_destroy(cfg);
  return report(status, summary);
}
