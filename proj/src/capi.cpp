#include "kerrkit/kerrkit.h"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "kerrkit/carter.hpp"
#include "kerrkit/config.hpp"
#include "kerrkit/diffgeo.hpp"
#include "kerrkit/error.hpp"
#include "kerrkit/frames.hpp"
#include "kerrkit/kerr_metric.hpp"
#include "kerrkit/suites.hpp"

struct kk_spacetime {
  kerrkit::KerrParams params;
};

struct kk_config {
  kerrkit::Config config;
};

namespace {

thread_local std::string g_last_error;

kk_status fail(kk_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <class F>
kk_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const kerrkit::ConfigError& e) {
    return fail(KK_CONFIG_ERROR, e.what());
  } catch (const kerrkit::DomainError& e) {
    return fail(KK_DOMAIN_ERROR, e.what());
  } catch (const kerrkit::ContractError& e) {
    return fail(KK_CONTRACT_ERROR, e.what());
  } catch (const kerrkit::ConvergenceError& e) {
    return fail(KK_CONVERGENCE_ERROR, e.what());
  } catch (const std::exception& e) {
    return fail(KK_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(KK_INTERNAL_ERROR, "unknown error");
  }
}

kerrkit::BLPoint point_of(const double x[4]) { return {x[0], x[1], x[2], x[3]}; }

void copy_mat(const kerrkit::Mat4& m, double* out) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[4 * i + j] = m[i][j];
}

// Runs `body` against the requested sink and maps its failure count.
template <class F>
kk_status run_to(const char* out_path, kk_run_summary* summary, F&& body) {
  return guarded([&]() -> kk_status {
    std::ostringstream buf;
    const std::pair<long, long> counts = body(buf);
    if (out_path) {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) return fail(KK_IO_ERROR, std::string("cannot open '") + out_path + "'");
      file << buf.str();
      if (!file) return fail(KK_IO_ERROR, std::string("cannot write '") + out_path + "'");
    } else {
      std::cout << buf.str() << std::flush;
    }
    if (summary) *summary = {counts.first, counts.second};
    return counts.second == 0 ? KK_OK : KK_CHECK_FAILED;
  });
}

}  // namespace

extern "C" {

const char* kk_version(void) { return "0.1.0"; }

const char* kk_last_error(void) { return g_last_error.c_str(); }

const char* kk_status_name(kk_status status) {
  switch (status) {
    case KK_OK: return "ok";
    case KK_CHECK_FAILED: return "check failed";
    case KK_CONFIG_ERROR: return "config error";
    case KK_DOMAIN_ERROR: return "domain error";
    case KK_CONTRACT_ERROR: return "contract error";
    case KK_CONVERGENCE_ERROR: return "convergence error";
    case KK_IO_ERROR: return "i/o error";
    case KK_INVALID_ARGUMENT: return "invalid argument";
    case KK_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

kk_status kk_spacetime_create(double a, double m, kk_spacetime** out) {
  if (!out) return fail(KK_INVALID_ARGUMENT, "out is null");
  *out = nullptr;
  return guarded([&] {
    *out = new kk_spacetime{kerrkit::KerrParams::make(a, m)};
    return KK_OK;
  });
}

void kk_spacetime_destroy(kk_spacetime* st) { delete st; }

kk_status kk_horizon_radii(const kk_spacetime* st, double* r_plus, double* r_minus) {
  if (!st || !r_plus || !r_minus) return fail(KK_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const kerrkit::HorizonRadii h = kerrkit::horizon_radii(st->params);
    *r_plus = h.r_plus;
    *r_minus = h.r_minus;
    return KK_OK;
  });
}

kk_status kk_metric(const kk_spacetime* st, const double x[4], double g[16], double g_inv[16],
                    double* det) {
  if (!st || !x) return fail(KK_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const kerrkit::MetricAt mt = kerrkit::metric(st->params, point_of(x));
    if (g) copy_mat(mt.g, g);
    if (g_inv) copy_mat(mt.g_inv, g_inv);
    if (det) *det = mt.det;
    return KK_OK;
  });
}

kk_status kk_christoffel(const kk_spacetime* st, const double x[4], double gamma[64]) {
  if (!st || !x || !gamma) return fail(KK_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const kerrkit::Tensor3 c = kerrkit::christoffel(st->params, point_of(x));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) gamma[16 * i + 4 * j + k] = c[i][j][k];
    return KK_OK;
  });
}

kk_status kk_ricci_residual(const kk_spacetime* st, const double x[4], double* out) {
  if (!st || !x || !out) return fail(KK_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = kerrkit::ricci_residual(st->params, point_of(x));
    return KK_OK;
  });
}

kk_status kk_principal_frame(const kk_spacetime* st, const double x[4], double frame[16]) {
  if (!st || !x || !frame) return fail(KK_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const kerrkit::NullFrame f = kerrkit::principal_frame(st->params, point_of(x));
    const int slots[] = {kerrkit::kE4, kerrkit::kE3, kerrkit::kE1, kerrkit::kE2};
    for (int k = 0; k < 4; ++k)
      for (int mu = 0; mu < 4; ++mu) frame[4 * k + mu] = f[slots[k]][mu];
    return KK_OK;
  });
}

kk_status kk_killing_tensor_residual(const kk_spacetime* st, const double x[4], double* out) {
  if (!st || !x || !out) return fail(KK_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = kerrkit::killing_tensor_residual(st->params, point_of(x));
    return KK_OK;
  });
}

kk_status kk_config_parse(const char* text, kk_config** out) {
  if (!text || !out) return fail(KK_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new kk_config{kerrkit::Config::parse(text)};
    return KK_OK;
  });
}

kk_status kk_config_load(const char* path, kk_config** out) {
  if (!path || !out) return fail(KK_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new kk_config{kerrkit::Config::load(path)};
    return KK_OK;
  });
}

void kk_config_destroy(kk_config* cfg) { delete cfg; }

kk_status kk_run_verify(const kk_config* cfg, const char* suite, const char* out_path,
                        kk_run_summary* summary) {
  if (!cfg) return fail(KK_INVALID_ARGUMENT, "config is null");
  return run_to(out_path, summary, [&](std::ostream& os) {
    kerrkit::VerifyOptions opt = kerrkit::VerifyOptions::from_config(cfg->config);
    if (suite) {
      kerrkit::require_suite(suite);
      opt.suite = suite;
    }
    const auto rows = kerrkit::run_verify(opt);
    kerrkit::write_report(os, rows);
    return std::pair<long, long>(static_cast<long>(rows.size()),
                                 kerrkit::count_failures(rows));
  });
}

kk_status kk_run_table(const kk_config* cfg, const char* out_path, kk_run_summary* summary) {
  if (!cfg) return fail(KK_INVALID_ARGUMENT, "config is null");
  return run_to(out_path, summary, [&](std::ostream& os) {
    const int failures = kerrkit::run_table(cfg->config, os);
    return std::pair<long, long>(0, failures);
  });
}

kk_status kk_run_evolve(const kk_config* cfg, const char* out_path, kk_run_summary* summary) {
  if (!cfg) return fail(KK_INVALID_ARGUMENT, "config is null");
  return run_to(out_path, summary, [&](std::ostream& os) {
    const int failures = kerrkit::run_evolve(cfg->config, os);
    return std::pair<long, long>(0, failures);
  });
}

kk_status kk_run_modes(const kk_config* cfg, const char* out_path, kk_run_summary* summary) {
  if (!cfg) return fail(KK_INVALID_ARGUMENT, "config is null");
  return run_to(out_path, summary, [&](std::ostream& os) {
    const int failures = kerrkit::run_modes(cfg->config, os);
    return std::pair<long, long>(0, failures);
  });
}

kk_status kk_run_transform(const kk_config* cfg, const char* out_path,
                           kk_run_summary* summary) {
  if (!cfg) return fail(KK_INVALID_ARGUMENT, "config is null");
  return run_to(out_path, summary, [&](std::ostream& os) {
    const int failures = kerrkit::run_transform(cfg->config, os);
    return std::pair<long, long>(0, failures);
  });
}

}  // extern "C"
