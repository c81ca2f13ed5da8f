#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "kerrkit/kerrkit.h"

TEST_CASE("spacetime lifecycle and domain errors") {
  kk_spacetime* st = nullptr;
  REQUIRE(kk_spacetime_create(0.5, 1.0, &st) == KK_OK);
  double rp = 0, rm = 0;
  CHECK(kk_horizon_radii(st, &rp, &rm) == KK_OK);
  CHECK(rp == doctest::Approx(1.0 + std::sqrt(0.75)));
  CHECK(rm == doctest::Approx(1.0 - std::sqrt(0.75)));
  kk_spacetime_destroy(st);

  kk_spacetime* bad = nullptr;
  CHECK(kk_spacetime_create(1.0, 1.0, &bad) == KK_DOMAIN_ERROR);
  CHECK(bad == nullptr);
  CHECK(std::strlen(kk_last_error()) > 0);
  CHECK(kk_spacetime_create(0.1, 1.0, nullptr) == KK_INVALID_ARGUMENT);
  CHECK(std::string(kk_status_name(KK_CONFIG_ERROR)) == "config error");
  CHECK(std::strlen(kk_version()) > 0);
}

TEST_CASE("metric, frame and residuals") {
  kk_spacetime* st = nullptr;
  REQUIRE(kk_spacetime_create(0.0, 1.0, &st) == KK_OK);
  const double x[4] = {0.0, 4.0, 1.0, 0.0};
  double g[16], gi[16], det = 0;
  REQUIRE(kk_metric(st, x, g, gi, &det) == KK_OK);
  CHECK(g[0] == doctest::Approx(-0.5));
  CHECK(g[5] == doctest::Approx(2.0));
  CHECK(gi[0] == doctest::Approx(-2.0));
  CHECK(det == doctest::Approx(-std::pow(16.0 * std::sin(1.0), 2)));
  double frame[16];
  REQUIRE(kk_principal_frame(st, x, frame) == KK_OK);
  CHECK(frame[0] == doctest::Approx(1.0));   // e4 = d_t + (Delta / r^2) d_r
  CHECK(frame[1] == doctest::Approx(0.5));
  CHECK(frame[4] == doctest::Approx(2.0));   // e3 = (r^2 / Delta) d_t - d_r
  CHECK(frame[5] == doctest::Approx(-1.0));
  double res = 1.0;
  CHECK(kk_ricci_residual(st, x, &res) == KK_OK);
  CHECK(res < 1e-8);
  CHECK(kk_killing_tensor_residual(st, x, &res) == KK_OK);
  CHECK(res < 1e-8);
  double gamma[64];
  CHECK(kk_christoffel(st, x, gamma) == KK_OK);
  CHECK(gamma[0 * 16 + 0 * 4 + 1] == doctest::Approx(1.0 / (4.0 * 2.0)));  // m / (r^2 f)
  const double inside[4] = {0.0, 1.5, 1.0, 0.0};
  CHECK(kk_metric(st, inside, g, gi, &det) == KK_DOMAIN_ERROR);
  kk_spacetime_destroy(st);
}

TEST_CASE("config errors") {
  kk_config* cfg = nullptr;
  CHECK(kk_config_parse("no equals\n", &cfg) == KK_CONFIG_ERROR);
  CHECK(cfg == nullptr);
  CHECK(std::string(kk_last_error()).size() > 0);
  CHECK(kk_config_load("/nonexistent/x.cfg", &cfg) == KK_CONFIG_ERROR);
  REQUIRE(kk_config_parse("[verify]\nbogus = 1\n", &cfg) == KK_OK);
  CHECK(kk_run_verify(cfg, nullptr, "/dev/null", nullptr) == KK_CONFIG_ERROR);
  kk_config_destroy(cfg);
}

TEST_CASE("verify run through the C interface") {
  kk_config* cfg = nullptr;
  REQUIRE(kk_config_parse("[verify]\nn_points = 2\nmasses = 1\na_over_m = 0.3\n", &cfg) == KK_OK);
  const std::string path = "capi_verify_report.csv";
  kk_run_summary summary{};
  CHECK(kk_run_verify(cfg, "metric", path.c_str(), &summary) == KK_OK);
  CHECK(summary.rows == 4);
  CHECK(summary.failures == 0);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str().rfind("check,", 0) == 0);
  std::remove(path.c_str());
  CHECK(kk_run_verify(cfg, "nosuch", "/dev/null", &summary) == KK_CONFIG_ERROR);
  CHECK(kk_run_verify(nullptr, nullptr, nullptr, nullptr) == KK_INVALID_ARGUMENT);
  kk_config_destroy(cfg);
}

TEST_CASE("transform run reports check failures") {
  kk_config* cfg = nullptr;
  REQUIRE(kk_config_parse("[transform]\nf1 = 0.2\nfb2 = 0.2\n", &cfg) == KK_OK);
  CHECK(kk_run_transform(cfg, "/dev/null", nullptr) == KK_CHECK_FAILED);
  kk_config_destroy(cfg);
}
