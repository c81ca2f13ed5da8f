#include <cmath>
#include <numbers>

#include "doctest.h"
#include "kerrkit/error.hpp"
#include "kerrkit/sampler.hpp"

using namespace kerrkit;

TEST_CASE("splitmix64 reference values") {
  std::uint64_t s = 0;
  CHECK(splitmix64(s) == 0xE220A8397B1DCDAFULL);
  CHECK(splitmix64(s) == 0x6E789E6AA1B965F4ULL);
}

TEST_CASE("Kronecker points lie in the unit cube and fill it evenly") {
  const KroneckerSequence seq(4, 99);
  std::vector<double> mean(4, 0.0);
  const int n = 4096;
  for (int i = 0; i < n; ++i) {
    const auto u = seq.at(i);
    REQUIRE(u.size() == 4);
    for (int k = 0; k < 4; ++k) {
      CHECK(u[k] >= 0.0);
      CHECK(u[k] < 1.0);
      mean[k] += u[k] / n;
    }
  }
  for (double v : mean) CHECK(std::abs(v - 0.5) < 5e-3);
}

TEST_CASE("default design: 500 points per block, deterministic") {
  const SampleSpec spec;
  const auto a = sample_points(spec);
  const auto b = sample_points(spec);
  CHECK(a.size() == 500 * spec.masses.size() * spec.a_over_m.size());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].point.r == b[i].point.r);
    CHECK(a[i].point.theta == b[i].point.theta);
    CHECK(a[i].point.phi == b[i].point.phi);
    CHECK(a[i].point.t == b[i].point.t);
  }
  SampleSpec other = spec;
  other.seed += 1;
  CHECK(sample_points(other)[0].point.r != a[0].point.r);
}

TEST_CASE("points respect the domain bounds") {
  const SampleSpec spec;
  for (const auto& s : sample_points(spec)) {
    const double rp = horizon_radii(s.params).r_plus;
    CHECK(s.point.r > 1.01 * rp);
    CHECK(s.point.r <= spec.r_max * s.params.m + 1e-12);
    CHECK(s.point.theta >= spec.theta_margin);
    CHECK(s.point.theta <= std::numbers::pi - spec.theta_margin);
    CHECK(std::abs(s.params.a) < s.params.m);
  }
}

TEST_CASE("transform samples respect their bounds") {
  const SampleSpec spec;
  const auto xs = sample_transforms(spec);
  CHECK(xs.size() == 100);
  double mean = 0.0, var = 0.0;
  for (const auto& x : xs) {
    CHECK(std::hypot(x.f[0], x.f[1]) <= 0.3 + 1e-15);
    CHECK(std::hypot(x.fb[0], x.fb[1]) <= 0.3 + 1e-15);
    CHECK(x.lambda >= 0.5);
    CHECK(x.lambda <= 2.0);
    mean += x.lambda / xs.size();
  }
  for (const auto& x : xs) var += (x.lambda - mean) * (x.lambda - mean) / xs.size();
  CHECK(var > 0.1);
}

TEST_CASE("invalid designs are configuration errors") {
  SampleSpec s;
  s.a_over_m = {1.0};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = SampleSpec{};
  s.r_min_factor = 1.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = SampleSpec{};
  s.theta_margin = 0.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = SampleSpec{};
  s.masses = {-1.0};
  CHECK_THROWS_AS(s.validate(), ConfigError);
}
