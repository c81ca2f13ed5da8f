#include <cmath>
#include <numbers>

#include "doctest.h"
#include "kerrkit/diffgeo.hpp"
#include "kerrkit/error.hpp"

using namespace kerrkit;

namespace {

double max_abs(const Tensor4& t) {
  double m = 0.0;
  for (const auto& a : t)
    for (const auto& b : a)
      for (const auto& c : b)
        for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("flat Christoffel symbol in spherical coordinates") {
  const double r = 3.7;
  const Tensor3 g = christoffel(KerrParams::make(0.0, 0.0), {0, r, 1.1, 0});
  CHECK(g[kR][kTheta][kTheta] == doctest::Approx(-r));
  CHECK(g[kTheta][kR][kTheta] == doctest::Approx(1.0 / r));
}

TEST_CASE("Schwarzschild Christoffel symbol Gamma^t_tr at r = 4") {
  const Tensor3 g = christoffel(KerrParams::make(0.0, 1.0), {0, 4.0, 1.0, 0});
  CHECK(g[kT][kT][kR] == doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("Christoffel symbols are torsion free and match finite differences") {
  const KerrParams p = KerrParams::make(0.6, 1.0);
  const BLPoint x{0.3, 3.1, 1.2, 0.4};
  const Tensor3 g = christoffel(p, x);
  for (int m = 0; m < 4; ++m)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) CHECK(g[m][a][b] == g[m][b][a]);
  // Gamma_{r theta theta} = -1/2 d_r g_thth.
  const double h = 1e-5;
  auto gthth = [&](double r) { return metric(p, {0, r, x.theta, 0}).g[kTheta][kTheta]; };
  const double fd = (gthth(x.r + h) - gthth(x.r - h)) / (2 * h);
  const Mat4 gl = metric(p, x).g;
  double lowered = 0.0;
  for (int l = 0; l < 4; ++l) lowered += gl[kR][l] * g[l][kTheta][kTheta];
  CHECK(lowered == doctest::Approx(-0.5 * fd).epsilon(1e-8));
}

TEST_CASE("flat space has vanishing curvature") {
  const CurvatureAt c = curvature(KerrParams::make(0.0, 0.0), {0, 5.0, 0.9, 0.1});
  CHECK(max_abs(c.riemann) < 1e-13);
  CHECK(ricci_residual(KerrParams::make(0.0, 0.0), {0, 5.0, 0.9, 0.1}) < 1e-13);
}

TEST_CASE("Schwarzschild Kretschmann scalar at r = 3") {
  const CurvatureAt c = curvature(KerrParams::make(0.0, 1.0), {0, 3.0, 1.0, 0});
  CHECK(kretschmann(c) == doctest::Approx(48.0 / 729.0).epsilon(1e-12));
}

TEST_CASE("Kerr Kretschmann scalar matches the closed form") {
  // K = 48 m^2 (r^6 - 15 r^4 c^2 + 15 r^2 c^4 - c^6) / |q|^12 with c = a cos(theta).
  const double a = 0.6, m = 1.0, r = 2.5, th = 0.7;
  const CurvatureAt c = curvature(KerrParams::make(a, m), {0, r, th, 0});
  const double x = a * std::cos(th);
  const double q2 = r * r + x * x;
  const double want = 48 * m * m *
                      (std::pow(r, 6) - 15 * std::pow(r, 4) * x * x + 15 * r * r * std::pow(x, 4) -
                       std::pow(x, 6)) /
                      std::pow(q2, 6);
  CHECK(kretschmann(c) == doctest::Approx(want).epsilon(1e-11));
}

TEST_CASE("vacuum equations hold") {
  CHECK(ricci_residual(KerrParams::make(0.0, 1.0), {0, 5.0, 1.0, 0}) < 1e-8);
  CHECK(ricci_residual(KerrParams::make(0.3, 1.0), {0, 3.0, 1.0, 0}) < 1e-8);
  CHECK(contracted_bianchi_residual(KerrParams::make(0.7, 1.0), {0, 2.4, 0.6, 0}) < 1e-8);
}

TEST_CASE("Riemann symmetries and double dual") {
  const CurvatureAt c = curvature(KerrParams::make(0.5, 1.0), {0, 4.0, 0.8, 0});
  const double s = max_abs(c.riemann);
  double worst = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int g = 0; g < 4; ++g)
        for (int d = 0; d < 4; ++d) {
          const double v = c.riemann[a][b][g][d];
          worst = std::max({worst, std::abs(v + c.riemann[b][a][g][d]),
                            std::abs(v - c.riemann[g][d][a][b]),
                            std::abs(v + c.riemann[a][g][d][b] + c.riemann[a][d][b][g])});
        }
  CHECK(worst < 1e-12 * s);
  // Left dual applied twice gives -R.
  const Tensor4 dd = left_dual(c.riemann_dual, c.g_inv, c.det);
  double diff = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int g = 0; g < 4; ++g)
        for (int d = 0; d < 4; ++d)
          diff = std::max(diff, std::abs(dd[a][b][g][d] + c.riemann[a][b][g][d]));
  CHECK(diff < 1e-12 * s);
}

TEST_CASE("volume form orientation") {
  const MetricAt m = metric(KerrParams::make(0.3, 1.0), {0, 3.0, 1.0, 0});
  const Tensor4 eps = volume_form(m.det);
  CHECK(eps[kT][kR][kTheta][kPhi] == doctest::Approx(std::sqrt(-m.det)));
  CHECK(eps[kR][kT][kTheta][kPhi] == doctest::Approx(-std::sqrt(-m.det)));
}

TEST_CASE("curvature of a user metric function") {
  // Flat space written in spherical coordinates through the generic path.
  const MetricFn flat = [](const Coords& x) {
    Mat4T<Jet> g;
    for (auto& row : g) row.fill(Jet(0.0));
    const Jet s = sin(x[kTheta]);
    g[kT][kT] = Jet(-1.0);
    g[kR][kR] = Jet(1.0);
    g[kTheta][kTheta] = x[kR] * x[kR];
    g[kPhi][kPhi] = x[kR] * x[kR] * s * s;
    return g;
  };
  CHECK(max_abs(curvature(flat, {0, 2.0, 1.3, 0}).riemann) < 1e-13);
}

TEST_CASE("Killing fields and a non-Killing control") {
  const KerrParams p = KerrParams::make(0.7, 1.0);
  const BLPoint x{0, 2.6, 0.5, 1.0};
  CHECK(killing_residual_normalized(p, time_translation(), x) < 1e-12);
  CHECK(killing_residual_normalized(p, axial_rotation(), x) < 1e-12);
  const Mat4 l = killing_residual(KerrParams::make(0.0, 1.0), radial_field(), {0, 4.0, 1.0, 0});
  CHECK(l[kTheta][kTheta] == doctest::Approx(8.0));
}

TEST_CASE("wave operator") {
  const ScalarField one{"one", [](const Coords&) { return Jet(1.0); }};
  const ScalarField t{"t", [](const Coords& x) { return x[kT]; }};
  const ScalarField r2{"r2", [](const Coords& x) { return x[kR] * x[kR]; }};
  CHECK(std::abs(wave_operator_apply(KerrParams::make(0.4, 1.0), one, {0, 3, 1, 0})) < 1e-14);
  CHECK(std::abs(wave_operator_apply(KerrParams::make(0.0, 1.0), t, {0, 3, 1, 0})) < 1e-14);
  CHECK(wave_operator_apply(KerrParams::make(0.0, 0.0), r2, {0, 3, 1, 0}) ==
        doctest::Approx(6.0).epsilon(1e-13));
  CHECK(wave_operator_apply(KerrParams::make(0.0, 0.0), r2, {0, 11, 0.2, 0}) ==
        doctest::Approx(6.0).epsilon(1e-13));
}

TEST_CASE("local geometry rejects the horizon") {
  CHECK_THROWS_AS(local_geometry(KerrParams::make(0.0, 1.0), {0, 2.0, 1.0, 0}, 2), DomainError);
}
