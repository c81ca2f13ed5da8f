#include <cmath>
#include <numbers>

#include "doctest.h"
#include "kerrkit/horizontal.hpp"

using namespace kerrkit;
constexpr double kPi = std::numbers::pi;

namespace {

double max_abs(const CForm2& u) {
  double m = 0.0;
  for (const auto& row : u)
    for (const cplx& v : row) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("dual and complexification conventions") {
  const Form2 u{{{1.0, 2.0}, {-3.0, 0.5}}};
  const Form2 d = dual(u);
  // (*u)_ab = eps_a^c u_cb with eps_12 = 1.
  CHECK(d[0][0] == u[1][0]);
  CHECK(d[0][1] == u[1][1]);
  CHECK(d[1][0] == -u[0][0]);
  const Form2 dd = dual(d);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(dd[a][b] == -u[a][b]);
  const CForm2 c = complexify(u);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      CHECK(c[a][b].real() == u[a][b]);
      CHECK(c[a][b].imag() == d[a][b]);
    }
  const Form1 f{0.3, -0.8};
  CHECK(dual(dual(f))[0] == -f[0]);
}

TEST_CASE("trace decomposition reconstructs") {
  const Form2 u{{{1.5, 0.25}, {-0.75, 2.0}}};
  const TraceDecomposition d = decompose(u);
  CHECK(d.tr == 3.5);
  CHECK(d.atr == 1.0);
  CHECK(d.hat[0][1] == d.hat[1][0]);
  CHECK(d.hat[0][0] + d.hat[1][1] == 0.0);
  const Form2 back = recompose(d);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(back[a][b] == doctest::Approx(u[a][b]));
}

TEST_CASE("Kerr principal-frame table") {
  const KerrParams p = KerrParams::make(0.3, 1.0);
  const BLPoint x{0, 3.0, 1.0, 0};
  const RicciCoefficients rc = ricci_coefficients(p, principal_frame_field(p), x);
  const CurvatureComponents cc = curvature_components(p, principal_frame(p, x), x);
  const CForm1 jk = jk_form(p, x);
  const KerrReference ref = kerr_reference(p, x.r, x.theta, jk);
  const double pa = std::abs(ref.P);
  const cplx q(3.0, 0.3 * std::cos(1.0));
  CHECK(std::abs(ref.P - (-2.0 / (q * q * q))) < 1e-15);
  CHECK(std::abs(cc.P - ref.P) < 1e-10 * pa);
  CHECK(std::abs(rc.trX - ref.trX) < 1e-10 * std::abs(ref.trX));
  CHECK(std::abs(rc.trXb - ref.trXb) < 1e-10 * std::abs(ref.trXb));
  for (int a = 0; a < 2; ++a) {
    CHECK(std::abs(rc.Z[a] - ref.Z[a]) < 1e-10 * std::abs(ref.Z[a]));
    CHECK(std::abs(rc.H[a] - ref.H[a]) < 1e-10 * std::abs(ref.H[a]));
    CHECK(std::abs(rc.Hb[a] - ref.Hb[a]) < 1e-10 * std::abs(ref.Hb[a]));
    CHECK(std::abs(cc.B[a]) < 1e-10 * pa);
    CHECK(std::abs(cc.Bb[a]) < 1e-10 * pa);
  }
  CHECK(max_abs(cc.A) < 1e-10 * pa);
  CHECK(max_abs(cc.Ab) < 1e-10 * pa);
  CHECK(max_abs(rc.Xhat) < 1e-10 * pa);
  CHECK(max_abs(rc.Xbhat) < 1e-10 * pa);
  CHECK(std::abs(cc.P.real() - cc.rho) == 0.0);
  CHECK(std::abs(cc.P.imag() - cc.rho_dual) == 0.0);
}

TEST_CASE("principal e4 is geodesic but not affinely parametrized") {
  const KerrParams p = KerrParams::make(0.3, 1.0);
  const RicciCoefficients rc = ricci_coefficients(p, principal_frame_field(p), {0, 3.0, 1.0, 0});
  CHECK(std::abs(rc.xi[0]) + std::abs(rc.xi[1]) < 1e-14);
  CHECK(std::abs(rc.xib[0]) + std::abs(rc.xib[1]) < 1e-14);
  CHECK(std::abs(rc.omegab) < 1e-14);
  CHECK(std::abs(rc.omega) > 1e-3);
}

TEST_CASE("Schwarzschild reductions") {
  const KerrParams p = KerrParams::make(0.0, 1.0);
  const BLPoint x{0, 4.0, 1.2, 0};
  const CurvatureComponents cc = curvature_components(p, principal_frame(p, x), x);
  CHECK(cc.rho == doctest::Approx(-2.0 / 64.0).epsilon(1e-12));
  CHECK(std::abs(cc.rho_dual) < 1e-15);
  const RicciCoefficients rc = ricci_coefficients(p, principal_frame_field(p), x);
  CHECK(std::abs(rc.chi_parts.atr) < 1e-15);
  CHECK(std::abs(rc.chib_parts.atr) < 1e-15);
  CHECK(std::abs(rc.chi[0][1]) < 1e-15);
  CHECK(rc.chi[0][0] == doctest::Approx(rc.chi[1][1]));
}

TEST_CASE("J form") {
  const CForm1 j = jk_form(KerrParams::make(0.0, 1.0), {0, 5.0, kPi / 2, 0});
  CHECK(j[0].imag() == doctest::Approx(0.2));
  CHECK(j[0].real() == 0.0);
  CHECK(j[1].real() == doctest::Approx(0.2));
  const CForm1 k = jk_form(KerrParams::make(0.5, 1.0), {0, 3.0, 0.4, 0});
  CHECK(std::abs(k[0]) == doctest::Approx(std::abs(k[1])));
  CHECK(std::abs(jk_form(KerrParams::make(0.5, 1.0), {0, 3.0, 1e-9, 0})[0]) < 1e-8);
}

TEST_CASE("renormalization") {
  const KerrParams p = KerrParams::make(0.5, 1.0);
  const BLPoint x{0, 3.5, 0.7, 0};
  RicciCoefficients rc = ricci_coefficients(p, principal_frame_field(p), x);
  const CurvatureComponents cc = curvature_components(p, principal_frame(p, x), x);
  const CForm1 jk = jk_form(p, x);
  const double pa = std::abs(cc.P);
  CHECK(renormalize(rc, cc, p, x.r, x.theta, jk).max_abs() < 1e-10 * pa);
  rc.trX += 1e-3;
  const CheckedQuantities shifted = renormalize(rc, cc, p, x.r, x.theta, jk);
  CHECK(shifted.trX.real() == doctest::Approx(1e-3).epsilon(1e-9));
  // Kerr values for mass m + delta: P-check = 2 delta / q^3 + O(delta^2).
  const double delta = 1e-6;
  const KerrParams heavier = KerrParams::make(0.5, 1.0 + delta);
  const CheckedQuantities pm = renormalize(ricci_coefficients(p, principal_frame_field(p), x), cc,
                                           heavier, x.r, x.theta, jk);
  const cplx q(x.r, 0.5 * std::cos(x.theta));
  CHECK(std::abs(pm.P - 2.0 * delta / (q * q * q)) < 1e-4 * std::abs(2.0 * delta / (q * q * q)));
}

TEST_CASE("transport of q J along e4") {
  const KerrParams p = KerrParams::make(0.3, 1.0);
  CHECK(jk_transport_residual(p, principal_frame_field(p), {0, 3.0, 1.0, 0}) < 1e-10);
  CHECK(jk_transport_residual(p, pg_frame_field(p), {0, 3.0, 1.0, 0}) < 1e-10);
}

TEST_CASE("l = 1 modes") {
  const double r = 4.0;
  const KerrParams s = KerrParams::make(0.0, 1.0);
  const double area = 4 * kPi * r * r;
  const Ell1Modes one = ell1_modes([](double, double) { return 1.0; }, s, r);
  CHECK(std::abs(one.i0) + std::abs(one.iplus) + std::abs(one.iminus) < 1e-12 * area);
  const Ell1Modes c = ell1_modes([](double th, double) { return std::cos(th); }, s, r);
  CHECK(c.i0 == doctest::Approx(area / 3).epsilon(1e-12));
  CHECK(std::abs(c.iplus) < 1e-12 * area);
  const Ell1Modes m = ell1_modes([](double th, double ph) { return std::sin(th) * std::sin(ph); },
                                 KerrParams::make(0.4, 1.0), r);
  CHECK(std::abs(m.i0) < 1e-12 * area);
  CHECK(std::abs(m.iplus) < 1e-12 * area);
  CHECK(m.iminus > 0.0);
  CHECK(sphere_area(s, r) == doctest::Approx(area).epsilon(1e-13));
}

TEST_CASE("isothermal fit") {
  const IsothermalFit round = isothermal_fit(round_sphere_metric(2.0), 2.0);
  const IsothermalFit schw = isothermal_fit(kerr_sphere_metric(KerrParams::make(0.0, 1.0), 3.0), 3.0);
  for (double th : {0.2, 1.0, 2.2}) {
    CHECK(round.theta_prime(th) == doctest::Approx(th).epsilon(1e-13));
    CHECK(std::abs(round.conformal_factor(th)) < 1e-13);
    CHECK(schw.theta_prime(th) == doctest::Approx(th).epsilon(1e-13));
    CHECK(std::abs(schw.conformal_factor(th)) < 1e-13);
  }
  const IsothermalFit kerr =
      isothermal_fit(kerr_sphere_metric(KerrParams::make(0.3, 1.0), 3.0), 3.0);
  CHECK(kerr.residual() < 1e-8);
  CHECK(std::abs(kerr.theta_prime(1.0) - 1.0) > 1e-5);
  CHECK(kerr.theta_prime(1e-12) < 1e-9);
  CHECK(kerr.theta_prime(kPi - 1e-12) > kPi - 1e-9);
}
