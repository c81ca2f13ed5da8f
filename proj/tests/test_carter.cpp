#include <cmath>

#include "doctest.h"
#include "kerrkit/carter.hpp"
#include "kerrkit/diffgeo.hpp"

using namespace kerrkit;

TEST_CASE("Schwarzschild Carter tensor is the angular metric scaled by r^2") {
  const double r = 4.0, th = 0.9;
  const CarterTensorAt c = carter_tensor(KerrParams::make(0.0, 1.0), {0, r, th, 0});
  CHECK(c.lower[kTheta][kTheta] == doctest::Approx(r * r * r * r));
  CHECK(c.lower[kPhi][kPhi] == doctest::Approx(std::pow(r * std::sin(th), 2) * r * r));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!((i == kTheta && j == kTheta) || (i == kPhi && j == kPhi)))
        CHECK(std::abs(c.lower[i][j]) < 1e-12);
  // C(u, u) = r^4 (thetadot^2 + sin^2 phidot^2).
  const Vec4 u{1.3, 0.2, 0.05, 0.07};
  double cuu = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) cuu += c.lower[i][j] * u[i] * u[j];
  const double s = std::sin(th);
  CHECK(cuu == doctest::Approx(std::pow(r, 4) * (0.05 * 0.05 + s * s * 0.07 * 0.07)));
}

TEST_CASE("trace of the Carter tensor") {
  const double a = 0.6, r = 3.0, th = 1.1;
  const KerrParams p = KerrParams::make(a, 1.0);
  const CarterTensorAt c = carter_tensor(p, {0, r, th, 0});
  const Mat4 gi = metric(p, {0, r, th, 0}).g_inv;
  double tr = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) tr += gi[i][j] * c.lower[i][j];
  const double ac2 = a * a * std::cos(th) * std::cos(th);
  CHECK(tr == doctest::Approx(-4 * ac2 + 2 * (r * r + ac2)).epsilon(1e-12));
}

TEST_CASE("Killing tensor residual and a control") {
  CHECK(killing_tensor_residual(KerrParams::make(0.3, 1.0), {0, 3.0, 1.0, 0}) < 1e-8);
  CHECK(killing_tensor_residual(KerrParams::make(0.0, 1.0), {0, 5.0, 1.0, 0}) < 1e-10);
  const KerrParams p = KerrParams::make(0.3, 1.0);
  const TensorFieldFn base = carter_field(p);
  const TensorFieldFn spoiled = [base](const Coords& x) {
    Mat4T<Jet> c = base(x);
    c[kR][kR] += x[kR];
    return c;
  };
  CHECK(killing_tensor_residual(p, spoiled, {0, 3.0, 1.0, 0}) > 1e-3);
}

TEST_CASE("Carter operator") {
  const ScalarField one{"one", [](const Coords&) { return Jet(1.0); }};
  const ScalarField radial{"radial", [](const Coords& x) { return exp(x[kR] * -0.3) * x[kR]; }};
  const ScalarField cth{"cos", [](const Coords& x) { return cos(x[kTheta]); }};
  const KerrParams s = KerrParams::make(0.0, 1.0);
  const BLPoint x{0, 4.0, 0.8, 0};
  CHECK(std::abs(carter_operator_apply(KerrParams::make(0.5, 1.0), one, x)) < 1e-14);
  CHECK(std::abs(carter_operator_apply(s, radial, x)) < 1e-14);
  CHECK(carter_operator_apply(s, cth, x) == doctest::Approx(-2.0 * std::cos(0.8)).epsilon(1e-12));
}

TEST_CASE("Carter operator commutes with the wave operator") {
  const ScalarField one{"one", [](const Coords&) { return Jet(1.0); }};
  CHECK(commutator_residual(KerrParams::make(0.3, 1.0), one, {0, 3, 1, 0}).carter_box == 0.0);
  const ScalarField fr{"f(r) cos", [](const Coords& x) {
                         return exp(x[kR] * -0.2) * cos(x[kTheta]);
                       }};
  CHECK(commutator_residual(KerrParams::make(0.0, 1.0), fr, {0, 4, 1.1, 0}).residual < 1e-6);
  const auto fields = commutator_test_fields();
  REQUIRE(fields.size() >= 5);
  const KerrParams k = KerrParams::make(0.3, 1.0);
  for (const auto& f : fields) {
    const CommutatorResult c = commutator_residual(k, f, {1.0, 3.0, 1.0, 0.5});
    CHECK(c.residual < 1e-6);
    CHECK(c.scale > 0.0);
  }
  // Sanity: the commuted quantity is itself nonzero.
  CHECK(std::abs(commutator_residual(k, fields[0], {1.0, 3.0, 1.0, 0.5}).carter_box) > 1e-6);
}
