#include <cmath>

#include "doctest.h"
#include "kerrkit/jet.hpp"

using kerrkit::Jet;

TEST_CASE("variable seeds value and unit gradient") {
  const Jet x = Jet::variable(1.5, 1, 4);
  CHECK(x.value() == 1.5);
  CHECK(x.derivative(1) == 1.0);
  CHECK(x.derivative(0) == 0.0);
  CHECK(x.derivative(1, 1) == 0.0);
}

TEST_CASE("product rule and mixed partials") {
  const Jet x = Jet::variable(0.7, 0, 3);
  const Jet y = Jet::variable(-1.2, 2, 3);
  const Jet f = x * x * y;  // d2/dx dy = 2x
  CHECK(f.value() == doctest::Approx(0.49 * -1.2));
  CHECK(f.derivative(0) == doctest::Approx(2 * 0.7 * -1.2));
  CHECK(f.derivative(0, 2) == doctest::Approx(1.4));
  CHECK(f.derivative(0, 0) == doctest::Approx(-2.4));
  CHECK(f.derivative(kerrkit::MultiIndex{2, 0, 1, 0}) == doctest::Approx(2.0));
}

TEST_CASE("elementary functions match closed-form derivatives") {
  const double x0 = 0.4;
  const Jet x = Jet::variable(x0, 0, 4);
  const Jet s = sin(x), c = cos(x), e = exp(x), l = log(x + 1.0), r = sqrt(x), p = pow(x, 2.5);
  CHECK(s.derivative(kerrkit::MultiIndex{4, 0, 0, 0}) == doctest::Approx(std::sin(x0)));
  CHECK(c.derivative(kerrkit::MultiIndex{3, 0, 0, 0}) == doctest::Approx(std::sin(x0)));
  CHECK(e.derivative(kerrkit::MultiIndex{4, 0, 0, 0}) == doctest::Approx(std::exp(x0)));
  CHECK(l.derivative(0, 0) == doctest::Approx(-1.0 / ((1 + x0) * (1 + x0))));
  CHECK(r.derivative(0) == doctest::Approx(0.5 / std::sqrt(x0)));
  CHECK(p.derivative(0, 0) == doctest::Approx(2.5 * 1.5 * std::pow(x0, 0.5)));
}

TEST_CASE("division inverts multiplication") {
  const Jet x = Jet::variable(2.0, 1, 4);
  const Jet y = Jet::variable(0.3, 3, 4);
  const Jet f = (x * y + sin(y)) / x;
  const Jet back = f * x - sin(y);
  const Jet xy = x * y;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(back.derivative(i, j) == doctest::Approx(xy.derivative(i, j)));
}

TEST_CASE("partial lowers the order and agrees with derivative") {
  const Jet x = Jet::variable(0.9, 0, 4);
  const Jet y = Jet::variable(1.1, 1, 4);
  const Jet f = exp(x * y);
  const Jet fx = f.partial(0);
  CHECK(fx.order() == 3);
  CHECK(fx.value() == doctest::Approx(f.derivative(0)));
  CHECK(fx.derivative(1) == doctest::Approx(f.derivative(0, 1)));
}

TEST_CASE("lower-order jets give the same low derivatives") {
  auto f = [](int order) {
    const Jet x = Jet::variable(0.3, 0, order);
    const Jet y = Jet::variable(1.7, 1, order);
    return cos(x) * exp(y) / (x + y);
  };
  const Jet hi = f(4), lo = f(2);
  CHECK(lo.order() == 2);
  for (int i = 0; i < 4; ++i) {
    CHECK(hi.derivative(i) == doctest::Approx(lo.derivative(i)).epsilon(1e-14));
    for (int j = 0; j < 4; ++j)
      CHECK(hi.derivative(i, j) == doctest::Approx(lo.derivative(i, j)).epsilon(1e-14));
  }
}
