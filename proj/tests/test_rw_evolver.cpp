#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "kerrkit/error.hpp"
#include "kerrkit/kerr_metric.hpp"
#include "kerrkit/rw_evolver.hpp"

using namespace kerrkit;

TEST_CASE("tortoise coordinate") {
  CHECK(tortoise(4.0, 1.0) == doctest::Approx(4.0));
  CHECK(tortoise(2.0001, 1.0) < tortoise(2.001, 1.0));
  CHECK(tortoise(2.0 + 1e-12, 1.0) < -40.0);
  for (int k = 0; k < 100; ++k) {
    const double r = 2.01 + (500.0 - 2.01) * std::pow((k + 0.5) / 100.0, 3);
    CHECK(std::abs(inverse_tortoise(tortoise(r, 1.0), 1.0) - r) < 1e-12 * r);
  }
  CHECK(inverse_tortoise(-40.0, 1.0) > 2.0);
  CHECK(inverse_tortoise(-150.0, 1.0) >= 2.0);
  CHECK_THROWS_AS(tortoise(1.5, 1.0), DomainError);
}

TEST_CASE("potential") {
  CHECK(regge_wheeler_v(1.0, 3.0) == doctest::Approx(4.0 / 27.0));
  CHECK(reduced_potential(0, 0.0, 2.0) == doctest::Approx(1.0));
  for (int ell : {0, 1, 2, 5})
    for (double r : {2.001, 2.5, 3.0, 10.0, 1e4}) CHECK(reduced_potential(ell, 1.0, r) >= 0.0);
  CHECK(reduced_potential(2, 1.0, 2.0 + 1e-10) < 1e-9);
  CHECK(reduced_potential(2, 1.0, 1e6) < 1e-11);
}

TEST_CASE("mode reduction agrees with the four-dimensional operator") {
  for (int k = 0; k < 50; ++k) {
    const double r = 2.2 + 0.5 * k;
    const double th = 0.3 + 2.5 * k / 49.0;
    const BLPoint p{0.7 * k, r, th, 0.1 * k};
    for (int ell : {0, 1, 2, 3}) CHECK(reduced_operator_residual(ell, 1.0, p) < 1e-8);
  }
}

TEST_CASE("grid contract") {
  Grid1D g = Grid1D::with_cfl(-10, 10, 64, 0.5);
  CHECK_NOTHROW(g.validate());
  g.dt = 0.95 * g.spacing();
  CHECK_THROWS_AS(g.validate(), ContractError);
  CHECK_THROWS_AS(Grid1D::with_cfl(0, 1, 8, 0.5).validate(), ContractError);
  CHECK_THROWS_AS(step(FieldState::zeros(g), rw_potential(2, 1.0, Grid1D::with_cfl(-10, 10, 64, 0.5)), g,
                       Boundary::outgoing),
                  ContractError);
}

TEST_CASE("zero data stays zero") {
  const Grid1D g = Grid1D::with_cfl(-50, 50, 256, 0.5);
  const EffectivePotential pot = rw_potential(2, 1.0, g);
  FieldState s = FieldState::zeros(g);
  CHECK(energy(s, pot, g) == 0.0);
  CHECK(morawetz_bulk(s, g, pot).degenerate == 0.0);
  for (int k = 0; k < 20; ++k) s = step(s, pot, g, Boundary::outgoing);
  for (double v : s.psi) CHECK(v == 0.0);
  EvolutionConfig c;
  c.grid = g;
  c.t_final = 5.0;
  c.pulse.amplitude = 0.0;
  const DecayReport rep = evolve(c);
  for (const auto& row : rep.rows) CHECK(row.e_local == 0.0);
}

TEST_CASE("Morawetz weight vanishes at the photon sphere") {
  CHECK(morawetz_weight(3.0, 1.0) == 0.0);
  CHECK(morawetz_weight(6.0, 2.0) == 0.0);
  CHECK(morawetz_weight(10.0, 1.0) > 0.0);
}

TEST_CASE("reflecting boundaries conserve energy over 200 m") {
  EvolutionConfig c;
  c.bc = Boundary::reflecting;
  c.t_final = 200.0;
  c.sample_every = 1000;
  c.grid = Grid1D::with_cfl(-200, 400, 8192, 0.5);
  const DecayReport rep = evolve(c);
  CHECK(rep.energy_drift < 1e-6);
}

TEST_CASE("outgoing boundaries never increase the energy") {
  EvolutionConfig c;
  c.t_final = 120.0;
  c.pulse.outgoing = true;
  c.pulse.center = 300.0;
  c.grid = Grid1D::with_cfl(-100, 350, 2048, 0.5);
  const DecayReport rep = evolve(c);
  CHECK(rep.max_energy_increase < 1e-10);
  CHECK(rep.rows.back().e_total < 1e-3 * rep.rows.front().e_total);
}

TEST_CASE("free traveling pulse converges at second order") {
  auto error = [](int n) {
    const Grid1D g = Grid1D::with_cfl(-30, 30, n, 0.5);
    EffectivePotential pot;
    pot.r.assign(n, 1.0);
    pot.w.assign(n, 0.0);
    InitialPulse pulse{-5.0, 1.5, 1.0, true};
    FieldState s = gaussian_state(g, pulse);
    const Stepper st(pot, g, Boundary::outgoing);
    const long steps = std::lround(10.0 / g.dt);
    for (long k = 0; k < steps; ++k) st.advance(s);
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = (g.rstar(i) - s.t - pulse.center) / pulse.width;
      e = std::max(e, std::abs(s.psi[i] - std::exp(-0.5 * x * x)));
    }
    return e;
  };
  const double ratio = error(1025) / error(2049);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("self-convergence factor") {
  EvolutionConfig c;
  c.grid = Grid1D::with_cfl(-200, 400, 4097, 0.5);
  c.t_final = 20.0;
  const ConvergenceResult conv = self_convergence(c);
  CHECK(conv.factor == doctest::Approx(4.0).epsilon(0.3 / 4.0));
  CHECK(conv.order == doctest::Approx(2.0).epsilon(0.075));
}

TEST_CASE("local energy decays and the report is well formed") {
  EvolutionConfig c;
  c.grid = Grid1D::with_cfl(-200, 400, 4096, 0.5);
  c.t_final = 150.0;
  c.sample_every = 40;
  const DecayReport rep = evolve(c);
  CHECK(rep.rows.back().e_local < 1e-3 * rep.rows.front().e_local);
  CHECK(rep.tail.samples > 2);
  CHECK(rep.tail.ci_low <= rep.tail.slope);
  CHECK(rep.tail.slope <= rep.tail.ci_high);
  std::ostringstream out;
  write_csv(out, rep);
  CHECK(out.str().rfind("t,E_total,E_local,M_degenerate,psi_at_robs\n", 0) == 0);
}

TEST_CASE("trapping: degenerate Morawetz bulk lingers for data at the photon sphere") {
  auto ratio = [](double r0) {
    EvolutionConfig c;
    c.grid = Grid1D::with_cfl(-200, 400, 4096, 0.5);
    c.t_final = 60.0;
    c.sample_every = 100000;
    c.pulse.center = tortoise(r0, 1.0);
    c.pulse.width = 0.5;
    const DecayReport rep = evolve(c);
    return rep.rows.back().m_degenerate / rep.rows.front().m_degenerate;
  };
  CHECK(ratio(3.0) > ratio(10.0));
}

TEST_CASE("flat-space data leaves the local window faster") {
  auto local_drop = [](double m, Grid1D grid) {
    EvolutionConfig c;
    c.m = m;
    c.grid = grid;
    c.t_final = 100.0;
    c.sample_every = 100000;
    c.pulse.center = 6.0;
    const DecayReport rep = evolve(c);
    return rep.rows.back().e_local / rep.rows.front().e_local;
  };
  const double flat = local_drop(0.0, Grid1D::with_cfl(0.5, 600.5, 4096, 0.5));
  const double kerr = local_drop(1.0, Grid1D::with_cfl(-200, 400, 4096, 0.5));
  CHECK(flat < kerr);
}
