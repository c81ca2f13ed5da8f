#include "kerrkit/rw_evolver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "kerrkit/diffgeo.hpp"

#include "kerrkit/error.hpp"

namespace kerrkit {

double tortoise(double r, double m) {
  if (m == 0.0) return r;
  if (!(r > 2.0 * m)) throw DomainError("tortoise coordinate needs r > 2m");
  return r + 2.0 * m * std::log(r / (2.0 * m) - 1.0);
}

double inverse_tortoise(double rstar, double m) {
  if (m == 0.0) {
    if (!(rstar > 0.0)) throw DomainError("flat tortoise map needs r* > 0");
    return rstar;
  }
  // With x = r/2m - 1 = e^u the map reads u + e^u = r*/2m - 1.
  const double y = rstar / (2.0 * m) - 1.0;
  double u = y < 1.0 ? y : std::log(y);
  for (int it = 0; it < 100; ++it) {
    const double eu = std::exp(u);
    const double g = u + eu - y;
    const double du = g / (1.0 + eu);
    u -= du;
    if (std::abs(du) <= 1e-15 * std::max(1.0, std::abs(u))) {
      return 2.0 * m * (1.0 + std::exp(u));
    }
  }
  throw ConvergenceError("inverse tortoise Newton iteration did not converge");
}

double regge_wheeler_v(double m, double r) { return 4.0 / (r * r) * (1.0 - 2.0 * m / r); }

double reduced_potential(int ell, double m, double r) {
  const double f = 1.0 - 2.0 * m / r;
  const double l = static_cast<double>(ell);
  return f * (l * (l + 1.0) / (r * r) + 2.0 * m / (r * r * r)) + f * regge_wheeler_v(m, r);
}

double reduced_operator_residual(int ell, double m, const BLPoint& p) {
  const KerrParams params = KerrParams::make(0.0, m);
  const double r = p.r;
  const double f = 1.0 - 2.0 * m / r;
  const double fp = 2.0 * m / (r * r);
  auto radial = [](const Jet& t, const Jet& rr) {
    const Jet d = rr - 6.0;
    return exp(d * d * (-0.1)) * cos(t * 0.3) * (1.0 + 0.1 * rr);
  };
  auto legendre = [ell](const Jet& x) {
    Jet p0 = Jet(1.0), p1 = x;
    if (ell == 0) return p0;
    for (int k = 1; k < ell; ++k) {
      Jet p2 = ((2.0 * k + 1.0) * x * p1 - static_cast<double>(k) * p0) * (1.0 / (k + 1.0));
      p0 = p1;
      p1 = p2;
    }
    return p1;
  };
  const ScalarField phi{"mode", [&](const Coords& x) {
                          return radial(x[kT], x[kR]) / x[kR] * legendre(cos(x[kTheta]));
                        }};
  const double box = wave_operator_apply(params, phi, p);
  const double v = regge_wheeler_v(m, r);
  const Coords x = seed_coordinates(p, 2);
  const double y = legendre(cos(x[kTheta])).value();
  const double phi0 = phi(x).value();
  const double full = r * f * (box - v * phi0);

  const Jet psi = radial(x[kT], x[kR]);
  const double w = reduced_potential(ell, m, r);
  const std::array<double, 4> terms{-psi.derivative(kT, kT), f * f * psi.derivative(kR, kR),
                                    f * fp * psi.derivative(kR), -w * psi.value()};
  double reduced = 0.0, scale = 0.0;
  for (double term : terms) {
    reduced += term;
    scale = std::max(scale, std::abs(term));
  }
  return std::abs(full - y * reduced) / scale;
}

void Grid1D::validate() const {
  if (n_points < 16) throw ContractError("grid needs at least 16 points");
  if (!(rstar_max > rstar_min)) throw ContractError("grid bounds are inverted");
  if (!(dt > 0.0)) throw ContractError("time step must be positive");
  if (dt > 0.9 * spacing() * (1.0 + 1e-12))
    throw ContractError("time step violates the CFL bound dt <= 0.9 dr*");
}

Grid1D Grid1D::with_cfl(double rstar_min, double rstar_max, int n_points, double cfl) {
  Grid1D g{rstar_min, rstar_max, n_points, 0.0};
  g.dt = cfl * g.spacing();
  return g;
}

FieldState FieldState::zeros(const Grid1D& grid) {
  FieldState s;
  s.psi.assign(grid.n_points, 0.0);
  s.pi.assign(grid.n_points, 0.0);
  return s;
}

EffectivePotential rw_potential(int ell, double m, const Grid1D& grid) {
  if (ell < 0) throw ContractError("multipole index must be >= 0");
  EffectivePotential pot;
  pot.ell = ell;
  pot.m = m;
  pot.r.resize(grid.n_points);
  pot.w.resize(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) {
    pot.r[i] = inverse_tortoise(grid.rstar(i), m);
    pot.w[i] = reduced_potential(ell, m, pot.r[i]);
  }
  return pot;
}

namespace {

void check_sizes(const FieldState& s, const Grid1D& grid) {
  if (static_cast<int>(s.psi.size()) != grid.n_points ||
      static_cast<int>(s.pi.size()) != grid.n_points)
    throw ContractError("field arrays do not match the grid");
}

// y = L psi, the spatial operator including the SBP boundary rows.
void apply_operator(const std::vector<double>& psi, const std::vector<double>& w, double h,
                    std::vector<double>& y) {
  const int n = static_cast<int>(psi.size());
  const double ih2 = 1.0 / (h * h);
  y[0] = 2.0 * (psi[1] - psi[0]) * ih2 - w[0] * psi[0];
  for (int i = 1; i < n - 1; ++i)
    y[i] = (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) * ih2 - w[i] * psi[i];
  y[n - 1] = 2.0 * (psi[n - 2] - psi[n - 1]) * ih2 - w[n - 1] * psi[n - 1];
}

}  // namespace

Stepper::Stepper(const EffectivePotential& pot, const Grid1D& grid, Boundary bc)
    : grid_(grid), bc_(bc), w_(pot.w) {
  grid.validate();
  const int n = grid.n_points;
  if (static_cast<int>(w_.size()) != n) throw ContractError("potential does not match grid");
  const double h = grid.spacing(), dt = grid.dt;
  const double ih2 = 1.0 / (h * h);
  const double damp = bc == Boundary::outgoing ? 2.0 / h : 0.0;
  lower_.assign(n, 0.0);
  diag_.assign(n, 0.0);
  upper_.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double b = (i == 0 || i == n - 1) ? damp : 0.0;
    diag_[i] = 2.0 / dt + b - 0.5 * dt * (-2.0 * ih2 - w_[i]);
    if (i > 0) lower_[i] = -0.5 * dt * ((i == n - 1) ? 2.0 * ih2 : ih2);
    if (i < n - 1) upper_[i] = -0.5 * dt * ((i == 0) ? 2.0 * ih2 : ih2);
  }
  // Thomas factorisation: upper_ becomes c'_i, inv_pivot_ the reciprocal pivots.
  inv_pivot_.assign(n, 0.0);
  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double pivot = diag_[i] - lower_[i] * prev;
    inv_pivot_[i] = 1.0 / pivot;
    prev = (i < n - 1) ? upper_[i] * inv_pivot_[i] : 0.0;
    if (i < n - 1) upper_[i] = prev;
  }
}

void Stepper::advance(FieldState& s) const {
  check_sizes(s, grid_);
  const int n = grid_.n_points;
  const double h = grid_.spacing(), dt = grid_.dt;
  const double damp = bc_ == Boundary::outgoing ? 2.0 / h : 0.0;
  std::vector<double> lpsi(n), rhs(n);
  apply_operator(s.psi, w_, h, lpsi);
  for (int i = 0; i < n; ++i) {
    const double b = (i == 0 || i == n - 1) ? damp : 0.0;
    rhs[i] = (2.0 / dt + b) * s.psi[i] + 0.5 * dt * lpsi[i] + 2.0 * s.pi[i];
  }
  // Forward sweep then back substitution.
  for (int i = 0; i < n; ++i) {
    const double prev = i > 0 ? rhs[i - 1] : 0.0;
    rhs[i] = (rhs[i] - lower_[i] * prev) * inv_pivot_[i];
  }
  for (int i = n - 2; i >= 0; --i) rhs[i] -= upper_[i] * rhs[i + 1];
  for (int i = 0; i < n; ++i) {
    const double next = rhs[i];
    s.pi[i] = 2.0 / dt * (next - s.psi[i]) - s.pi[i];
    s.psi[i] = next;
  }
  s.t += dt;
}

FieldState step(const FieldState& state, const EffectivePotential& pot, const Grid1D& grid,
                Boundary bc) {
  FieldState out = state;
  Stepper(pot, grid, bc).advance(out);
  return out;
}

double energy(const FieldState& s, const EffectivePotential& pot, const Grid1D& grid) {
  check_sizes(s, grid);
  const int n = grid.n_points;
  const double h = grid.spacing();
  double e = 0.0;
  for (int i = 0; i < n; ++i) {
    const double wt = (i == 0 || i == n - 1) ? 0.5 * h : h;
    e += wt * (s.pi[i] * s.pi[i] + pot.w[i] * s.psi[i] * s.psi[i]);
  }
  for (int i = 0; i + 1 < n; ++i) {
    const double d = (s.psi[i + 1] - s.psi[i]) / h;
    e += h * d * d;
  }
  return 0.5 * e;
}

double local_energy(const FieldState& s, const EffectivePotential& pot, const Grid1D& grid,
                    double r_lo, double r_hi) {
  check_sizes(s, grid);
  const int n = grid.n_points;
  const double h = grid.spacing();
  auto inside = [&](int i) { return pot.r[i] >= r_lo && pot.r[i] <= r_hi; };
  double e = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!inside(i)) continue;
    e += h * (s.pi[i] * s.pi[i] + pot.w[i] * s.psi[i] * s.psi[i]);
    if (i + 1 < n && inside(i + 1)) {
      const double d = (s.psi[i + 1] - s.psi[i]) / h;
      e += h * d * d;
    }
  }
  return 0.5 * e;
}

double morawetz_weight(double r, double m) {
  const double x = 1.0 - 3.0 * m / r;
  return x * x;
}

MorawetzBulk morawetz_bulk(const FieldState& s, const Grid1D& grid,
                           const EffectivePotential& pot) {
  check_sizes(s, grid);
  const int n = grid.n_points;
  const double h = grid.spacing();
  MorawetzBulk out;
  for (int i = 0; i + 1 < n; ++i) {
    const double d = (s.psi[i + 1] - s.psi[i]) / h;
    const double r = 0.5 * (pot.r[i] + pot.r[i + 1]);
    const double psi = 0.5 * (s.psi[i] + s.psi[i + 1]);
    const double density = d * d + psi * psi / (r * r);
    out.degenerate += h * morawetz_weight(r, pot.m) * density;
    out.nondegenerate += h * density;
  }
  return out;
}

FieldState gaussian_state(const Grid1D& grid, const InitialPulse& pulse) {
  FieldState s = FieldState::zeros(grid);
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = (grid.rstar(i) - pulse.center) / pulse.width;
    const double g = pulse.amplitude * std::exp(-0.5 * x * x);
    s.psi[i] = g;
    // Outgoing pulse psi(r* - t): d_t psi = -d_r* psi.
    s.pi[i] = pulse.outgoing ? g * x / pulse.width : 0.0;
  }
  return s;
}

SlopeFit fit_loglog(const std::vector<HistoryRow>& rows, double t_min, double t_max) {
  std::vector<double> xs, ys;
  for (const auto& row : rows) {
    if (row.t < t_min || row.t > t_max || !(row.t > 0.0) || !(row.e_local > 0.0)) continue;
    xs.push_back(std::log(row.t));
    ys.push_back(std::log(row.e_local));
  }
  SlopeFit fit;
  fit.samples = static_cast<int>(xs.size());
  if (fit.samples < 3) {
    fit.slope = fit.std_error = std::numeric_limits<double>::quiet_NaN();
    fit.ci_low = fit.ci_high = fit.slope;
    return fit;
  }
  const double n = fit.samples;
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < fit.samples; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < fit.samples; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  const double icept = my - fit.slope * mx;
  double sse = 0.0;
  for (int i = 0; i < fit.samples; ++i) {
    const double e = ys[i] - (icept + fit.slope * xs[i]);
    sse += e * e;
  }
  fit.std_error = std::sqrt(sse / (n - 2.0) / sxx);
  fit.ci_low = fit.slope - 1.96 * fit.std_error;
  fit.ci_high = fit.slope + 1.96 * fit.std_error;
  return fit;
}

namespace {

std::pair<double, double> local_window(const EvolutionConfig& c) {
  const double unit = c.m > 0.0 ? c.m : 1.0;
  const double lo = c.local_r_min > 0.0 ? c.local_r_min : 2.5 * unit;
  const double hi = c.local_r_max > 0.0 ? c.local_r_max : 5.0 * unit;
  return {lo, hi};
}

int nearest_node(const EffectivePotential& pot, double r) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(pot.r.size()); ++i)
    if (std::abs(pot.r[i] - r) < std::abs(pot.r[best] - r)) best = i;
  return best;
}

}  // namespace

DecayReport evolve(const EvolutionConfig& config) {
  const Grid1D& grid = config.grid;
  grid.validate();
  if (!(config.t_final >= 0.0)) throw ContractError("t_final must be non-negative");
  if (config.sample_every < 1) throw ContractError("sample_every must be >= 1");
  const EffectivePotential pot = rw_potential(config.ell, config.m, grid);
  const Stepper stepper(pot, grid, config.bc);
  const auto [r_lo, r_hi] = local_window(config);
  const int obs = nearest_node(pot, config.r_obs);

  DecayReport report;
  FieldState s = gaussian_state(grid, config.pulse);
  auto record = [&](double e_total) {
    report.rows.push_back({s.t, e_total, local_energy(s, pot, grid, r_lo, r_hi),
                           morawetz_bulk(s, grid, pot).degenerate, s.psi[obs]});
  };
  const double e0 = energy(s, pot, grid);
  record(e0);
  const long steps = std::lround(config.t_final / grid.dt);
  double e_prev = e0;
  for (long k = 1; k <= steps; ++k) {
    stepper.advance(s);
    const double e = energy(s, pot, grid);
    if (e0 > 0.0)
      report.max_energy_increase = std::max(report.max_energy_increase, (e - e_prev) / e0);
    e_prev = e;
    if (k % config.sample_every == 0 || k == steps) record(e);
  }
  report.energy_drift = e0 > 0.0 ? std::abs(e_prev - e0) / e0 : 0.0;
  const double t_end = report.rows.back().t;
  const double tail0 = config.tail_start > 0.0 ? config.tail_start : 0.5 * t_end;
  report.tail = fit_loglog(report.rows, tail0, t_end);
  report.final_state = std::move(s);
  return report;
}

ConvergenceResult self_convergence(const EvolutionConfig& config) {
  const Grid1D& g0 = config.grid;
  const double cfl = g0.dt / g0.spacing();
  const long coarse_steps = std::lround(config.t_final / g0.dt);
  std::array<FieldState, 3> finals;
  for (int level = 0; level < 3; ++level) {
    const int n = (g0.n_points - 1) * (1 << level) + 1;
    const Grid1D g = Grid1D::with_cfl(g0.rstar_min, g0.rstar_max, n, cfl);
    const EffectivePotential pot = rw_potential(config.ell, config.m, g);
    const Stepper stepper(pot, g, config.bc);
    FieldState s = gaussian_state(g, config.pulse);
    const long steps = coarse_steps << level;
    for (long k = 0; k < steps; ++k) stepper.advance(s);
    finals[level] = std::move(s);
  }
  auto diff = [&](int coarse, int fine) {
    const int stride = 1 << (fine - coarse);
    const auto& a = finals[coarse].psi;
    const auto& b = finals[fine].psi;
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i * stride];
      sum += d * d;
    }
    return std::sqrt(sum / a.size());
  };
  ConvergenceResult out;
  out.coarse_diff = diff(0, 1);
  out.fine_diff = diff(1, 2);
  out.factor = out.coarse_diff / out.fine_diff;
  out.order = std::log2(out.factor);
  return out;
}

void write_csv(std::ostream& out, const DecayReport& report) {
  std::ostringstream buf;
  buf << std::setprecision(17);
  buf << "t,E_total,E_local,M_degenerate,psi_at_robs\n";
  for (const auto& row : report.rows)
    buf << row.t << ',' << row.e_total << ',' << row.e_local << ',' << row.m_degenerate << ','
        << row.psi_at_robs << '\n';
  out << buf.str();
}

}  // namespace kerrkit
