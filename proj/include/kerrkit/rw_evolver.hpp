#pragma once

// 1+1 evolution of the Regge-Wheeler mode equation
//   d_t^2 psi = d_{r*}^2 psi - W_l(r) psi
// on Schwarzschild in tortoise coordinates, with energy and photon-sphere
// (Morawetz-type) diagnostics.

#include <iosfwd>
#include <vector>

namespace kerrkit {

double tortoise(double r, double m);
double inverse_tortoise(double rstar, double m);

// V = 4/r^2 (1 - 2m/r), the potential of the four-dimensional equation.
double regge_wheeler_v(double m, double r);

// Reduced potential seen by psi = r phi / Y_lm:
//   W_l = f (l(l+1)/r^2 + 2m/r^3) + f V,   f = 1 - 2m/r.
double reduced_potential(int ell, double m, double r);

struct BLPoint;
// Applies Box - V to phi = psi(t, r) P_ell(cos theta) / r on Schwarzschild and
// compares r f (Box - V) phi with P_ell (-d_t^2 + d_r*^2 - W_ell) psi for a
// fixed analytic psi. Normalized by the largest reduced-operator term.
double reduced_operator_residual(int ell, double m, const BLPoint& p);

struct Grid1D {
  double rstar_min = -200.0;
  double rstar_max = 400.0;
  int n_points = 8192;
  double dt = 0.0;

  double spacing() const { return (rstar_max - rstar_min) / (n_points - 1); }
  double rstar(int i) const { return rstar_min + i * spacing(); }
  // Throws ContractError on n_points < 16, bad bounds or dt > 0.9 spacing.
  void validate() const;

  static Grid1D with_cfl(double rstar_min, double rstar_max, int n_points, double cfl);
};

struct FieldState {
  std::vector<double> psi;
  std::vector<double> pi;  // d_t psi
  double t = 0.0;

  static FieldState zeros(const Grid1D& grid);
};

struct EffectivePotential {
  int ell = 0;
  double m = 1.0;
  std::vector<double> r;
  std::vector<double> w;
};

EffectivePotential rw_potential(int ell, double m, const Grid1D& grid);

enum class Boundary { reflecting, outgoing };

// Implicit-midpoint time stepper. The spatial operator is a second-order
// summation-by-parts discretisation; boundary rows carry a Neumann
// (reflecting) or Sommerfeld (outgoing) closure, so the discrete energy is
// conserved or dissipated exactly, up to rounding.
class Stepper {
 public:
  Stepper(const EffectivePotential& pot, const Grid1D& grid, Boundary bc);

  void advance(FieldState& state) const;

 private:
  Grid1D grid_;
  Boundary bc_;
  std::vector<double> w_;
  std::vector<double> lower_, diag_, upper_;  // factorised implicit matrix
  std::vector<double> inv_pivot_;
};

FieldState step(const FieldState& state, const EffectivePotential& pot, const Grid1D& grid,
                Boundary bc);

// E = 1/2 sum (pi^2 + (d psi)^2 + W psi^2) with trapezoid weights; the
// gradient lives on cell edges.
double energy(const FieldState& state, const EffectivePotential& pot, const Grid1D& grid);

// Energy restricted to r in [r_lo, r_hi].
double local_energy(const FieldState& state, const EffectivePotential& pot,
                    const Grid1D& grid, double r_lo, double r_hi);

struct MorawetzBulk {
  double degenerate = 0.0;     // weight (1 - 3m/r)^2
  double nondegenerate = 0.0;  // weight 1
};

MorawetzBulk morawetz_bulk(const FieldState& state, const Grid1D& grid,
                           const EffectivePotential& pot);

double morawetz_weight(double r, double m);

struct InitialPulse {
  double center = 2.0;  // in r*
  double width = 1.0;
  double amplitude = 1.0;
  // Time-symmetric data (pi = 0) when false; purely outgoing when true.
  bool outgoing = false;
};

FieldState gaussian_state(const Grid1D& grid, const InitialPulse& pulse);

struct EvolutionConfig {
  int ell = 2;
  double m = 1.0;
  Grid1D grid;
  Boundary bc = Boundary::outgoing;
  double t_final = 300.0;
  InitialPulse pulse;
  double r_obs = 10.0;
  int sample_every = 10;
  double local_r_min = 0.0;  // 0 means 2.5 m (or 2.5 when m = 0)
  double local_r_max = 0.0;  // 0 means 5 m (or 5 when m = 0)
  double tail_start = 0.0;   // 0 means the last half of the run
};

struct HistoryRow {
  double t = 0.0;
  double e_total = 0.0;
  double e_local = 0.0;
  double m_degenerate = 0.0;
  double psi_at_robs = 0.0;
};

struct SlopeFit {
  int samples = 0;
  double slope = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;  // approximate 95% interval
  double ci_high = 0.0;
};

struct DecayReport {
  std::vector<HistoryRow> rows;
  SlopeFit tail;
  double max_energy_increase = 0.0;  // largest per-step relative increase of E
  double energy_drift = 0.0;         // |E(end) - E(0)| / E(0)
  FieldState final_state;
};

// Least-squares slope of log(value) against log(t) over rows with
// t in [t_min, t_max] and positive values.
SlopeFit fit_loglog(const std::vector<HistoryRow>& rows, double t_min, double t_max);

DecayReport evolve(const EvolutionConfig& config);

// Order p from three runs at spacings h, h/2, h/4 sharing the coarse nodes:
//   p = log2(|u_h - u_{h/2}| / |u_{h/2} - u_{h/4}|).
struct ConvergenceResult {
  double coarse_diff = 0.0;
  double fine_diff = 0.0;
  double factor = 0.0;
  double order = 0.0;
};

ConvergenceResult self_convergence(const EvolutionConfig& config);

void write_csv(std::ostream& out, const DecayReport& report);

}  // namespace kerrkit
