#include "kerrkit/horizontal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kerrkit/error.hpp"

namespace kerrkit {
namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

double riemann_contract(const Tensor4& R, const Vec4& w, const Vec4& x, const Vec4& y,
                        const Vec4& z) {
  double s = 0.0;
  for (int a = 0; a < 4; ++a) {
    if (w[a] == 0.0) continue;
    for (int b = 0; b < 4; ++b) {
      if (x[b] == 0.0) continue;
      for (int c = 0; c < 4; ++c) {
        if (y[c] == 0.0) continue;
        for (int d = 0; d < 4; ++d) s += R[a][b][c][d] * w[a] * x[b] * y[c] * z[d];
      }
    }
  }
  return s;
}

}  // namespace

Form1 dual(const Form1& f) { return {f[1], -f[0]}; }

Form2 dual(const Form2& u) {
  // eps_1^2 = +1, eps_2^1 = -1
  return {{{u[1][0], u[1][1]}, {-u[0][0], -u[0][1]}}};
}

CForm1 complexify(const Form1& f) {
  const Form1 d = dual(f);
  return {cplx{f[0], d[0]}, cplx{f[1], d[1]}};
}

CForm2 complexify(const Form2& u) {
  const Form2 d = dual(u);
  CForm2 out{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out[a][b] = {u[a][b], d[a][b]};
  return out;
}

TraceDecomposition decompose(const Form2& u) {
  TraceDecomposition d;
  d.tr = u[0][0] + u[1][1];
  d.atr = u[0][1] - u[1][0];
  const double off = 0.5 * (u[0][1] + u[1][0]);
  const double diff = 0.5 * (u[0][0] - u[1][1]);
  d.hat = {{{diff, off}, {off, -diff}}};
  return d;
}

Form2 recompose(const TraceDecomposition& d) {
  return {{{0.5 * d.tr + d.hat[0][0], 0.5 * d.atr + d.hat[0][1]},
           {-0.5 * d.atr + d.hat[1][0], 0.5 * d.tr + d.hat[1][1]}}};
}

RicciCoefficients ricci_coefficients(const FrameDerivatives& fd) {
  const NullFrame& fr = fd.frame;
  const auto& D = fd.cov;
  RicciCoefficients rc;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      rc.chi[a][b] = fd.inner(D[a][kE4], fr[b]);
      rc.chib[a][b] = fd.inner(D[a][kE3], fr[b]);
    }
    rc.zeta[a] = 0.5 * fd.inner(D[a][kE4], fr.e3);
    rc.eta[a] = 0.5 * fd.inner(D[kE3][kE4], fr[a]);
    rc.etab[a] = 0.5 * fd.inner(D[kE4][kE3], fr[a]);
    rc.xi[a] = 0.5 * fd.inner(D[kE4][kE4], fr[a]);
    rc.xib[a] = 0.5 * fd.inner(D[kE3][kE3], fr[a]);
  }
  rc.omega = 0.25 * fd.inner(D[kE4][kE4], fr.e3);
  rc.omegab = 0.25 * fd.inner(D[kE3][kE3], fr.e4);

  rc.chi_parts = decompose(rc.chi);
  rc.chib_parts = decompose(rc.chib);
  rc.trX = {rc.chi_parts.tr, -rc.chi_parts.atr};
  rc.trXb = {rc.chib_parts.tr, -rc.chib_parts.atr};
  rc.Xhat = complexify(rc.chi_parts.hat);
  rc.Xbhat = complexify(rc.chib_parts.hat);
  rc.Z = complexify(rc.zeta);
  rc.H = complexify(rc.eta);
  rc.Hb = complexify(rc.etab);
  rc.Xi = complexify(rc.xi);
  rc.Xib = complexify(rc.xib);
  return rc;
}

RicciCoefficients ricci_coefficients(const KerrParams& params, const FrameField& field,
                                     const BLPoint& p) {
  return ricci_coefficients(frame_derivatives(params, field, p));
}

CurvatureComponents curvature_components(const CurvatureAt& curv, const NullFrame& fr) {
  const Tensor4& R = curv.riemann;
  CurvatureComponents cc;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      cc.alpha[a][b] = riemann_contract(R, fr[a], fr.e4, fr[b], fr.e4);
      cc.alphab[a][b] = riemann_contract(R, fr[a], fr.e3, fr[b], fr.e3);
    }
    cc.beta[a] = 0.5 * riemann_contract(R, fr[a], fr.e4, fr.e3, fr.e4);
    cc.betab[a] = 0.5 * riemann_contract(R, fr[a], fr.e3, fr.e3, fr.e4);
  }
  cc.rho = 0.25 * riemann_contract(R, fr.e3, fr.e4, fr.e3, fr.e4);
  cc.rho_dual = 0.25 * riemann_contract(curv.riemann_dual, fr.e3, fr.e4, fr.e3, fr.e4);
  cc.A = complexify(cc.alpha);
  cc.Ab = complexify(cc.alphab);
  cc.B = complexify(cc.beta);
  cc.Bb = complexify(cc.betab);
  cc.P = {cc.rho, cc.rho_dual};
  return cc;
}

CurvatureComponents curvature_components(const KerrParams& params, const NullFrame& frame,
                                         const BLPoint& p) {
  return curvature_components(curvature(params, p), frame);
}

CForm1 jk_form(const KerrParams& params, const BLPoint& p) {
  const AuxScalars aux = aux_scalars(params, p.r, p.theta);
  const double v = std::sin(p.theta) / std::sqrt(aux.q_abs2);
  return {cplx{0.0, v}, cplx{v, 0.0}};
}

KerrReference kerr_reference(const KerrParams& params, double r, double theta,
                             const CForm1& jk) {
  const AuxScalars aux = aux_scalars(params, r, theta);
  const cplx q = aux.q;
  const double a = params.a;
  KerrReference ref;
  ref.P = -2.0 * params.m / (q * q * q);
  ref.trX = (2.0 / q) * (aux.delta / aux.q_abs2);
  ref.trXb = -2.0 / std::conj(q);
  const cplx zh = a * q / aux.q_abs2;
  const cplx hb = -a * std::conj(q) / aux.q_abs2;
  for (int i = 0; i < 2; ++i) {
    ref.Z[i] = zh * jk[i];
    ref.H[i] = zh * jk[i];
    ref.Hb[i] = hb * jk[i];
  }
  return ref;
}

double CheckedQuantities::max_abs() const {
  double m = std::max({std::abs(P), std::abs(trX), std::abs(trXb)});
  for (int i = 0; i < 2; ++i)
    m = std::max({m, std::abs(Z[i]), std::abs(H[i]), std::abs(Hb[i])});
  return m;
}

CheckedQuantities renormalize(const RicciCoefficients& rc, const CurvatureComponents& cc,
                              const KerrParams& params, double r, double theta,
                              const CForm1& jk) {
  const KerrReference ref = kerr_reference(params, r, theta, jk);
  CheckedQuantities out;
  out.P = cc.P - ref.P;
  out.trX = rc.trX - ref.trX;
  out.trXb = rc.trXb - ref.trXb;
  for (int i = 0; i < 2; ++i) {
    out.Z[i] = rc.Z[i] - ref.Z[i];
    out.H[i] = rc.H[i] - ref.H[i];
    out.Hb[i] = rc.Hb[i] - ref.Hb[i];
  }
  return out;
}

double jk_transport_residual(const KerrParams& params, const FrameField& field,
                             const BLPoint& p) {
  const FrameDerivatives fd = frame_derivatives(params, field, p);
  const Coords x = seed_coordinates(p, 1);
  using std::cos;
  using std::sin;
  using std::sqrt;
  const Jet s = sin(x[kTheta]);
  const Jet c = cos(x[kTheta]);
  const Jet& r = x[kR];
  const double a = params.a;
  const Jet qa = sqrt(r * r + a * a * c * c);
  // q Jk: component 1 = i s q/|q|, component 2 = s q/|q|.
  const std::array<Jet, 2> re{-a * c * s / qa, r * s / qa};
  const std::array<Jet, 2> im{r * s / qa, a * c * s / qa};

  const NullFrame& fr = fd.frame;
  double worst = 0.0;
  for (int i = 0; i < 2; ++i) {
    double dre = 0.0, dim = 0.0;
    for (int nu = 0; nu < 4; ++nu) {
      dre += fr.e4[nu] * re[i].derivative(nu);
      dim += fr.e4[nu] * im[i].derivative(nu);
    }
    for (int b = 0; b < 2; ++b) {
      const double conn = fd.inner(fd.cov[kE4][i], fr[b]);
      dre -= re[b].value() * conn;
      dim -= im[b].value() * conn;
    }
    worst = std::max(worst, std::hypot(dre, dim));
  }
  return worst / (std::sin(p.theta) / p.r);
}

Quadrature gauss_legendre(int n) {
  if (n < 1) throw ContractError("quadrature needs at least one node");
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    q.nodes[i] = -x;
    q.nodes[n - 1 - i] = x;
    q.weights[i] = q.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return q;
}

Ell1Modes ell1_modes(const SphereFunction& h, const KerrParams& params, double r,
                     int n_theta, int n_phi) {
  const Quadrature gl = gauss_legendre(n_theta);
  const double dphi = 2.0 * kPi / n_phi;
  Ell1Modes out;
  for (int i = 0; i < n_theta; ++i) {
    const double mu = gl.nodes[i];
    const double theta = std::acos(mu);
    const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    // dA = Sigma sin(theta) dtheta dphi = Sigma dmu dphi
    const double sigma = std::sqrt(aux_scalars(params, r, theta).sigma2);
    const double w = gl.weights[i] * sigma * dphi;
    for (int j = 0; j < n_phi; ++j) {
      const double phi = j * dphi;
      const double v = h(theta, phi) * w;
      out.i0 += mu * v;
      out.iplus += st * std::cos(phi) * v;
      out.iminus += st * std::sin(phi) * v;
    }
  }
  return out;
}

double sphere_area(const KerrParams& params, double r, int n_theta) {
  const Quadrature gl = gauss_legendre(n_theta);
  double s = 0.0;
  for (int i = 0; i < n_theta; ++i)
    s += gl.weights[i] * std::sqrt(aux_scalars(params, r, std::acos(gl.nodes[i])).sigma2);
  return 2.0 * kPi * s;
}

SphereMetric kerr_sphere_metric(const KerrParams& params, double r) {
  return {[params, r](double theta) { return aux_scalars(params, r, theta).q_abs2; },
          [params, r](double theta) {
            const AuxScalars aux = aux_scalars(params, r, theta);
            const double s = std::sin(theta);
            return aux.sigma2 * s * s / aux.q_abs2;
          }};
}

SphereMetric round_sphere_metric(double r) {
  return {[r](double) { return r * r; },
          [r](double theta) {
            const double s = std::sin(theta);
            return r * r * s * s;
          }};
}

IsothermalFit::IsothermalFit(SphereMetric metric, double r)
    : metric_(std::move(metric)), r_(r), rule_(gauss_legendre(48)) {
  // theta'(theta) = 2 atan(tan(theta/2) exp(G(theta) + c)) solves
  // dtheta'/dtheta = sin(theta') sqrt(g_thth / g_phph) for every c, with
  // theta'(0) = 0 and theta'(pi) = pi. The constant is fixed by requiring the
  // J0 = cos(theta') moment of the area element to vanish.
  const int n = static_cast<int>(rule_.nodes.size());
  std::vector<double> theta(n), stretch(n), area(n);
  for (int i = 0; i < n; ++i) {
    theta[i] = std::acos(rule_.nodes[i]);
    stretch[i] = log_stretch(theta[i]);
    const double s = std::sin(theta[i]);
    area[i] = rule_.weights[i] *
              std::sqrt(metric_.g_thth(theta[i]) * metric_.g_phph(theta[i])) / s;
  }
  auto moment = [&](double c) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double tp = 2.0 * std::atan(std::tan(0.5 * theta[i]) * std::exp(stretch[i] + c));
      sum += std::cos(tp) * area[i];
    }
    return sum;
  };
  double lo = -20.0, hi = 20.0;
  double flo = moment(lo), fhi = moment(hi);
  if (!(flo > 0.0 && fhi < 0.0))
    throw ConvergenceError("isothermal fit: balance condition not bracketed");
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = moment(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    (fm > 0.0 ? lo : hi) = mid;
  }
  if (!(hi - lo <= 1e-12)) throw ConvergenceError("isothermal fit: bisection stalled");
  constant_ = 0.5 * (lo + hi);
}

double IsothermalFit::log_stretch(double theta) const {
  const double a = 0.5 * kPi;
  const double half = 0.5 * (theta - a);
  double s = 0.0;
  for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
    const double x = a + half * (rule_.nodes[i] + 1.0);
    const double h = std::sqrt(metric_.g_thth(x) / metric_.g_phph(x));
    s += rule_.weights[i] * (h - 1.0 / std::sin(x));
  }
  return half * s;
}

double IsothermalFit::theta_prime(double theta) const {
  if (theta <= 0.0) return 0.0;
  if (theta >= kPi) return kPi;
  return 2.0 * std::atan(std::tan(0.5 * theta) * std::exp(log_stretch(theta) + constant_));
}

double IsothermalFit::conformal_factor(double theta) const {
  const double s = std::sin(theta_prime(theta));
  return 0.5 * std::log(metric_.g_phph(theta) / (r_ * r_ * s * s));
}

double IsothermalFit::residual(int samples) const {
  constexpr double kMargin = 0.05;
  constexpr double kStep = 1e-3;
  constexpr std::array<double, 4> kCoef{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double theta = kMargin + (kPi - 2.0 * kMargin) * k / (samples - 1);
    double deriv = 0.0;
    for (int j = 0; j < 4; ++j)
      deriv += kCoef[j] * (theta_prime(theta + (j + 1) * kStep) -
                           theta_prime(theta - (j + 1) * kStep));
    deriv /= kStep;
    const double e2phi = std::exp(2.0 * conformal_factor(theta));
    const double tp = theta_prime(theta);
    const double gtt = metric_.g_thth(theta), gpp = metric_.g_phph(theta);
    worst = std::max(worst, std::abs(e2phi * r_ * r_ * deriv * deriv - gtt) / gtt);
    worst = std::max(worst,
                     std::abs(e2phi * r_ * r_ * std::sin(tp) * std::sin(tp) - gpp) / gpp);
  }
  return worst;
}

IsothermalFit isothermal_fit(const SphereMetric& metric, double r) {
  return IsothermalFit(metric, r);
}

}  // namespace kerrkit
