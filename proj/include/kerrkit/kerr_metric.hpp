#pragma once

#include <complex>

#include "kerrkit/tensor.hpp"

namespace kerrkit {

// Spin a and mass m, both lengths (G = c = 1).
struct KerrParams {
  double a = 0.0;
  double m = 1.0;

  // Validates m >= 0 and |a| < m; the flat limit a = m = 0 is admitted.
  static KerrParams make(double a, double m);
  bool flat() const { return m == 0.0; }
};

struct BLPoint {
  double t = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;

  Vec4 coords() const { return {t, r, theta, phi}; }
};

struct AuxScalars {
  double delta;
  std::complex<double> q;
  double q_abs2;
  double sigma2;
};

struct HorizonRadii {
  double r_plus;
  double r_minus;
};

struct MetricAt {
  Mat4 g;
  Mat4 g_inv;
  double det;
};

// Margins used when sampling or validating exterior points.
struct DomainMargins {
  double r_factor = 1.05;
  double theta = 0.05;
};

AuxScalars aux_scalars(const KerrParams& params, double r, double theta);

// Second expression for Sigma^2: (r^2 + a^2)^2 - a^2 sin^2(theta) Delta.
double sigma2_alternate(const KerrParams& params, double r, double theta);

HorizonRadii horizon_radii(const KerrParams& params);

MetricAt metric(const KerrParams& params, const BLPoint& p);

// Throws DomainError unless r >= r_factor * r_+ and theta is at least
// `theta` away from the axis.
void require_exterior(const KerrParams& params, const BLPoint& p,
                      const DomainMargins& margins = {});

// Covariant BL components as functions of (r, theta); T is double or Jet.
template <class T>
Mat4T<T> kerr_metric_components(const KerrParams& params, const T& r,
                                const T& theta) {
  using std::cos;
  using std::sin;
  const double a = params.a, m = params.m;
  const T s = sin(theta);
  const T c = cos(theta);
  const T s2 = s * s;
  const T r2a2 = r * r + a * a;
  const T delta = r * r + a * a - 2.0 * m * r;
  const T q2 = r * r + a * a * c * c;
  const T sigma2 = r2a2 * q2 + 2.0 * m * r * a * a * s2;
  const T omega = 2.0 * a * m * r / sigma2;
  const T gpp = sigma2 * s2 / q2;

  Mat4T<T> g{};
  for (auto& row : g) row.fill(T(0.0));
  g[kT][kT] = -q2 * delta / sigma2 + gpp * omega * omega;
  g[kT][kPhi] = -gpp * omega;
  g[kPhi][kT] = g[kT][kPhi];
  g[kPhi][kPhi] = gpp;
  g[kR][kR] = q2 / delta;
  g[kTheta][kTheta] = q2;
  return g;
}

}  // namespace kerrkit
