#include "kerrkit/kerr_metric.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kerrkit/error.hpp"

namespace kerrkit {

double dot_magnitude(const Mat4& g, const Vec4& x, const Vec4& y) {
  double s = 0.0;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) s += std::abs(g[m][n] * x[m] * y[n]);
  return s;
}

Mat4 multiply(const Mat4& a, const Mat4& b) {
  Mat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

double determinant(const Mat4& m) {
  Mat4 a = m;
  double det = 1.0;
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int row = col + 1; row < 4; ++row)
      if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
    if (a[piv][col] == 0.0) return 0.0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int row = col + 1; row < 4; ++row) {
      const double f = a[row][col] / a[col][col];
      for (int k = col; k < 4; ++k) a[row][k] -= f * a[col][k];
    }
  }
  return det;
}

Mat4 inverse(const Mat4& m) {
  Mat4 a = m;
  Mat4 inv{};
  for (int i = 0; i < 4; ++i) inv[i][i] = 1.0;
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int row = col + 1; row < 4; ++row)
      if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
    if (a[piv][col] == 0.0) throw DomainError("singular 4x4 matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const double d = a[col][col];
    for (int k = 0; k < 4; ++k) {
      a[col][k] /= d;
      inv[col][k] /= d;
    }
    for (int row = 0; row < 4; ++row) {
      if (row == col) continue;
      const double f = a[row][col];
      for (int k = 0; k < 4; ++k) {
        a[row][k] -= f * a[col][k];
        inv[row][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

KerrParams KerrParams::make(double a, double m) {
  if (!std::isfinite(a) || !std::isfinite(m))
    throw DomainError("Kerr parameters must be finite");
  if (m < 0.0) throw DomainError("Kerr mass must be non-negative");
  if (m == 0.0 && a != 0.0)
    throw DomainError("flat limit requires a = 0 when m = 0");
  if (m > 0.0 && !(std::abs(a) < m)) {
    std::ostringstream msg;
    msg << "extremal or superextremal Kerr parameters: |a| = " << std::abs(a)
        << " >= m = " << m;
    throw DomainError(msg.str());
  }
  return KerrParams{a, m};
}

AuxScalars aux_scalars(const KerrParams& params, double r, double theta) {
  const double a = params.a, m = params.m;
  const double c = std::cos(theta), s = std::sin(theta);
  AuxScalars out{};
  out.delta = r * r + a * a - 2.0 * m * r;
  out.q = {r, a * c};
  out.q_abs2 = r * r + a * a * c * c;
  out.sigma2 = (r * r + a * a) * out.q_abs2 + 2.0 * m * r * a * a * s * s;
  return out;
}

double sigma2_alternate(const KerrParams& params, double r, double theta) {
  const double a = params.a;
  const double s = std::sin(theta);
  const double r2a2 = r * r + a * a;
  const double delta = r * r + a * a - 2.0 * params.m * r;
  return r2a2 * r2a2 - a * a * s * s * delta;
}

HorizonRadii horizon_radii(const KerrParams& params) {
  const double a = params.a, m = params.m;
  if (m <= 0.0 || !(std::abs(a) < m))
    throw DomainError("horizon radii need a subextremal black hole, |a| < m");
  const double root = std::sqrt(m * m - a * a);
  return {m + root, m - root};
}

MetricAt metric(const KerrParams& params, const BLPoint& p) {
  const AuxScalars aux = aux_scalars(params, p.r, p.theta);
  if (!(aux.delta > 0.0) || !(p.r > 0.0)) {
    std::ostringstream msg;
    msg << "point r = " << p.r << " is not in the exterior (Delta = "
        << aux.delta << ")";
    throw DomainError(msg.str());
  }
  if (params.m > 0.0 && p.r <= horizon_radii(params).r_plus)
    throw DomainError("point lies inside the event horizon");
  MetricAt out{};
  out.g = kerr_metric_components<double>(params, p.r, p.theta);
  out.g_inv = inverse(out.g);
  out.det = determinant(out.g);
  return out;
}

void require_exterior(const KerrParams& params, const BLPoint& p,
                      const DomainMargins& margins) {
  const double r_min =
      params.m > 0.0 ? margins.r_factor * horizon_radii(params).r_plus : 0.0;
  if (!(p.r >= r_min) || !(p.r > 0.0)) {
    std::ostringstream msg;
    msg << "r = " << p.r << " below the exterior margin " << r_min;
    throw DomainError(msg.str());
  }
  if (!(p.theta >= margins.theta) ||
      !(p.theta <= std::numbers::pi - margins.theta))
    throw DomainError("theta too close to the symmetry axis");
}

}  // namespace kerrkit
