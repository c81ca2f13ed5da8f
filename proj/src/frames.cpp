#include "kerrkit/frames.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "kerrkit/error.hpp"

namespace kerrkit {
namespace {

void require_off_axis(const BLPoint& p) {
  if (!(std::sin(p.theta) > 1e-12) || !(p.theta > 0.0) || !(p.theta < 3.2))
    throw DomainError("horizontal basis is singular on the symmetry axis");
}

double relative(double residual, double scale) {
  return std::abs(residual) / std::max(scale, 1e-300);
}

// Frame vectors as rows of coefficients over an abstract reference frame;
// used to solve for inverse transformations independently of any point.
using FrameMatrix = std::array<std::array<double, 4>, 4>;

NullFrame reference_frame() {
  NullFrame fr;
  fr.e1 = {1, 0, 0, 0};
  fr.e2 = {0, 1, 0, 0};
  fr.e3 = {0, 0, 1, 0};
  fr.e4 = {0, 0, 0, 1};
  return fr;
}

std::array<double, 16> flatten(const NullFrame& fr) {
  std::array<double, 16> out{};
  for (int s = 0; s < 4; ++s)
    for (int k = 0; k < 4; ++k) out[4 * s + k] = fr[s][k];
  return out;
}

NullFrame rotate(const NullFrame& fr, double angle) {
  NullFrame out = fr;
  const double c = std::cos(angle), s = std::sin(angle);
  for (int mu = 0; mu < 4; ++mu) {
    out.e1[mu] = c * fr.e1[mu] + s * fr.e2[mu];
    out.e2[mu] = -s * fr.e1[mu] + c * fr.e2[mu];
  }
  return out;
}

// y = (f1, f2, fb1, fb2, lambda[, rotation]).
template <std::size_t N>
std::array<double, 16> roundtrip_residual(const FrameTransform& x,
                                          const std::array<double, N>& y) {
  const NullFrame ref = reference_frame();
  const NullFrame once = transform_frame_components<double, double>(ref, x.f, x.fb, x.lambda);
  NullFrame back = transform_frame_components<double, double>(
      once, {y[0], y[1]}, {y[2], y[3]}, y[4]);
  if constexpr (N == 6) back = rotate(back, y[5]);
  std::array<double, 16> r = flatten(back);
  const std::array<double, 16> id = flatten(ref);
  for (int i = 0; i < 16; ++i) r[i] -= id[i];
  return r;
}

double max_abs(const std::array<double, 16>& r) {
  double m = 0.0;
  for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

// Solves the normal equations J^T J dx = -J^T r by Gaussian elimination.
template <std::size_t N>
std::array<double, N> gauss_newton_step(const std::array<std::array<double, 16>, N>& jac,
                                        const std::array<double, 16>& res) {
  std::array<std::array<double, N + 1>, N> a{};
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      double s = 0.0;
      for (int k = 0; k < 16; ++k) s += jac[i][k] * jac[j][k];
      a[i][j] = s;
    }
    double s = 0.0;
    for (int k = 0; k < 16; ++k) s += jac[i][k] * res[k];
    a[i][N] = -s;
  }
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    for (std::size_t row = col + 1; row < N; ++row)
      if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
    if (a[piv][col] == 0.0) throw ConvergenceError("singular Jacobian in inverse transform");
    std::swap(a[piv], a[col]);
    for (std::size_t row = col + 1; row < N; ++row) {
      const double f = a[row][col] / a[col][col];
      for (std::size_t k = col; k <= N; ++k) a[row][k] -= f * a[col][k];
    }
  }
  std::array<double, N> dx{};
  for (int i = static_cast<int>(N) - 1; i >= 0; --i) {
    double s = a[i][N];
    for (std::size_t j = i + 1; j < N; ++j) s -= a[i][j] * dx[j];
    dx[i] = s / a[i][i];
  }
  return dx;
}

template <std::size_t N>
std::pair<std::array<double, N>, double> solve_inverse(const FrameTransform& x) {
  if (!(x.lambda > 0.0)) throw ContractError("frame transformation needs lambda > 0");
  if (!(std::hypot(x.f[0], x.f[1]) * std::hypot(x.fb[0], x.fb[1]) < 1.0))
    throw ContractError("inverse transform requires |f| |fb| < 1");
  // Linearised inverse as the starting point.
  std::array<double, N> y{};
  y[0] = -x.lambda * x.f[0];
  y[1] = -x.lambda * x.f[1];
  y[2] = -x.fb[0] / x.lambda;
  y[3] = -x.fb[1] / x.lambda;
  y[4] = 1.0 / x.lambda;
  constexpr int kMaxIterations = 60;
  std::array<double, 16> res = roundtrip_residual(x, y);
  for (int it = 0; it < kMaxIterations && max_abs(res) >= 1e-15; ++it) {
    std::array<std::array<double, 16>, N> jac{};
    for (std::size_t k = 0; k < N; ++k) {
      const double h = 1e-6 * std::max(1.0, std::abs(y[k]));
      auto yp = y, ym = y;
      yp[k] += h;
      ym[k] -= h;
      const auto rp = roundtrip_residual(x, yp);
      const auto rm = roundtrip_residual(x, ym);
      for (int i = 0; i < 16; ++i) jac[k][i] = (rp[i] - rm[i]) / (2.0 * h);
    }
    const auto dx = gauss_newton_step(jac, res);
    double step = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      y[k] += dx[k];
      step = std::max(step, std::abs(dx[k]));
    }
    if (!(y[4] > 0.0)) throw ConvergenceError("inverse transform left the lambda > 0 branch");
    res = roundtrip_residual(x, y);
    if (step < 1e-15) break;
  }
  return {y, max_abs(res)};
}

}  // namespace

NullFrame principal_frame(const KerrParams& params, const BLPoint& p) {
  metric(params, p);
  require_off_axis(p);
  return principal_frame_components<double>(params, p.r, p.theta);
}

NullFrame balanced_principal_frame(const KerrParams& params, const BLPoint& p) {
  const AuxScalars aux = aux_scalars(params, p.r, p.theta);
  return transform_frame(principal_frame(params, p),
                         FrameTransform::boost(std::sqrt(aux.q_abs2 / aux.delta)));
}

NullFrame transform_frame(const NullFrame& frame, const FrameTransform& x) {
  if (!(x.lambda > 0.0)) throw ContractError("frame transformation needs lambda > 0");
  return transform_frame_components<double, double>(frame, x.f, x.fb, x.lambda);
}

FrameField principal_frame_field(const KerrParams& params) {
  return [params](const Coords& x) {
    return principal_frame_components<Jet>(params, x[kR], x[kTheta]);
  };
}

FrameField pg_frame_field(const KerrParams& params) {
  return [params](const Coords& x) {
    const FrameT<Jet> base = principal_frame_components<Jet>(params, x[kR], x[kTheta]);
    using std::cos;
    const Jet& r = x[kR];
    const Jet c = cos(x[kTheta]);
    const double a = params.a;
    const Jet lambda = (r * r + a * a * c * c) / (r * r + a * a - 2.0 * params.m * r);
    return transform_frame_components<Jet, Jet>(base, {0.0, 0.0}, {0.0, 0.0}, lambda);
  };
}

FrameField transformed_frame_field(FrameField base, const FrameTransform& x) {
  if (!(x.lambda > 0.0)) throw ContractError("frame transformation needs lambda > 0");
  return [base = std::move(base), x](const Coords& c) {
    return transform_frame_components<Jet, double>(base(c), x.f, x.fb, x.lambda);
  };
}

NullFrame evaluate_frame(const FrameField& field, const BLPoint& p) {
  const FrameT<Jet> fj = field(seed_coordinates(p, 0));
  NullFrame out;
  for (int s = 0; s < 4; ++s)
    for (int mu = 0; mu < 4; ++mu) out[s][mu] = fj[s][mu].value();
  return out;
}

NullFrame pg_normalized_frame(const KerrParams& params, const BLPoint& p) {
  metric(params, p);
  require_off_axis(p);
  return evaluate_frame(pg_frame_field(params), p);
}

InverseFit fit_inverse_transform(const FrameTransform& x) {
  const auto [y, residual] = solve_inverse<5>(x);
  return {FrameTransform{{y[0], y[1]}, {y[2], y[3]}, y[4]}, residual};
}

FrameTransform invert_transform(const FrameTransform& x) {
  const InverseFit fit = fit_inverse_transform(x);
  if (!(fit.residual < 1e-12))
    throw ConvergenceError("no inverse within the (f, fb, lambda) family; best round-trip "
                           "residual " + std::to_string(fit.residual));
  return fit.inverse;
}

CompletedInverse invert_transform_completed(const FrameTransform& x) {
  const auto [y, residual] = solve_inverse<6>(x);
  if (!(residual < 1e-12))
    throw ConvergenceError("completed inverse transform did not converge");
  return {FrameTransform{{y[0], y[1]}, {y[2], y[3]}, y[4]}, y[5]};
}

NullFrame rotate_horizontal(const NullFrame& frame, double angle) { return rotate(frame, angle); }

double FrameInvariants::max() const {
  return std::max({e4_null, e3_null, pair, horizontal, e3_orth, e4_orth});
}

FrameInvariants frame_invariants(const Mat4& g, const NullFrame& fr) {
  FrameInvariants out;
  auto rel = [&](const Vec4& x, const Vec4& y, double target) {
    return relative(dot(g, x, y) - target, dot_magnitude(g, x, y));
  };
  out.e4_null = rel(fr.e4, fr.e4, 0.0);
  out.e3_null = rel(fr.e3, fr.e3, 0.0);
  out.pair = rel(fr.e3, fr.e4, -2.0);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b)
      out.horizontal = std::max(out.horizontal, rel(fr[a], fr[b], a == b ? 1.0 : 0.0));
    out.e3_orth = std::max(out.e3_orth, rel(fr[a], fr.e3, 0.0));
    out.e4_orth = std::max(out.e4_orth, rel(fr[a], fr.e4, 0.0));
  }
  return out;
}

FrameDerivatives frame_derivatives(const KerrParams& params, const FrameField& field,
                                   const BLPoint& p) {
  const LocalGeometry geom = local_geometry(params, p, 1);
  const FrameT<Jet> fj = field(seed_coordinates(p, 1));
  FrameDerivatives out;
  out.g = geom.g_value();
  for (int s = 0; s < 4; ++s)
    for (int mu = 0; mu < 4; ++mu) out.frame[s][mu] = fj[s][mu].value();
  for (int A = 0; A < 4; ++A)
    for (int B = 0; B < 4; ++B) {
      const Vec4& x = out.frame[A];
      for (int mu = 0; mu < 4; ++mu) {
        double d = 0.0, c = 0.0;
        for (int nu = 0; nu < 4; ++nu) {
          d += x[nu] * fj[B][mu].derivative(nu);
          for (int l = 0; l < 4; ++l)
            c += x[nu] * geom.gamma[mu][nu][l].value() * out.frame[B][l];
        }
        out.partial[A][B][mu] = d;
        out.cov[A][B][mu] = d + c;
      }
    }
  return out;
}

IntegrabilityDefect integrability_defect(const FrameField& field,
                                         const KerrParams& params,
                                         const BLPoint& p) {
  const FrameDerivatives fd = frame_derivatives(params, field, p);
  Vec4 bracket{};
  for (int mu = 0; mu < 4; ++mu)
    bracket[mu] = fd.partial[kE1][kE2][mu] - fd.partial[kE2][kE1][mu];
  return {-0.5 * fd.inner(bracket, fd.frame.e4), -0.5 * fd.inner(bracket, fd.frame.e3)};
}

}  // namespace kerrkit
