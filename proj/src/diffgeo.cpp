#include "kerrkit/diffgeo.hpp"

#include <algorithm>
#include <cmath>

#include "kerrkit/error.hpp"
#include "kerrkit/frames.hpp"

namespace kerrkit {

Coords seed_coordinates(const BLPoint& p, int order) {
  const Vec4 x = p.coords();
  Coords out;
  for (int i = 0; i < 4; ++i) out[i] = Jet::variable(x[i], i, order);
  return out;
}

MetricFn kerr_metric_fn(const KerrParams& params) {
  return [params](const Coords& x) {
    return kerr_metric_components<Jet>(params, x[kR], x[kTheta]);
  };
}

Mat4 LocalGeometry::g_value() const {
  Mat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = g[i][j].value();
  return out;
}

Mat4 LocalGeometry::g_inv_value() const {
  Mat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = g_inv[i][j].value();
  return out;
}

Mat4T<Jet> inverse(const Mat4T<Jet>& m) {
  Mat4T<Jet> a = m;
  Mat4T<Jet> inv;
  const int order = m[0][0].order();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) inv[i][j] = Jet::constant(i == j ? 1.0 : 0.0, order);
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int row = col + 1; row < 4; ++row)
      if (std::abs(a[row][col].value()) > std::abs(a[piv][col].value())) piv = row;
    if (a[piv][col].value() == 0.0) throw DomainError("singular metric");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Jet d = a[col][col];
    for (int k = 0; k < 4; ++k) {
      a[col][k] /= d;
      inv[col][k] /= d;
    }
    for (int row = 0; row < 4; ++row) {
      if (row == col) continue;
      const Jet f = a[row][col];
      for (int k = 0; k < 4; ++k) {
        a[row][k] -= f * a[col][k];
        inv[row][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

LocalGeometry local_geometry(const MetricFn& metric_fn, const BLPoint& p,
                             int order) {
  if (order < 1 || order > kMaxJetOrder)
    throw ContractError("local geometry needs 1 <= order <= 4");
  LocalGeometry geom;
  geom.order = order;
  geom.point = p;
  geom.g = metric_fn(seed_coordinates(p, order));
  geom.g_inv = inverse(geom.g);

  Tensor3T<Jet> dg;  // dg[l][m][n] = d_l g_{mn}
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 4; ++m)
      for (int n = m; n < 4; ++n) {
        dg[l][m][n] = geom.g[m][n].partial(l);
        dg[l][n][m] = dg[l][m][n];
      }

  Tensor3T<Jet> lowered;  // Gamma_{s n l}
  for (int s = 0; s < 4; ++s)
    for (int n = 0; n < 4; ++n)
      for (int l = n; l < 4; ++l) {
        lowered[s][n][l] = 0.5 * (dg[n][s][l] + dg[l][s][n] - dg[s][n][l]);
        lowered[s][l][n] = lowered[s][n][l];
      }
  for (int mu = 0; mu < 4; ++mu)
    for (int n = 0; n < 4; ++n)
      for (int l = n; l < 4; ++l) {
        Jet sum = Jet::constant(0.0, order - 1);
        for (int s = 0; s < 4; ++s) sum += geom.g_inv[mu][s] * lowered[s][n][l];
        geom.gamma[mu][n][l] = sum;
        geom.gamma[mu][l][n] = sum;
      }
  for (int l = 0; l < 4; ++l) {
    Jet sum = Jet::constant(0.0, order - 1);
    for (int a = 0; a < 4; ++a) sum += geom.gamma[a][a][l];
    geom.gamma_trace[l] = sum;
  }
  return geom;
}

LocalGeometry local_geometry(const KerrParams& params, const BLPoint& p,
                             int order) {
  metric(params, p);  // domain check
  return local_geometry(kerr_metric_fn(params), p, order);
}

Tensor3 christoffel(const KerrParams& params, const BLPoint& p) {
  const LocalGeometry geom = local_geometry(params, p, 1);
  Tensor3 out{};
  for (int mu = 0; mu < 4; ++mu)
    for (int n = 0; n < 4; ++n)
      for (int l = 0; l < 4; ++l) out[mu][n][l] = geom.gamma[mu][n][l].value();
  return out;
}

Tensor4T<Jet> riemann_jet(const LocalGeometry& geom) {
  if (geom.order < 2) throw ContractError("Riemann needs geometry order >= 2");
  const int order = geom.order - 2;
  Tensor4T<Jet> up;  // R^mu_{nu c d}
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      for (int c = 0; c < 4; ++c)
        for (int d = c + 1; d < 4; ++d) {
          Jet v = geom.gamma[mu][nu][d].partial(c) - geom.gamma[mu][nu][c].partial(d);
          for (int s = 0; s < 4; ++s)
            v += geom.gamma[mu][c][s] * geom.gamma[s][nu][d] -
                 geom.gamma[mu][d][s] * geom.gamma[s][nu][c];
          up[mu][nu][c][d] = v.truncated(order);
          up[mu][nu][d][c] = -up[mu][nu][c][d];
        }
  Tensor4T<Jet> out;
  for (int al = 0; al < 4; ++al)
    for (int nu = 0; nu < 4; ++nu)
      for (int c = 0; c < 4; ++c) {
        out[al][nu][c][c] = Jet::constant(0.0, order);
        for (int d = c + 1; d < 4; ++d) {
          Jet v = Jet::constant(0.0, order);
          for (int mu = 0; mu < 4; ++mu) v += geom.g[al][mu] * up[mu][nu][c][d];
          out[al][nu][c][d] = v;
          out[al][nu][d][c] = -v;
        }
      }
  return out;
}

namespace {

int permutation_sign(int a, int b, int c, int d) {
  std::array<int, 4> p{a, b, c, d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] == p[j]) return 0;
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

CurvatureAt curvature_from(const LocalGeometry& geom) {
  CurvatureAt out;
  out.g = geom.g_value();
  out.g_inv = geom.g_inv_value();
  out.det = determinant(out.g);
  for (int mu = 0; mu < 4; ++mu)
    for (int n = 0; n < 4; ++n)
      for (int l = 0; l < 4; ++l) out.gamma[mu][n][l] = geom.gamma[mu][n][l].value();
  const Tensor4T<Jet> rj = riemann_jet(geom);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) out.riemann[a][b][c][d] = rj[a][b][c][d].value();
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) {
      double s = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) s += out.g_inv[a][c] * out.riemann[a][b][c][d];
      out.ricci[b][d] = s;
    }
  out.riemann_dual = left_dual(out.riemann, out.g_inv, out.det);
  return out;
}

}  // namespace

Tensor4 volume_form(double det) {
  const double vol = std::sqrt(std::abs(det));
  Tensor4 eps{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) eps[a][b][c][d] = vol * permutation_sign(a, b, c, d);
  return eps;
}

Tensor4 left_dual(const Tensor4& riemann, const Mat4& g_inv, double det) {
  const Tensor4 eps = volume_form(det);
  // eps_{ab}^{mn} = g^{mr} g^{ns} eps_{abrs}
  Tensor4 mixed{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
          double s = 0.0;
          for (int r = 0; r < 4; ++r)
            for (int t = 0; t < 4; ++t) s += g_inv[m][r] * g_inv[n][t] * eps[a][b][r][t];
          mixed[a][b][m][n] = s;
        }
  Tensor4 out{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double s = 0.0;
          for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) s += mixed[a][b][m][n] * riemann[m][n][c][d];
          out[a][b][c][d] = 0.5 * s;
        }
  return out;
}

CurvatureAt curvature(const KerrParams& params, const BLPoint& p) {
  return curvature_from(local_geometry(params, p, 2));
}

CurvatureAt curvature(const MetricFn& metric_fn, const BLPoint& p) {
  return curvature_from(local_geometry(metric_fn, p, 2));
}

double kretschmann(const CurvatureAt& curv) {
  const Mat4& gi = curv.g_inv;
  // Raise all four indices, contracting index by index.
  Tensor4 t = curv.riemann;
  for (int slot = 0; slot < 4; ++slot) {
    Tensor4 next{};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            std::array<int, 4> idx{a, b, c, d};
            double s = 0.0;
            for (int k = 0; k < 4; ++k) {
              std::array<int, 4> src = idx;
              src[slot] = k;
              s += gi[idx[slot]][k] * t[src[0]][src[1]][src[2]][src[3]];
            }
            next[a][b][c][d] = s;
          }
    t = next;
  }
  double k = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) k += t[a][b][c][d] * curv.riemann[a][b][c][d];
  return k;
}

double curvature_scale(const KerrParams& params, double r) {
  return params.m > 0.0 ? params.m / (r * r * r) : 1.0 / (r * r);
}

double ricci_residual(const KerrParams& params, const BLPoint& p) {
  return ricci_residual(params, p, curvature(params, p));
}

double ricci_residual(const KerrParams& params, const BLPoint& p, const CurvatureAt& curv) {
  const NullFrame fr = balanced_principal_frame(params, p);
  double worst = 0.0;
  for (int A = 0; A < 4; ++A)
    for (int B = A; B < 4; ++B) {
      double v = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) v += curv.ricci[a][b] * fr[A][a] * fr[B][b];
      worst = std::max(worst, std::abs(v));
    }
  return worst / curvature_scale(params, p.r);
}

double contracted_bianchi_residual(const KerrParams& params, const BLPoint& p) {
  const LocalGeometry geom = local_geometry(params, p, 3);
  const Tensor4T<Jet> riem = riemann_jet(geom);  // order 1
  Mat4T<Jet> ric;
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) {
      Jet s = Jet::constant(0.0, 1);
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) s += geom.g_inv[a][c] * riem[a][b][c][d];
      ric[b][d] = s;
    }
  Jet scalar = Jet::constant(0.0, 1);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) scalar += geom.g_inv[a][b] * ric[a][b];
  Mat4T<Jet> einstein;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) einstein[a][b] = ric[a][b] - 0.5 * scalar * geom.g[a][b];

  double worst = 0.0;
  for (int b = 0; b < 4; ++b) {
    double div = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int c = 0; c < 4; ++c) {
        double cov = einstein[a][b].derivative(c);
        for (int l = 0; l < 4; ++l)
          cov -= geom.gamma[l][c][a].value() * einstein[l][b].value() +
                 geom.gamma[l][c][b].value() * einstein[a][l].value();
        div += geom.g_inv[a][c].value() * cov;
      }
    worst = std::max(worst, std::abs(div));
  }
  return worst / (curvature_scale(params, p.r) / p.r);
}

VectorFieldFn time_translation() {
  return [](const Coords& x) {
    const int n = x[0].order();
    return Vec4T<Jet>{Jet::constant(1.0, n), Jet::constant(0.0, n),
                      Jet::constant(0.0, n), Jet::constant(0.0, n)};
  };
}

VectorFieldFn axial_rotation() {
  return [](const Coords& x) {
    const int n = x[0].order();
    return Vec4T<Jet>{Jet::constant(0.0, n), Jet::constant(0.0, n),
                      Jet::constant(0.0, n), Jet::constant(1.0, n)};
  };
}

VectorFieldFn radial_field() {
  return [](const Coords& x) {
    const int n = x[0].order();
    return Vec4T<Jet>{Jet::constant(0.0, n), Jet::constant(1.0, n),
                      Jet::constant(0.0, n), Jet::constant(0.0, n)};
  };
}

Mat4 killing_residual(const KerrParams& params, const VectorFieldFn& field,
                      const BLPoint& p) {
  const LocalGeometry geom = local_geometry(params, p, 1);
  const Vec4T<Jet> x = field(seed_coordinates(p, 1));
  const Vec4T<Jet> xl = lower(geom.g, x);
  Mat4 dx{};  // D_a X_b
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double v = xl[b].derivative(a);
      for (int l = 0; l < 4; ++l) v -= geom.gamma[l][a][b].value() * xl[l].value();
      dx[a][b] = v;
    }
  Mat4 out{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) out[a][b] = dx[a][b] + dx[b][a];
  return out;
}

double killing_residual_normalized(const KerrParams& params, const VectorFieldFn& field,
                                   const BLPoint& p) {
  const LocalGeometry geom = local_geometry(params, p, 1);
  const Vec4T<Jet> xl = lower(geom.g, field(seed_coordinates(p, 1)));
  double worst = 0.0, scale = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) {
      double v = xl[b].derivative(a) + xl[a].derivative(b);
      double s = std::abs(xl[b].derivative(a)) + std::abs(xl[a].derivative(b));
      for (int l = 0; l < 4; ++l) {
        const double term = 2.0 * geom.gamma[l][a][b].value() * xl[l].value();
        v -= term;
        s += std::abs(term);
      }
      worst = std::max(worst, std::abs(v));
      scale = std::max(scale, s);
    }
  return scale > 0.0 ? worst / scale : worst;
}

Jet divergence(const LocalGeometry& geom, const Vec4T<Jet>& v) {
  int order = kMaxJetOrder;
  for (const Jet& c : v) order = std::min(order, c.order());
  if (order < 1) throw ContractError("divergence needs a differentiable field");
  Jet out = Jet::constant(0.0, order - 1);
  for (int a = 0; a < 4; ++a) out += v[a].partial(a) + geom.gamma_trace[a] * v[a];
  if (out.order() < order - 1)
    throw ContractError("local geometry order too low for divergence");
  return out;
}

Jet wave_operator_jet(const LocalGeometry& geom, const Jet& u) {
  if (u.order() < 2) throw ContractError("wave operator needs a jet of order >= 2");
  if (geom.order < u.order() - 1)
    throw ContractError("local geometry order too low for wave operator");
  Vec4T<Jet> grad;
  for (int b = 0; b < 4; ++b) grad[b] = u.partial(b);
  Vec4T<Jet> v;
  for (int a = 0; a < 4; ++a) {
    Jet s = Jet::constant(0.0, u.order() - 1);
    for (int b = 0; b < 4; ++b) s += geom.g_inv[a][b] * grad[b];
    v[a] = s;
  }
  return divergence(geom, v);
}

double wave_operator_apply(const KerrParams& params, const ScalarField& psi,
                           const BLPoint& p) {
  const LocalGeometry geom = local_geometry(params, p, 1);
  Jet u = psi(seed_coordinates(p, 2));
  if (u.order() > 2) u = u.truncated(2);
  return wave_operator_jet(geom, u).value();
}

}  // namespace kerrkit
