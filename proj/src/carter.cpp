#include "kerrkit/carter.hpp"

#include <algorithm>
#include <cmath>

#include "kerrkit/error.hpp"

namespace kerrkit {
namespace {

Mat4T<Jet> raise_both(const Mat4T<Jet>& g_inv, const Mat4T<Jet>& lower_t) {
  const int order = std::min(g_inv[0][0].order(), lower_t[0][0].order());
  Mat4T<Jet> tmp, out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Jet s = Jet::constant(0.0, order);
      for (int c = 0; c < 4; ++c) s += g_inv[a][c] * lower_t[c][b];
      tmp[a][b] = s;
    }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Jet s = Jet::constant(0.0, order);
      for (int c = 0; c < 4; ++c) s += tmp[a][c] * g_inv[c][b];
      out[a][b] = s;
    }
  return out;
}

// Largest |term| in nabla_alpha W^alpha = d_alpha W^alpha + Gamma^alpha_{alpha l} W^l.
double divergence_scale(const LocalGeometry& geom, const Vec4T<Jet>& w) {
  double s = 0.0;
  for (int a = 0; a < 4; ++a) {
    s = std::max(s, std::abs(w[a].derivative(a)));
    s = std::max(s, std::abs(geom.gamma_trace[a].value() * w[a].value()));
  }
  return s;
}

Vec4T<Jet> contract_gradient(const Mat4T<Jet>& upper, const Jet& u) {
  Vec4T<Jet> grad, w;
  for (int b = 0; b < 4; ++b) grad[b] = u.partial(b);
  for (int a = 0; a < 4; ++a) {
    Jet s = Jet::constant(0.0, u.order() - 1);
    for (int b = 0; b < 4; ++b) s += upper[a][b] * grad[b];
    w[a] = s;
  }
  return w;
}

}  // namespace

TensorFieldFn carter_field(const KerrParams& params) {
  return [params](const Coords& x) {
    return carter_components<Jet>(params, x[kR], x[kTheta]);
  };
}

CarterTensorAt carter_tensor(const KerrParams& params, const BLPoint& p) {
  const MetricAt met = metric(params, p);
  CarterTensorAt out;
  out.lower = carter_components<double>(params, p.r, p.theta);
  out.upper = multiply(multiply(met.g_inv, out.lower), met.g_inv);
  return out;
}

double killing_tensor_residual(const KerrParams& params, const TensorFieldFn& tensor,
                               const BLPoint& p) {
  const LocalGeometry geom = local_geometry(params, p, 1);
  const Mat4T<Jet> cj = tensor(seed_coordinates(p, 1));
  Tensor3 dc{};  // dc[g][a][b] = D_g C_ab
  for (int g = 0; g < 4; ++g)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double v = cj[a][b].derivative(g);
        for (int l = 0; l < 4; ++l)
          v -= geom.gamma[l][g][a].value() * cj[l][b].value() +
               geom.gamma[l][g][b].value() * cj[a][l].value();
        dc[g][a][b] = v;
      }

  const NullFrame fr = balanced_principal_frame(params, p);

  double c_max = 0.0;
  for (int A = 0; A < 4; ++A)
    for (int B = 0; B < 4; ++B) {
      double v = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) v += cj[a][b].value() * fr[A][a] * fr[B][b];
      c_max = std::max(c_max, std::abs(v));
    }
  double worst = 0.0;
  for (int G = 0; G < 4; ++G)
    for (int A = 0; A < 4; ++A)
      for (int B = 0; B < 4; ++B) {
        double sym = 0.0;
        for (int g = 0; g < 4; ++g)
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
              const double w = fr[G][g] * fr[A][a] * fr[B][b];
              if (w == 0.0) continue;
              sym += w * (dc[g][a][b] + dc[a][b][g] + dc[b][g][a]);
            }
        worst = std::max(worst, std::abs(sym / 3.0));
      }
  if (c_max == 0.0) return worst;
  return worst / (c_max / p.r);
}

double killing_tensor_residual(const KerrParams& params, const BLPoint& p) {
  metric(params, p);
  return killing_tensor_residual(params, carter_field(params), p);
}

Jet carter_operator_jet(const LocalGeometry& geom, const Mat4T<Jet>& upper, const Jet& u) {
  if (u.order() < 2) throw ContractError("Carter operator needs a jet of order >= 2");
  if (upper[0][0].order() < u.order() - 1 || geom.order < u.order() - 1)
    throw ContractError("tensor jets too short for the Carter operator");
  return divergence(geom, contract_gradient(upper, u));
}

double carter_operator_apply(const KerrParams& params, const ScalarField& psi,
                             const BLPoint& p) {
  const LocalGeometry geom = local_geometry(params, p, 1);
  const Mat4T<Jet> upper =
      raise_both(geom.g_inv, carter_field(params)(seed_coordinates(p, 1)));
  Jet u = psi(seed_coordinates(p, 2));
  if (u.order() > 2) u = u.truncated(2);
  return carter_operator_jet(geom, upper, u).value();
}

CommutatorResult commutator_residual(const KerrParams& params, const ScalarField& psi,
                                     const BLPoint& p) {
  const LocalGeometry geom = local_geometry(params, p, 3);
  const Mat4T<Jet> upper = raise_both(geom.g_inv, carter_field(params)(seed_coordinates(p, 3)));
  const Jet u = psi(seed_coordinates(p, 4));
  if (u.order() < 4) throw ContractError("commutator needs a field jet of order 4");

  Vec4T<Jet> box_flux;  // g^{ab} d_b u
  {
    Vec4T<Jet> grad;
    for (int b = 0; b < 4; ++b) grad[b] = u.partial(b);
    for (int a = 0; a < 4; ++a) {
      Jet s = Jet::constant(0.0, 3);
      for (int b = 0; b < 4; ++b) s += geom.g_inv[a][b] * grad[b];
      box_flux[a] = s;
    }
  }
  const Jet box_u = divergence(geom, box_flux);                    // order 2
  const Jet carter_u = divergence(geom, contract_gradient(upper, u));  // order 2

  const Vec4T<Jet> w1 = contract_gradient(upper, box_u);
  Vec4T<Jet> w2;
  for (int a = 0; a < 4; ++a) {
    Jet s = Jet::constant(0.0, 1);
    for (int b = 0; b < 4; ++b) s += geom.g_inv[a][b] * carter_u.partial(b);
    w2[a] = s;
  }
  CommutatorResult out;
  out.carter_box = divergence(geom, w1).value();
  out.box_carter = divergence(geom, w2).value();
  out.scale = std::max(divergence_scale(geom, w1), divergence_scale(geom, w2));
  const double diff = std::abs(out.carter_box - out.box_carter);
  out.residual = out.scale > 0.0 ? diff / out.scale : diff;
  return out;
}

}  // namespace kerrkit

namespace kerrkit {

std::vector<ScalarField> commutator_test_fields() {
  std::vector<ScalarField> out;
  out.push_back({"gauss_cos", [](const Coords& x) {
                   const Jet d = x[kR] - 6.0;
                   return exp(d * d * (-0.125)) * cos(x[kTheta]) * cos(x[kT] * 0.3);
                 }});
  out.push_back({"poly", [](const Coords& x) {
                   const Jet c = cos(x[kTheta]);
                   return x[kR] * x[kR] * c * c + x[kT] * x[kR] * 0.1;
                 }});
  out.push_back({"trig_inv_r", [](const Coords& x) {
                   return sin(x[kT] * 0.2) * cos(x[kPhi]) * sin(x[kTheta]) / x[kR];
                 }});
  out.push_back({"exp_m2", [](const Coords& x) {
                   const Jet s = sin(x[kTheta]);
                   return exp(x[kR] * (-0.1)) * cos(x[kPhi] * 2.0) * s * s;
                 }});
  out.push_back({"cubic_wave", [](const Coords& x) {
                   return x[kR] * x[kR] * x[kR] * 0.01 * cos(x[kTheta]) *
                          sin(x[kPhi] + x[kT] * 0.1);
                 }});
  out.push_back({"legendre_p2", [](const Coords& x) {
                   const Jet c = cos(x[kTheta]);
                   return (c * c * 1.5 - 0.5) * exp(x[kR] * x[kR] * (-0.02));
                 }});
  return out;
}

}  // namespace kerrkit
