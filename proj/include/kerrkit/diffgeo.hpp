#pragma once

// Tensor calculus on a metric given as a jet-valued function of the
// coordinates. Every derivative is taken by forward-mode Taylor arithmetic,
// so identity residuals carry rounding error only.

#include <functional>
#include <string>

#include "kerrkit/jet.hpp"
#include "kerrkit/kerr_metric.hpp"
#include "kerrkit/tensor.hpp"

namespace kerrkit {

using Coords = Vec4T<Jet>;
using MetricFn = std::function<Mat4T<Jet>(const Coords&)>;
using VectorFieldFn = std::function<Vec4T<Jet>(const Coords&)>;

// Analytic scalar field; evaluated on seeded coordinates it returns the jet
// of the field at the expansion point.
struct ScalarField {
  std::string name;
  std::function<Jet(const Coords&)> fn;

  Jet operator()(const Coords& x) const { return fn(x); }
};

Coords seed_coordinates(const BLPoint& p, int order);
MetricFn kerr_metric_fn(const KerrParams& params);

// Metric, inverse and connection as jets about one point. g carries
// `order` derivatives, the Christoffel symbols one fewer.
struct LocalGeometry {
  int order = 0;
  BLPoint point;
  Mat4T<Jet> g;
  Mat4T<Jet> g_inv;
  Tensor3T<Jet> gamma;       // gamma[mu][nu][lambda] = Gamma^mu_{nu lambda}
  Vec4T<Jet> gamma_trace;    // Gamma^alpha_{alpha lambda}

  Mat4 g_value() const;
  Mat4 g_inv_value() const;
};

LocalGeometry local_geometry(const MetricFn& metric_fn, const BLPoint& p,
                             int order);
LocalGeometry local_geometry(const KerrParams& params, const BLPoint& p,
                             int order);

Mat4T<Jet> inverse(const Mat4T<Jet>& m);

struct CurvatureAt {
  Mat4 g;
  Mat4 g_inv;
  double det = 0.0;
  Tensor3 gamma;
  Tensor4 riemann;       // R_{alpha beta gamma delta}
  Mat4 ricci;            // R_{alpha beta}
  Tensor4 riemann_dual;  // (*R)_{alpha beta gamma delta}, dual on the first pair
};

Tensor3 christoffel(const KerrParams& params, const BLPoint& p);

// Fully covariant Riemann tensor as jets; carries geom.order - 2 orders.
Tensor4T<Jet> riemann_jet(const LocalGeometry& geom);

CurvatureAt curvature(const KerrParams& params, const BLPoint& p);
CurvatureAt curvature(const MetricFn& metric_fn, const BLPoint& p);

// epsilon_{alpha beta gamma delta} with epsilon_{t r theta phi} = +sqrt|det g|.
Tensor4 volume_form(double det);
Tensor4 left_dual(const Tensor4& riemann, const Mat4& g_inv, double det);

double kretschmann(const CurvatureAt& curv);

// Curvature scale m / r^3 used to normalise residuals (1 / r^2 when m = 0).
double curvature_scale(const KerrParams& params, double r);

// Largest Ricci component on the balanced principal frame, divided by
// curvature_scale. Needs a point off the symmetry axis.
double ricci_residual(const KerrParams& params, const BLPoint& p);
double ricci_residual(const KerrParams& params, const BLPoint& p, const CurvatureAt& curv);

// max_beta |D^alpha G_{alpha beta}| / (curvature_scale / r).
double contracted_bianchi_residual(const KerrParams& params, const BLPoint& p);

VectorFieldFn time_translation();
VectorFieldFn axial_rotation();
VectorFieldFn radial_field();

// (L_X g)_{alpha beta} = D_alpha X_beta + D_beta X_alpha.
Mat4 killing_residual(const KerrParams& params, const VectorFieldFn& field,
                      const BLPoint& p);

// nabla_alpha V^alpha for a jet-valued vector field.
// max |L_X g| divided by the largest term entering it.
double killing_residual_normalized(const KerrParams& params, const VectorFieldFn& field,
                                   const BLPoint& p);

Jet divergence(const LocalGeometry& geom, const Vec4T<Jet>& v);

// Box u for a field jet u; returns a jet carrying u.order() - 2 orders.
Jet wave_operator_jet(const LocalGeometry& geom, const Jet& u);

double wave_operator_apply(const KerrParams& params, const ScalarField& psi,
                           const BLPoint& p);

}  // namespace kerrkit
