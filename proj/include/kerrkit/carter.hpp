#pragma once

#include <vector>

#include "kerrkit/diffgeo.hpp"
#include "kerrkit/frames.hpp"
#include "kerrkit/kerr_metric.hpp"

namespace kerrkit {

struct CarterTensorAt {
  Mat4 lower{};  // C_{alpha beta}
  Mat4 upper{};  // C^{alpha beta}
};

// C = -a^2 cos^2(theta) g + |q|^2 (e1' e1' + e2' e2'), with e' the metric
// duals of the principal horizontal vectors.
template <class T>
Mat4T<T> carter_components(const KerrParams& params, const T& r, const T& theta) {
  using std::cos;
  const Mat4T<T> g = kerr_metric_components<T>(params, r, theta);
  const FrameT<T> fr = principal_frame_components<T>(params, r, theta);
  const Vec4T<T> e1 = lower(g, fr.e1);
  const Vec4T<T> e2 = lower(g, fr.e2);
  const T c = cos(theta);
  const T ac2 = params.a * params.a * c * c;
  const T q2 = r * r + ac2;
  Mat4T<T> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out[i][j] = q2 * (e1[i] * e1[j] + e2[i] * e2[j]) - ac2 * g[i][j];
  return out;
}

using TensorFieldFn = std::function<Mat4T<Jet>(const Coords&)>;

TensorFieldFn carter_field(const KerrParams& params);

CarterTensorAt carter_tensor(const KerrParams& params, const BLPoint& p);

// max |D_(gamma C_alpha beta)| over components in the balanced principal frame,
// divided by max |C| in the same frame times 1/r.
double killing_tensor_residual(const KerrParams& params, const BLPoint& p);
double killing_tensor_residual(const KerrParams& params, const TensorFieldFn& tensor,
                               const BLPoint& p);

// nabla_alpha (C^{alpha beta} d_beta u) as a jet; `upper` must carry at
// least u.order() - 1 orders.
Jet carter_operator_jet(const LocalGeometry& geom, const Mat4T<Jet>& upper, const Jet& u);

double carter_operator_apply(const KerrParams& params, const ScalarField& psi,
                             const BLPoint& p);

struct CommutatorResult {
  double carter_box = 0.0;  // C(Box psi)
  double box_carter = 0.0;  // Box(C psi)
  double scale = 0.0;       // largest intermediate term
  double residual = 0.0;    // |difference| / scale
};

CommutatorResult commutator_residual(const KerrParams& params, const ScalarField& psi,
                                     const BLPoint& p);

// Smooth fields exercising t, r, theta and phi dependence.
std::vector<ScalarField> commutator_test_fields();

}  // namespace kerrkit
