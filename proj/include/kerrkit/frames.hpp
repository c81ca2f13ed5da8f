#pragma once

#include <array>
#include <functional>

#include "kerrkit/diffgeo.hpp"
#include "kerrkit/kerr_metric.hpp"
#include "kerrkit/tensor.hpp"

namespace kerrkit {

// Frame slots in the order used for frame-indexed arrays.
enum FrameSlot : int { kE1 = 0, kE2 = 1, kE3 = 2, kE4 = 3 };

// Contravariant BL components of (e4, e3, e1, e2).
template <class T>
struct FrameT {
  Vec4T<T> e4{};
  Vec4T<T> e3{};
  Vec4T<T> e1{};
  Vec4T<T> e2{};

  const Vec4T<T>& operator[](int slot) const {
    switch (slot) {
      case kE1: return e1;
      case kE2: return e2;
      case kE3: return e3;
      default: return e4;
    }
  }
  Vec4T<T>& operator[](int slot) {
    return const_cast<Vec4T<T>&>(std::as_const(*this)[slot]);
  }
};

using NullFrame = FrameT<double>;
using FrameField = std::function<FrameT<Jet>(const Coords&)>;

// Horizontal 1-forms f, fb are components in the (e1, e2) basis of the frame
// being transformed.
struct FrameTransform {
  std::array<double, 2> f{};
  std::array<double, 2> fb{};
  double lambda = 1.0;

  static FrameTransform boost(double lambda) { return {{}, {}, lambda}; }
};

template <class T>
FrameT<T> principal_frame_components(const KerrParams& params, const T& r,
                                     const T& theta) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const double a = params.a, m = params.m;
  const T s = sin(theta);
  const T c = cos(theta);
  const T q2 = r * r + a * a * c * c;
  const T qa = sqrt(q2);
  const T delta = r * r + a * a - 2.0 * m * r;
  const T r2a2 = r * r + a * a;
  const T zero = T(0.0) * r;
  FrameT<T> fr;
  fr.e4 = {r2a2 / q2, delta / q2, zero, a / q2};
  fr.e3 = {r2a2 / delta, zero - 1.0, zero, a / delta};
  fr.e1 = {zero, zero, 1.0 / qa, zero};
  fr.e2 = {a * s / qa, zero, zero, 1.0 / (qa * s)};
  return fr;
}

// The general null-frame transformation; L is the type of lambda so that a
// point-dependent rescaling can be applied to a jet-valued frame.
template <class T, class L>
FrameT<T> transform_frame_components(const FrameT<T>& fr,
                                     const std::array<double, 2>& f,
                                     const std::array<double, 2>& fb,
                                     const L& lambda) {
  const double f2 = f[0] * f[0] + f[1] * f[1];
  const double fb2 = fb[0] * fb[0] + fb[1] * fb[1];
  const double ffb = f[0] * fb[0] + f[1] * fb[1];
  const std::array<const Vec4T<T>*, 2> eh{&fr.e1, &fr.e2};
  FrameT<T> out;
  for (int mu = 0; mu < 4; ++mu) {
    T hf = f[0] * fr.e1[mu] + f[1] * fr.e2[mu];
    T hfb = fb[0] * fr.e1[mu] + fb[1] * fr.e2[mu];
    out.e4[mu] = lambda * (fr.e4[mu] + hf + (0.25 * f2) * fr.e3[mu]);
    out.e3[mu] =
        (1.0 / lambda) *
        ((1.0 + 0.5 * ffb + f2 * fb2 / 16.0) * fr.e3[mu] + hfb + (0.25 * fb2) * hf +
         (0.25 * fb2) * fr.e4[mu]);
    for (int a = 0; a < 2; ++a) {
      T v = (*eh[a])[mu] + (0.5 * fb[a]) * hf + (0.5 * fb[a]) * fr.e4[mu] +
            (0.5 * f[a] + f2 * fb[a] / 8.0) * fr.e3[mu];
      (a == 0 ? out.e1 : out.e2)[mu] = v;
    }
  }
  return out;
}

NullFrame principal_frame(const KerrParams& params, const BLPoint& p);
NullFrame transform_frame(const NullFrame& frame, const FrameTransform& x);
// Principal frame boosted by sqrt(|q|^2 / Delta) so that e3 and e4 carry
// comparable magnitudes; used to measure tensors componentwise.
NullFrame balanced_principal_frame(const KerrParams& params, const BLPoint& p);
NullFrame pg_normalized_frame(const KerrParams& params, const BLPoint& p);

FrameField principal_frame_field(const KerrParams& params);
FrameField pg_frame_field(const KerrParams& params);
FrameField transformed_frame_field(FrameField base, const FrameTransform& x);
NullFrame evaluate_frame(const FrameField& field, const BLPoint& p);

// The (f, fb, lambda) family omits rotations of (e1, e2), so it is not closed
// under inversion: an exact inverse exists only when f and fb are parallel.
// Otherwise the best round trip leaves a rotation by roughly (f ^ fb) / 2.
struct InverseFit {
  FrameTransform inverse;
  double residual = 0.0;  // max component error of the round trip on a unit frame
};
// Least-squares inverse by Gauss-Newton. Throws ContractError outside
// |f||fb| < 1.
InverseFit fit_inverse_transform(const FrameTransform& x);

// As fit_inverse_transform, but throws ConvergenceError unless the round trip
// closes to 1e-12.
FrameTransform invert_transform(const FrameTransform& x);

// Inverse completed by a horizontal rotation: rotate_horizontal(transform_frame(
// transform_frame(F, x), inverse), rotation) == F.
struct CompletedInverse {
  FrameTransform inverse;
  double rotation = 0.0;
};
CompletedInverse invert_transform_completed(const FrameTransform& x);
// (e1, e2) -> (cos t e1 + sin t e2, -sin t e1 + cos t e2).
NullFrame rotate_horizontal(const NullFrame& frame, double angle);

// Residuals of the six null-frame relations, each divided by the
// magnitude of the terms in its inner product.
struct FrameInvariants {
  double e4_null = 0.0;     // g(e4, e4)
  double e3_null = 0.0;     // g(e3, e3)
  double pair = 0.0;        // g(e3, e4) + 2
  double horizontal = 0.0;  // g(e_a, e_b) - delta_ab
  double e3_orth = 0.0;     // g(e_a, e3)
  double e4_orth = 0.0;     // g(e_a, e4)

  double max() const;
};

FrameInvariants frame_invariants(const Mat4& g, const NullFrame& frame);

// Frame at p together with every covariant derivative D_{e_A} e_B.
struct FrameDerivatives {
  NullFrame frame;
  Mat4 g{};
  std::array<std::array<Vec4, 4>, 4> cov{};  // cov[A][B], A,B in FrameSlot order
  std::array<std::array<Vec4, 4>, 4> partial{};  // e_A(e_B^mu)

  double inner(const Vec4& x, const Vec4& y) const { return dot(g, x, y); }
};

FrameDerivatives frame_derivatives(const KerrParams& params, const FrameField& field,
                                   const BLPoint& p);

struct IntegrabilityDefect {
  double d3 = 0.0;  // -1/2 g([e1, e2], e4)
  double d4 = 0.0;  // -1/2 g([e1, e2], e3)
};

IntegrabilityDefect integrability_defect(const FrameField& field,
                                         const KerrParams& params,
                                         const BLPoint& p);

}  // namespace kerrkit
