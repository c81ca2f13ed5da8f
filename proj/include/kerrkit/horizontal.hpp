#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "kerrkit/diffgeo.hpp"
#include "kerrkit/frames.hpp"
#include "kerrkit/kerr_metric.hpp"

namespace kerrkit {

using cplx = std::complex<double>;

// Horizontal tensors in the (e1, e2) basis of a frame. The horizontal
// orientation is eps_12 = +1.
using Form1 = std::array<double, 2>;
using Form2 = std::array<std::array<double, 2>, 2>;
using CForm1 = std::array<cplx, 2>;
using CForm2 = std::array<std::array<cplx, 2>, 2>;

// (*f)_a = eps_ab f_b and (*u)_ab = eps_a^c u_cb.
Form1 dual(const Form1& f);
Form2 dual(const Form2& u);

// F = f + i *f.
CForm1 complexify(const Form1& f);
CForm2 complexify(const Form2& u);

struct TraceDecomposition {
  double tr = 0.0;   // delta^ab u_ab
  double atr = 0.0;  // eps^ab u_ab
  Form2 hat{};       // symmetric trace-free part
};

TraceDecomposition decompose(const Form2& u);
Form2 recompose(const TraceDecomposition& d);

struct RicciCoefficients {
  Form2 chi{}, chib{};
  TraceDecomposition chi_parts, chib_parts;
  Form1 zeta{}, eta{}, etab{}, xi{}, xib{};
  double omega = 0.0, omegab = 0.0;

  cplx trX, trXb;  // tr chi - i atr chi, and likewise for chib
  CForm2 Xhat{}, Xbhat{};
  CForm1 Z{}, H{}, Hb{}, Xi{}, Xib{};
};

struct CurvatureComponents {
  Form2 alpha{}, alphab{};
  Form1 beta{}, betab{};
  double rho = 0.0, rho_dual = 0.0;

  CForm2 A{}, Ab{};
  CForm1 B{}, Bb{};
  cplx P;
};

RicciCoefficients ricci_coefficients(const KerrParams& params, const FrameField& field,
                                     const BLPoint& p);
RicciCoefficients ricci_coefficients(const FrameDerivatives& fd);

CurvatureComponents curvature_components(const CurvatureAt& curv, const NullFrame& frame);
CurvatureComponents curvature_components(const KerrParams& params, const NullFrame& frame,
                                         const BLPoint& p);

// The complex 1-form (i sin(theta)/|q|, sin(theta)/|q|) in the principal
// horizontal basis.
CForm1 jk_form(const KerrParams& params, const BLPoint& p);

// Closed-form Kerr values of the non-vanishing complex quantities.
struct KerrReference {
  cplx P, trX, trXb;
  CForm1 Z{}, H{}, Hb{};
};

KerrReference kerr_reference(const KerrParams& params, double r, double theta,
                             const CForm1& jk);

// Input minus its Kerr value; first order in any perturbation of Kerr.
struct CheckedQuantities {
  cplx P, trX, trXb;
  CForm1 Z{}, H{}, Hb{};

  double max_abs() const;
};

CheckedQuantities renormalize(const RicciCoefficients& rc, const CurvatureComponents& cc,
                              const KerrParams& params, double r, double theta,
                              const CForm1& jk);

// |nabla_4 (q Jk)| divided by sin(theta)/r, for a frame field whose
// horizontal vectors are those of the principal frame.
double jk_transport_residual(const KerrParams& params, const FrameField& field,
                             const BLPoint& p);

// Gauss-Legendre nodes and weights on [-1, 1].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Quadrature gauss_legendre(int n);

struct Ell1Modes {
  double i0 = 0.0;      // J0 = cos(theta)
  double iplus = 0.0;   // J+ = sin(theta) cos(phi)
  double iminus = 0.0;  // J- = sin(theta) sin(phi)
};

using SphereFunction = std::function<double(double theta, double phi)>;

// Integrals of J h over the Boyer-Lindquist coordinate sphere S(t, r)
// against its induced area element.
Ell1Modes ell1_modes(const SphereFunction& h, const KerrParams& params, double r,
                     int n_theta = 48, int n_phi = 64);

double sphere_area(const KerrParams& params, double r, int n_theta = 48);

// Axisymmetric sphere metric g_thth(theta) dtheta^2 + g_phph(theta) dphi^2.
struct SphereMetric {
  std::function<double(double)> g_thth;
  std::function<double(double)> g_phph;
};

SphereMetric kerr_sphere_metric(const KerrParams& params, double r);
SphereMetric round_sphere_metric(double r);

// Effective isothermal coordinates: theta' with
// g = e^{2 phi} r^2 (dtheta'^2 + sin^2(theta') dphi^2).
class IsothermalFit {
 public:
  IsothermalFit(SphereMetric metric, double r);

  double theta_prime(double theta) const;
  double conformal_factor(double theta) const;  // phi
  double constant() const { return constant_; }
  double radius() const { return r_; }

  // max over interior samples of the relative mismatch between the fitted
  // isothermal form and the input metric, with d theta'/d theta taken by
  // finite differences.
  double residual(int samples = 64) const;

 private:
  double log_stretch(double theta) const;  // int_{pi/2}^{theta} (h - 1/sin)

  SphereMetric metric_;
  double r_;
  double constant_ = 0.0;
  Quadrature rule_;
};

IsothermalFit isothermal_fit(const SphereMetric& metric, double r);

}  // namespace kerrkit
