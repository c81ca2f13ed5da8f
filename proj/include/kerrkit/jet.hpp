#pragma once

// Truncated multivariate Taylor polynomials ("jets") in the four spacetime
// coordinates. A jet of order n carries every partial derivative of total
// degree <= n at the expansion point, exactly up to rounding. Products
// truncate at the smaller order of the operands, so derivative bookkeeping
// is automatic: Jet::partial lowers the order by one.

#include <array>
#include <cstddef>

namespace kerrkit {

inline constexpr int kJetVars = 4;
inline constexpr int kMaxJetOrder = 4;
inline constexpr int kJetSize = 70;  // C(4 + 4, 4)

using MultiIndex = std::array<int, kJetVars>;

class Jet {
 public:
  Jet() = default;
  Jet(double value);  // NOLINT: constants promote implicitly

  static Jet constant(double value, int order);
  // Coordinate x_index expanded about value.
  static Jet variable(double value, int index, int order);

  double value() const { return c_[0]; }
  int order() const { return order_; }

  // Taylor coefficient (d^alpha f / alpha!) and the plain partial derivative.
  double coeff(const MultiIndex& alpha) const;
  double derivative(const MultiIndex& alpha) const;
  double derivative(int i) const;
  double derivative(int i, int j) const;

  Jet partial(int i) const;
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator*=(double s);

  friend Jet operator-(const Jet& x);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }

  // Apply an analytic function given its Taylor coefficients f^(k)(x0)/k!
  // for k = 0..order().
  Jet compose(const std::array<double, kMaxJetOrder + 1>& taylor) const;

  static constexpr int size_for_order(int order) {
    constexpr std::array<int, kMaxJetOrder + 1> sizes{1, 5, 15, 35, 70};
    return sizes[static_cast<std::size_t>(order)];
  }

 private:
  std::array<double, kJetSize> c_{};
  int order_ = kMaxJetOrder;
};

Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sqrt(const Jet& x);
Jet pow(const Jet& x, double p);

// Value part for generic code that must branch on magnitudes.
inline double scalar_value(double x) { return x; }
inline double scalar_value(const Jet& x) { return x.value(); }

}  // namespace kerrkit
