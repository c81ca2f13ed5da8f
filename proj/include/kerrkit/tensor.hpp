#pragma once

#include <array>
#include <cstddef>

namespace kerrkit {

// Coordinate index convention, fixed repo-wide: (t, r, theta, phi).
enum Coord : int { kT = 0, kR = 1, kTheta = 2, kPhi = 3 };

template <class T>
using Vec4T = std::array<T, 4>;
template <class T>
using Mat4T = std::array<std::array<T, 4>, 4>;
template <class T>
using Tensor3T = std::array<Mat4T<T>, 4>;
template <class T>
using Tensor4T = std::array<Tensor3T<T>, 4>;

using Vec4 = Vec4T<double>;
using Mat4 = Mat4T<double>;
using Tensor3 = Tensor3T<double>;
using Tensor4 = Tensor4T<double>;

template <class T>
T dot(const Mat4T<T>& g, const Vec4T<T>& x, const Vec4T<T>& y) {
  T s = T(0.0);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) s += g[m][n] * x[m] * y[n];
  return s;
}

template <class T>
Vec4T<T> lower(const Mat4T<T>& g, const Vec4T<T>& x) {
  Vec4T<T> out{};
  for (int m = 0; m < 4; ++m) {
    out[m] = T(0.0);
    for (int n = 0; n < 4; ++n) out[m] += g[m][n] * x[n];
  }
  return out;
}

// Sum of |g_mn x^m y^n|: the rounding scale of dot(g, x, y).
double dot_magnitude(const Mat4& g, const Vec4& x, const Vec4& y);

double determinant(const Mat4& m);
Mat4 inverse(const Mat4& m);
Mat4 multiply(const Mat4& a, const Mat4& b);

}  // namespace kerrkit
