#include "kerrkit/jet.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "kerrkit/error.hpp"

namespace kerrkit {
namespace {

// Monomials of total degree <= kMaxJetOrder in graded order, with
// multiplication pairs sorted by the degree of the product so that a
// product truncated at order n is a prefix of the pair list.
struct Tables {
  std::array<MultiIndex, kJetSize> exponents{};
  std::array<int, kJetSize> degree{};
  std::array<int, 625> lookup{};
  std::array<std::array<int, kJetVars>, kJetSize> raise{};  // alpha + e_i
  std::array<double, kJetSize> factorial{};                 // alpha!
  struct Pair {
    int i, j, k;
  };
  std::vector<Pair> pairs;
  std::array<int, kMaxJetOrder + 2> pair_count{};

  static int key(const MultiIndex& a) {
    return ((a[0] * 5 + a[1]) * 5 + a[2]) * 5 + a[3];
  }

  Tables() {
    lookup.fill(-1);
    int n = 0;
    for (int d = 0; d <= kMaxJetOrder; ++d) {
      for (int a0 = d; a0 >= 0; --a0) {
        for (int a1 = d - a0; a1 >= 0; --a1) {
          for (int a2 = d - a0 - a1; a2 >= 0; --a2) {
            const int a3 = d - a0 - a1 - a2;
            exponents[n] = {a0, a1, a2, a3};
            degree[n] = d;
            lookup[key(exponents[n])] = n;
            ++n;
          }
        }
      }
    }
    for (int k = 0; k < kJetSize; ++k) {
      double f = 1.0;
      for (int v = 0; v < kJetVars; ++v) {
        for (int s = 2; s <= exponents[k][v]; ++s) f *= s;
        MultiIndex up = exponents[k];
        up[v] += 1;
        raise[k][v] = degree[k] < kMaxJetOrder ? lookup[key(up)] : -1;
      }
      factorial[k] = f;
    }
    for (int d = 0; d <= kMaxJetOrder; ++d) {
      for (int i = 0; i < kJetSize; ++i) {
        for (int j = 0; j < kJetSize; ++j) {
          if (degree[i] + degree[j] != d) continue;
          MultiIndex s{};
          for (int v = 0; v < kJetVars; ++v)
            s[v] = exponents[i][v] + exponents[j][v];
          pairs.push_back({i, j, lookup[key(s)]});
        }
      }
      pair_count[d + 1] = static_cast<int>(pairs.size());
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

int index_of(const MultiIndex& alpha) {
  int d = 0;
  for (int v : alpha) {
    if (v < 0) return -1;
    d += v;
  }
  if (d > kMaxJetOrder) return -1;
  return tables().lookup[Tables::key(alpha)];
}

}  // namespace

Jet::Jet(double value) { c_[0] = value; }

Jet Jet::constant(double value, int order) {
  Jet j(value);
  j.order_ = order;
  return j;
}

Jet Jet::variable(double value, int index, int order) {
  if (order < 0 || order > kMaxJetOrder)
    throw ContractError("jet order out of range");
  Jet j(value);
  j.order_ = order;
  if (order >= 1) j.c_[1 + index] = 1.0;
  return j;
}

double Jet::coeff(const MultiIndex& alpha) const {
  const int k = index_of(alpha);
  if (k < 0 || tables().degree[k] > order_)
    throw ContractError("jet coefficient beyond carried order");
  return c_[k];
}

double Jet::derivative(const MultiIndex& alpha) const {
  const int k = index_of(alpha);
  if (k < 0 || tables().degree[k] > order_)
    throw ContractError("jet derivative beyond carried order");
  return c_[k] * tables().factorial[k];
}

double Jet::derivative(int i) const {
  MultiIndex a{};
  a[i] = 1;
  return derivative(a);
}

double Jet::derivative(int i, int j) const {
  MultiIndex a{};
  a[i] += 1;
  a[j] += 1;
  return derivative(a);
}

Jet Jet::partial(int i) const {
  if (order_ < 1) throw ContractError("cannot differentiate an order-0 jet");
  const auto& t = tables();
  Jet out;
  out.order_ = order_ - 1;
  const int n = size_for_order(out.order_);
  for (int k = 0; k < n; ++k) {
    const int up = t.raise[k][i];
    out.c_[k] = (t.exponents[k][i] + 1) * c_[up];
  }
  return out;
}

Jet Jet::truncated(int order) const {
  Jet out = *this;
  if (order >= order_) return out;
  out.order_ = order;
  std::fill(out.c_.begin() + size_for_order(order), out.c_.end(), 0.0);
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  const int n = size_for_order(order_);
  for (int k = 0; k < n; ++k) c_[k] += o.c_[k];
  std::fill(c_.begin() + n, c_.end(), 0.0);
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  const int n = size_for_order(order_);
  for (int k = 0; k < n; ++k) c_[k] -= o.c_[k];
  std::fill(c_.begin() + n, c_.end(), 0.0);
  return *this;
}

Jet& Jet::operator*=(double s) {
  const int n = size_for_order(order_);
  for (int k = 0; k < n; ++k) c_[k] *= s;
  return *this;
}

Jet& Jet::operator*=(const Jet& o) { return *this = *this * o; }
Jet& Jet::operator/=(const Jet& o) { return *this = *this / o; }

Jet operator-(const Jet& x) {
  Jet out = x;
  out *= -1.0;
  return out;
}

Jet operator*(const Jet& a, const Jet& b) {
  const auto& t = tables();
  Jet out;
  out.order_ = std::min(a.order_, b.order_);
  const int n = t.pair_count[out.order_ + 1];
  for (int p = 0; p < n; ++p) {
    const auto& pr = t.pairs[p];
    out.c_[pr.k] += a.c_[pr.i] * b.c_[pr.j];
  }
  return out;
}

Jet Jet::compose(const std::array<double, kMaxJetOrder + 1>& taylor) const {
  // f(x0 + u) = sum_k taylor[k] u^k with u nilpotent of degree order_ + 1.
  Jet u = *this;
  u.c_[0] = 0.0;
  Jet out = Jet::constant(taylor[0], order_);
  Jet power = u;
  for (int k = 1; k <= order_; ++k) {
    Jet term = power;
    term *= taylor[k];
    out += term;
    if (k < order_) power = power * u;
  }
  return out;
}

Jet operator/(const Jet& a, const Jet& b) {
  const double x0 = b.value();
  if (x0 == 0.0) throw DomainError("jet division by zero");
  std::array<double, kMaxJetOrder + 1> t{};
  double inv = 1.0 / x0;
  double p = inv;
  for (int k = 0; k <= kMaxJetOrder; ++k) {
    t[k] = (k % 2 == 0 ? 1.0 : -1.0) * p;
    p *= inv;
  }
  return a * b.compose(t);
}

Jet sin(const Jet& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return x.compose({s, c, -s / 2.0, -c / 6.0, s / 24.0});
}

Jet cos(const Jet& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return x.compose({c, -s, -c / 2.0, s / 6.0, c / 24.0});
}

Jet exp(const Jet& x) {
  const double e = std::exp(x.value());
  return x.compose({e, e, e / 2.0, e / 6.0, e / 24.0});
}

Jet log(const Jet& x) {
  const double x0 = x.value();
  if (x0 <= 0.0) throw DomainError("jet log of non-positive value");
  const double i = 1.0 / x0;
  return x.compose({std::log(x0), i, -i * i / 2.0, i * i * i / 3.0,
                    -i * i * i * i / 4.0});
}

Jet pow(const Jet& x, double p) {
  const double x0 = x.value();
  if (x0 <= 0.0) throw DomainError("jet pow of non-positive value");
  std::array<double, kMaxJetOrder + 1> t{};
  double binom = 1.0;
  for (int k = 0; k <= kMaxJetOrder; ++k) {
    t[k] = binom * std::pow(x0, p - k);
    binom *= (p - k) / (k + 1);
  }
  return x.compose(t);
}

Jet sqrt(const Jet& x) { return pow(x, 0.5); }

}  // namespace kerrkit
