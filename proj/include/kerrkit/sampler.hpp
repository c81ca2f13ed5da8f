#pragma once

#include <cstdint>
#include <vector>

#include "kerrkit/frames.hpp"
#include "kerrkit/kerr_metric.hpp"

namespace kerrkit {

struct SampleSpec {
  std::uint64_t seed = 20221107;
  int n_points = 500;
  double r_min_factor = 1.05;  // multiple of r_+
  double r_max = 30.0;         // units of m
  double theta_margin = 0.05;
  std::vector<double> a_over_m{0.0, 0.05, 0.3, 0.7};
  std::vector<double> masses{0.5, 1.0, 2.0};
  int n_transforms = 100;

  // Throws ConfigError on r_min_factor < 1.01, theta_margin outside
  // (0, pi/4), non-positive masses or |a/m| >= 1.
  void validate() const;
};

struct SamplePoint {
  KerrParams params;
  BLPoint point;
  int index = 0;  // position within its (a, m) block
};

// Additive-recurrence (Kronecker) sequence on the unit cube driven by
// 64-bit fixed-point arithmetic, so the sequence is bit-identical on every
// platform. The generator constants are the powers of the inverse of the
// plastic-type number solving x^(d+1) = x + 1.
class KroneckerSequence {
 public:
  KroneckerSequence(int dims, std::uint64_t seed);

  int dims() const { return dims_; }
  // Point with index i, coordinates in [0, 1).
  std::vector<double> at(std::uint64_t i) const;

 private:
  int dims_;
  std::vector<std::uint64_t> step_;
  std::vector<std::uint64_t> shift_;
};

std::uint64_t splitmix64(std::uint64_t& state);

// n_points per (a/m, m) pair, blocks ordered by mass then spin.
std::vector<SamplePoint> sample_points(const SampleSpec& spec);

// |f|, |fb| <= 0.3 and lambda in [0.5, 2].
std::vector<FrameTransform> sample_transforms(const SampleSpec& spec);

}  // namespace kerrkit
