#include "kerrkit/sampler.hpp"

#include <cmath>
#include <numbers>

#include "kerrkit/error.hpp"

namespace kerrkit {
namespace {

// floor(2^64 * frac(phi_d^-k)) for d = 4 and d = 5.
constexpr std::uint64_t kStep4[] = {15802862336838869349ULL, 13537915256980136287ULL,
                                    11597591980405560693ULL, 9935365762805847688ULL};
constexpr std::uint64_t kStep5[] = {16256589112218404403ULL, 14326468048101086769ULL,
                                    12625507436796677563ULL, 11126499392691310822ULL,
                                    9805466382662095917ULL};

constexpr double kMaxFormNorm = 0.3;

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

KroneckerSequence::KroneckerSequence(int dims, std::uint64_t seed) : dims_(dims) {
  if (dims == 4)
    step_.assign(std::begin(kStep4), std::end(kStep4));
  else if (dims == 5)
    step_.assign(std::begin(kStep5), std::end(kStep5));
  else
    throw ContractError("Kronecker sequence supports 4 or 5 dimensions");
  std::uint64_t state = seed;
  for (int k = 0; k < dims; ++k) shift_.push_back(splitmix64(state));
}

std::vector<double> KroneckerSequence::at(std::uint64_t i) const {
  std::vector<double> out(dims_);
  for (int k = 0; k < dims_; ++k) {
    const std::uint64_t x = shift_[k] + i * step_[k];  // wraps mod 2^64
    out[k] = static_cast<double>(x >> 11) * 0x1.0p-53;
  }
  return out;
}

void SampleSpec::validate() const {
  if (n_points < 1) throw ConfigError("n_points must be >= 1");
  if (!(r_min_factor >= 1.01)) throw ConfigError("r_min_factor must be >= 1.01");
  if (!(theta_margin > 0.0 && theta_margin < std::numbers::pi / 4))
    throw ConfigError("theta_margin must lie in (0, pi/4)");
  if (masses.empty() || a_over_m.empty()) throw ConfigError("empty parameter list");
  for (double m : masses)
    if (!(m > 0.0)) throw ConfigError("masses must be positive");
  for (double s : a_over_m)
    if (!(std::abs(s) < 1.0)) throw ConfigError("|a/m| must be < 1");
  if (n_transforms < 0) throw ConfigError("n_transforms must be >= 0");
}

std::vector<SamplePoint> sample_points(const SampleSpec& spec) {
  spec.validate();
  std::vector<SamplePoint> out;
  std::uint64_t block_seed = spec.seed;
  for (double m : spec.masses) {
    for (double s : spec.a_over_m) {
      const KerrParams params = KerrParams::make(s * m, m);
      const double r_lo = spec.r_min_factor * horizon_radii(params).r_plus;
      const double r_hi = std::max(spec.r_max * m, 1.5 * r_lo);
      const KroneckerSequence seq(4, splitmix64(block_seed));
      for (int i = 0; i < spec.n_points; ++i) {
        const auto u = seq.at(static_cast<std::uint64_t>(i));
        BLPoint p;
        p.r = r_lo + (r_hi - r_lo) * u[0] * u[0];
        p.theta = spec.theta_margin + (std::numbers::pi - 2.0 * spec.theta_margin) * u[1];
        p.phi = 2.0 * std::numbers::pi * u[2];
        p.t = 50.0 * m * u[3];
        out.push_back({params, p, i});
      }
    }
  }
  return out;
}

std::vector<FrameTransform> sample_transforms(const SampleSpec& spec) {
  spec.validate();
  std::uint64_t state = spec.seed ^ 0x5DEECE66DULL;
  const KroneckerSequence seq(5, splitmix64(state));
  const double half_side = kMaxFormNorm / std::numbers::sqrt2;
  std::vector<FrameTransform> out;
  for (int i = 0; i < spec.n_transforms; ++i) {
    const auto u = seq.at(static_cast<std::uint64_t>(i));
    FrameTransform x;
    x.f = {half_side * (2.0 * u[0] - 1.0), half_side * (2.0 * u[1] - 1.0)};
    x.fb = {half_side * (2.0 * u[2] - 1.0), half_side * (2.0 * u[3] - 1.0)};
    x.lambda = 0.5 + 1.5 * u[4];
    out.push_back(x);
  }
  return out;
}

}  // namespace kerrkit
