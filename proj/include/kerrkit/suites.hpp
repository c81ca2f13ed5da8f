#pragma once

// Batch drivers behind the command-line subcommands. Each runner reads its
// keys from a Config, writes a deterministic text report and returns the
// number of failed rows.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kerrkit/config.hpp"
#include "kerrkit/kerr_metric.hpp"
#include "kerrkit/rw_evolver.hpp"
#include "kerrkit/sampler.hpp"

namespace kerrkit {

namespace tol {
inline constexpr double kSigma2 = 1e-12;
inline constexpr double kMetricInverse = 1e-12;
inline constexpr double kRicci = 1e-8;
inline constexpr double kRiemannSymmetry = 1e-12;
inline constexpr double kKilling = 1e-12;
inline constexpr double kFrameInvariant = 1e-10;
inline constexpr double kRoundTrip = 1e-9;
inline constexpr double kBoostComposition = 1e-15;
inline constexpr double kTable = 1e-10;
inline constexpr double kRenormalization = 1e-10;
inline constexpr double kKillingTensor = 1e-8;
inline constexpr double kCommutator = 1e-6;
inline constexpr double kIntegrabilityZero = 1e-12;
inline constexpr double kCrossModule = 1e-10;
inline constexpr double kEll1 = 1e-12;
inline constexpr double kIsothermalIdentity = 1e-12;
inline constexpr double kIsothermal = 1e-8;
inline constexpr double kReducedOperator = 1e-8;
inline constexpr double kEnergyDrift = 1e-6;
}  // namespace tol

struct ReportRow {
  std::string check;
  std::int64_t sample = 0;  // global point index
  int variant = 0;          // transform or test-field index, else 0
  KerrParams params;
  BLPoint point;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass() const { return residual < tolerance; }
};

struct VerifyOptions {
  SampleSpec spec;
  std::string suite = "all";
  int transform_points = 20;   // per (a, m) block
  int commutator_points = 4;   // per (a, m) block
  int sphere_points = 4;       // per (a, m) block, for the GCM checks
  int threads = 0;             // 0: hardware concurrency

  static VerifyOptions from_config(const Config& config);
};

const std::vector<std::string>& suite_names();
// Throws ConfigError for an unknown suite name.
void require_suite(const std::string& name);

// Rows sorted by check id, then sample index, then variant.
std::vector<ReportRow> run_verify(const VerifyOptions& options);
void write_report(std::ostream& out, const std::vector<ReportRow>& rows);
int count_failures(const std::vector<ReportRow>& rows);

// Single-point comparison against the closed-form principal-frame values.
struct TableRow {
  std::string quantity;
  double re_computed = 0.0, im_computed = 0.0;
  double re_kerr = 0.0, im_kerr = 0.0;
  double rel_err = 0.0;
};
std::vector<TableRow> kerr_table(const KerrParams& params, const BLPoint& p);
int run_table(const Config& config, std::ostream& out);

struct EvolveOptions {
  EvolutionConfig run;
  double cfl = 0.5;
  bool refine = false;
  int refine_points = 4097;    // coarsest level of the refinement study
  double refine_t_final = 20.0;

  static EvolveOptions from_config(const Config& config);
};
int run_evolve(const Config& config, std::ostream& out);

int run_modes(const Config& config, std::ostream& out);
int run_transform(const Config& config, std::ostream& out);

std::string format_double(double v);

}  // namespace kerrkit
