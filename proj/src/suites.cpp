#include "kerrkit/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "kerrkit/carter.hpp"
#include "kerrkit/diffgeo.hpp"
#include "kerrkit/error.hpp"
#include "kerrkit/frames.hpp"
#include "kerrkit/horizontal.hpp"

namespace kerrkit {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::set<std::string> kSampleKeys{"seed",         "n_points", "r_min_factor",
                                        "r_max",        "theta_margin", "a_over_m",
                                        "masses",       "n_transforms"};

const Config::Schema& command_schema() {
  static const Config::Schema schema = [] {
    std::set<std::string> verify = kSampleKeys;
    verify.insert({"suite", "transform_points", "commutator_points", "sphere_points", "threads"});
    return Config::Schema{
        {"verify", verify},
        {"table", {"a", "m", "t", "r", "theta", "phi"}},
        {"evolve",
         {"ell", "m", "rstar_min", "rstar_max", "n_points", "cfl", "t_final", "bc",
          "pulse_center", "pulse_width", "pulse_amplitude", "pulse_outgoing", "r_obs",
          "sample_every", "local_r_min", "local_r_max", "tail_start", "refine", "refine_points",
          "refine_t_final"}},
        {"modes", {"a", "m", "r", "field", "n_theta", "n_phi", "isothermal"}},
        {"transform", {"a", "m", "t", "r", "theta", "phi", "f1", "f2", "fb1", "fb2", "lambda"}},
    };
  }();
  return schema;
}

SampleSpec sample_spec_from(const Config::View& v) {
  SampleSpec s;
  s.seed = v.get_uint64("seed", s.seed);
  s.n_points = v.get_int("n_points", s.n_points);
  s.r_min_factor = v.get_double("r_min_factor", s.r_min_factor);
  s.r_max = v.get_double("r_max", s.r_max);
  s.theta_margin = v.get_double("theta_margin", s.theta_margin);
  s.a_over_m = v.get_list("a_over_m", s.a_over_m);
  s.masses = v.get_list("masses", s.masses);
  s.n_transforms = v.get_int("n_transforms", s.n_transforms);
  s.validate();
  return s;
}

// Largest per-vector relative difference between two frames.
double frame_distance(const NullFrame& x, const NullFrame& ref) {
  double worst = 0.0;
  for (int slot = 0; slot < 4; ++slot) {
    double diff = 0.0, scale = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      diff = std::max(diff, std::abs(x[slot][mu] - ref[slot][mu]));
      scale = std::max(scale, std::abs(ref[slot][mu]));
    }
    worst = std::max(worst, diff / scale);
  }
  return worst;
}

double max_abs(const CForm1& f) { return std::max(std::abs(f[0]), std::abs(f[1])); }

struct PrincipalData {
  RicciCoefficients rc;
  CurvatureComponents cc;
  CForm1 jk{};
  KerrReference ref;
};

PrincipalData principal_data(const KerrParams& params, const BLPoint& p,
                             const CurvatureAt& curv) {
  PrincipalData d;
  const FrameDerivatives fd = frame_derivatives(params, principal_frame_field(params), p);
  d.rc = ricci_coefficients(fd);
  d.cc = curvature_components(curv, fd.frame);
  d.jk = jk_form(params, p);
  d.ref = kerr_reference(params, p.r, p.theta, d.jk);
  return d;
}

// Closed-form rows use relative error; one-form rows are measured against
// max(|reference|, r |P|) so that they stay meaningful where the reference
// vanishes (a = 0). Vanishing rows are measured against |P|.
std::vector<TableRow> table_rows(const PrincipalData& d, double r) {
  std::vector<TableRow> rows;
  const double p_abs = std::abs(d.ref.P);
  auto scalar = [&](const std::string& name, cplx got, cplx want) {
    rows.push_back({name, got.real(), got.imag(), want.real(), want.imag(),
                    std::abs(got - want) / std::abs(want)});
  };
  auto form1 = [&](const std::string& name, const CForm1& got, const CForm1& want) {
    const double scale = std::max(max_abs(want), r * p_abs);
    for (int i = 0; i < 2; ++i)
      rows.push_back({name + "_" + std::to_string(i + 1), got[i].real(), got[i].imag(),
                      want[i].real(), want[i].imag(), std::abs(got[i] - want[i]) / scale});
  };
  auto zero1 = [&](const std::string& name, const CForm1& got) {
    for (int i = 0; i < 2; ++i)
      rows.push_back({name + "_" + std::to_string(i + 1), got[i].real(), got[i].imag(), 0.0,
                      0.0, std::abs(got[i]) / p_abs});
  };
  auto zero2 = [&](const std::string& name, const CForm2& got) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        rows.push_back({name + "_" + std::to_string(i + 1) + std::to_string(j + 1),
                        got[i][j].real(), got[i][j].imag(), 0.0, 0.0,
                        std::abs(got[i][j]) / p_abs});
  };
  scalar("P", d.cc.P, d.ref.P);
  scalar("trX", d.rc.trX, d.ref.trX);
  scalar("trXb", d.rc.trXb, d.ref.trXb);
  form1("Z", d.rc.Z, d.ref.Z);
  form1("H", d.rc.H, d.ref.H);
  form1("Hb", d.rc.Hb, d.ref.Hb);
  zero2("A", d.cc.A);
  zero2("Ab", d.cc.Ab);
  zero1("B", d.cc.B);
  zero1("Bb", d.cc.Bb);
  zero2("Xhat", d.rc.Xhat);
  zero2("Xbhat", d.rc.Xbhat);
  return rows;
}

bool is_vanishing_row(const std::string& q) {
  for (const char* prefix : {"A_", "Ab_", "B_", "Bb_", "Xhat_", "Xbhat_"})
    if (q.rfind(prefix, 0) == 0) return true;
  return false;
}

Tensor4 project(const Tensor4& t, const NullFrame& fr) {
  Tensor4 a{}, b{};
  for (int A = 0; A < 4; ++A)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          double v = 0.0;
          for (int i = 0; i < 4; ++i) v += fr[A][i] * t[i][j][k][l];
          a[A][j][k][l] = v;
        }
  for (int A = 0; A < 4; ++A)
    for (int B = 0; B < 4; ++B)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          double v = 0.0;
          for (int j = 0; j < 4; ++j) v += fr[B][j] * a[A][j][k][l];
          b[A][B][k][l] = v;
        }
  for (int A = 0; A < 4; ++A)
    for (int B = 0; B < 4; ++B)
      for (int C = 0; C < 4; ++C)
        for (int l = 0; l < 4; ++l) {
          double v = 0.0;
          for (int k = 0; k < 4; ++k) v += fr[C][k] * b[A][B][k][l];
          a[A][B][C][l] = v;
        }
  for (int A = 0; A < 4; ++A)
    for (int B = 0; B < 4; ++B)
      for (int C = 0; C < 4; ++C)
        for (int D = 0; D < 4; ++D) {
          double v = 0.0;
          for (int l = 0; l < 4; ++l) v += fr[D][l] * a[A][B][C][l];
          b[A][B][C][D] = v;
        }
  return b;
}

// Pair antisymmetry, pair exchange and the first Bianchi identity, relative
// to the largest component.
double riemann_symmetry_residual(const Tensor4& r) {
  double scale = 0.0, worst = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int g = 0; g < 4; ++g)
        for (int d = 0; d < 4; ++d) {
          const double v = r[a][b][g][d];
          scale = std::max(scale, std::abs(v));
          worst = std::max({worst, std::abs(v + r[b][a][g][d]), std::abs(v + r[a][b][d][g]),
                            std::abs(v - r[g][d][a][b]),
                            std::abs(v + r[a][g][d][b] + r[a][d][b][g])});
        }
  return scale > 0.0 ? worst / scale : worst;
}

struct Context {
  const VerifyOptions& opt;
  std::vector<FrameTransform> transforms;
  std::vector<InverseFit> inverses;
  std::vector<CompletedInverse> completed;
  std::vector<ScalarField> fields;
  bool want(const char* suite) const { return opt.suite == "all" || opt.suite == suite; }
};

class RowSink {
 public:
  RowSink(const SamplePoint& sp, std::int64_t sample, std::vector<ReportRow>& out)
      : sp_(sp), sample_(sample), out_(out) {}

  template <class F>
  void add(const char* check, double tolerance, int variant, F&& compute) {
    double residual = kNaN;
    try {
      residual = compute();
    } catch (const std::exception&) {
      residual = kNaN;
    }
    out_.push_back({check, sample_, variant, sp_.params, sp_.point, residual, tolerance});
  }

 private:
  const SamplePoint& sp_;
  std::int64_t sample_;
  std::vector<ReportRow>& out_;
};

void point_rows(const Context& ctx, const SamplePoint& sp, std::int64_t sample,
                std::vector<ReportRow>& out) {
  const KerrParams& params = sp.params;
  const BLPoint& p = sp.point;
  const VerifyOptions& opt = ctx.opt;
  RowSink sink(sp, sample, out);

  if (ctx.want("metric")) {
    sink.add("metric.inverse", tol::kMetricInverse, 0, [&] {
      const MetricAt mt = metric(params, p);
      const Mat4 prod = multiply(mt.g, mt.g_inv);
      double worst = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          worst = std::max(worst, std::abs(prod[i][j] - (i == j ? 1.0 : 0.0)));
      return worst;
    });
    sink.add("metric.sigma2_identity", tol::kSigma2, 0, [&] {
      const AuxScalars aux = aux_scalars(params, p.r, p.theta);
      return std::abs(aux.sigma2 - sigma2_alternate(params, p.r, p.theta)) / aux.sigma2;
    });
  }

  const bool need_curvature = ctx.want("ricci") || ctx.want("table") ||
                              ctx.want("renorm") || ctx.want("integrability");
  CurvatureAt curv{};
  bool curv_ok = false;
  if (need_curvature) {
    try {
      curv = curvature(params, p);
      curv_ok = true;
    } catch (const std::exception&) {
    }
  }
  auto need_curv = [&] {
    if (!curv_ok) throw DomainError("curvature unavailable");
  };

  if (ctx.want("ricci")) {
    sink.add("ricci.vacuum", tol::kRicci, 0, [&] {
      need_curv();
      return ricci_residual(params, p, curv);
    });
    sink.add("ricci.riemann_symmetry", tol::kRiemannSymmetry, 0, [&] {
      need_curv();
      return riemann_symmetry_residual(project(curv.riemann, balanced_principal_frame(params, p)));
    });
  }

  if (ctx.want("killing")) {
    sink.add("killing.T", tol::kKilling, 0,
             [&] { return killing_residual_normalized(params, time_translation(), p); });
    sink.add("killing.Z", tol::kKilling, 0,
             [&] { return killing_residual_normalized(params, axial_rotation(), p); });
  }

  if (ctx.want("frames")) {
    sink.add("frames.principal", tol::kFrameInvariant, 0, [&] {
      return frame_invariants(metric(params, p).g, principal_frame(params, p)).max();
    });
    sink.add("frames.pg", tol::kFrameInvariant, 0, [&] {
      return frame_invariants(metric(params, p).g, pg_normalized_frame(params, p)).max();
    });
    if (sp.index < opt.transform_points) {
      const MetricAt mt = metric(params, p);
      const NullFrame base = principal_frame(params, p);
      const int n = static_cast<int>(ctx.transforms.size());
      for (int k = 0; k < n; ++k)
        sink.add("frames.transform", tol::kFrameInvariant, k, [&] {
          return frame_invariants(mt.g, transform_frame(base, ctx.transforms[k])).max();
        });
      for (int k = 0; k < n; ++k)
        sink.add("frames.roundtrip", tol::kRoundTrip, k, [&] {
          const NullFrame there = transform_frame(base, ctx.transforms[k]);
          return frame_distance(transform_frame(there, ctx.inverses[k].inverse), base);
        });
      for (int k = 0; k < n; ++k)
        sink.add("frames.roundtrip_completed", tol::kRoundTrip, k, [&] {
          const CompletedInverse& inv = ctx.completed[k];
          const NullFrame there = transform_frame(base, ctx.transforms[k]);
          return frame_distance(
              rotate_horizontal(transform_frame(there, inv.inverse), inv.rotation), base);
        });
      sink.add("frames.boost_composition", tol::kBoostComposition, 0, [&] {
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
          const double l1 = ctx.transforms[k].lambda;
          const double l2 = ctx.transforms[(k + 1) % n].lambda;
          const NullFrame two = transform_frame(
              transform_frame(base, FrameTransform::boost(l1)), FrameTransform::boost(l2));
          const NullFrame one = transform_frame(base, FrameTransform::boost(l1 * l2));
          worst = std::max(worst, frame_distance(two, one));
        }
        return worst;
      });
    }
  }

  const bool need_principal =
      ctx.want("table") || ctx.want("renorm") || ctx.want("integrability");
  PrincipalData pd;
  bool pd_ok = false;
  if (need_principal && curv_ok) {
    try {
      pd = principal_data(params, p, curv);
      pd_ok = true;
    } catch (const std::exception&) {
    }
  }
  auto need_pd = [&] {
    if (!pd_ok) throw DomainError("principal frame data unavailable");
  };

  if (ctx.want("table")) {
    std::vector<TableRow> rows;
    if (pd_ok) rows = table_rows(pd, p.r);
    auto worst = [&](bool vanishing) {
      need_pd();
      double w = 0.0;
      for (const TableRow& row : rows)
        if (is_vanishing_row(row.quantity) == vanishing) {
          if (std::isnan(row.rel_err)) return kNaN;
          w = std::max(w, row.rel_err);
        }
      return w;
    };
    sink.add("table.closed_form", tol::kTable, 0, [&] { return worst(false); });
    sink.add("table.vanishing", tol::kTable, 0, [&] { return worst(true); });
  }

  if (ctx.want("renorm")) {
    sink.add("renorm.zero", tol::kRenormalization, 0, [&] {
      need_pd();
      return renormalize(pd.rc, pd.cc, params, p.r, p.theta, pd.jk).max_abs() /
             std::abs(pd.ref.P);
    });
  }

  if (ctx.want("carter")) {
    sink.add("carter.killing_tensor", tol::kKillingTensor, 0,
             [&] { return killing_tensor_residual(params, p); });
    if (sp.index < opt.commutator_points)
      for (int k = 0; k < static_cast<int>(ctx.fields.size()); ++k)
        sink.add("carter.commutator", tol::kCommutator, k,
                 [&] { return commutator_residual(params, ctx.fields[k], p).residual; });
  }

  if (ctx.want("integrability")) {
    IntegrabilityDefect defect{kNaN, kNaN};
    try {
      defect = integrability_defect(principal_frame_field(params), params, p);
    } catch (const std::exception&) {
    }
    sink.add("integrability.cross_module", tol::kCrossModule, 0, [&] {
      need_pd();
      const double scale = std::abs(pd.rc.trX) + std::abs(pd.rc.trXb);
      return std::max(std::abs(defect.d3 - 0.5 * pd.rc.chi_parts.atr),
                      std::abs(defect.d4 - 0.5 * pd.rc.chib_parts.atr)) /
             scale;
    });
    if (params.a == 0.0) {
      sink.add("integrability.schwarzschild_zero", tol::kIntegrabilityZero, 0, [&] {
        need_pd();
        return p.r * std::max({std::abs(pd.rc.chi_parts.atr), std::abs(pd.rc.chib_parts.atr),
                               std::abs(defect.d3), std::abs(defect.d4)});
      });
    } else if (std::abs(std::cos(p.theta)) > 0.1) {
      // Off the equator and the axis the defect is nonzero; compare it with
      // the closed form implied by trX and trXb.
      sink.add("integrability.kerr_nonzero", tol::kCrossModule, 0, [&] {
        need_pd();
        const double want3 = -0.5 * pd.ref.trX.imag();
        const double want4 = -0.5 * pd.ref.trXb.imag();
        if (want3 == 0.0 || want4 == 0.0) return kNaN;
        return std::max(std::abs(defect.d3 / want3 - 1.0), std::abs(defect.d4 / want4 - 1.0));
      });
    }
  }

  if (ctx.want("gcm") && sp.index < opt.sphere_points) {
    sink.add("gcm.ell1_constant", tol::kEll1, 0, [&] {
      const Ell1Modes modes = ell1_modes([](double, double) { return 1.0; }, params, p.r);
      return std::max({std::abs(modes.i0), std::abs(modes.iplus), std::abs(modes.iminus)}) /
             sphere_area(params, p.r);
    });
    const bool round = params.a == 0.0;
    std::optional<IsothermalFit> fit;
    try {
      fit.emplace(isothermal_fit(kerr_sphere_metric(params, p.r), p.r));
    } catch (const std::exception&) {
    }
    auto need_fit = [&] {
      if (!fit) throw ConvergenceError("isothermal fit failed");
    };
    if (round)
      sink.add("gcm.isothermal_identity", tol::kIsothermalIdentity, 0, [&] {
        need_fit();
        double worst = 0.0;
        for (int k = 1; k < 64; ++k) {
          const double th = std::numbers::pi * k / 64.0;
          worst = std::max({worst, std::abs(fit->theta_prime(th) - th),
                            std::abs(fit->conformal_factor(th))});
        }
        return worst;
      });
    sink.add("gcm.isothermal_residual", tol::kIsothermal, 0, [&] {
      need_fit();
      return fit->residual();
    });
  }

  if (ctx.want("rw") && params.a == 0.0 && params.m > 0.0 && sp.index < opt.sphere_points)
    for (int ell = 0; ell <= 3; ++ell)
      sink.add("rw.reduced_operator", tol::kReducedOperator, ell,
               [&] { return reduced_operator_residual(ell, params.m, p); });
}

template <class F>
void parallel_for(int n, int threads, F&& body) {
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(1, n));
  std::atomic<int> next{0};
  auto run = [&] {
    for (int i = next++; i < n; i = next++) body(i);
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

}  // namespace

VerifyOptions VerifyOptions::from_config(const Config& config) {
  const Config::View v = config.view("verify", command_schema());
  VerifyOptions o;
  o.spec = sample_spec_from(v);
  o.suite = v.get_string("suite", o.suite);
  require_suite(o.suite);
  o.transform_points = v.get_int("transform_points", o.transform_points);
  o.commutator_points = v.get_int("commutator_points", o.commutator_points);
  o.sphere_points = v.get_int("sphere_points", o.sphere_points);
  o.threads = v.get_int("threads", o.threads);
  if (o.transform_points < 0 || o.commutator_points < 0 || o.sphere_points < 0 || o.threads < 0)
    throw ConfigError("point counts and thread counts must be non-negative");
  return o;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"all",    "metric", "ricci",         "killing",
                                              "frames", "table",  "renorm",        "carter",
                                              "integrability",    "gcm",           "rw"};
  return names;
}

void require_suite(const std::string& name) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw ConfigError("unknown suite '" + name + "'");
}

std::vector<ReportRow> run_verify(const VerifyOptions& options) {
  options.spec.validate();
  require_suite(options.suite);
  Context ctx{options, {}, {}, {}, {}};
  const std::vector<SamplePoint> points = sample_points(options.spec);
  if (ctx.want("frames")) {
    ctx.transforms = sample_transforms(options.spec);
    const FrameTransform bad{{kNaN, kNaN}, {kNaN, kNaN}, kNaN};
    for (const FrameTransform& x : ctx.transforms) {
      try {
        ctx.inverses.push_back(fit_inverse_transform(x));
      } catch (const std::exception&) {
        ctx.inverses.push_back({bad, kNaN});
      }
      try {
        ctx.completed.push_back(invert_transform_completed(x));
      } catch (const std::exception&) {
        ctx.completed.push_back({bad, kNaN});
      }
    }
  }
  if (ctx.want("carter")) ctx.fields = commutator_test_fields();

  std::vector<std::vector<ReportRow>> per_point(points.size());
  parallel_for(static_cast<int>(points.size()), options.threads, [&](int i) {
    point_rows(ctx, points[i], i, per_point[i]);
  });
  std::vector<ReportRow> rows;
  for (auto& chunk : per_point)
    for (auto& row : chunk) rows.push_back(std::move(row));
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& x, const ReportRow& y) {
    if (x.check != y.check) return x.check < y.check;
    if (x.sample != y.sample) return x.sample < y.sample;
    return x.variant < y.variant;
  });
  return rows;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_report(std::ostream& out, const std::vector<ReportRow>& rows) {
  std::string text = "check,sample,variant,a,m,t,r,theta,phi,residual,tolerance,pass\n";
  for (const ReportRow& row : rows) {
    text += row.check + ',' + std::to_string(row.sample) + ',' + std::to_string(row.variant);
    for (double v : {row.params.a, row.params.m, row.point.t, row.point.r, row.point.theta,
                     row.point.phi, row.residual, row.tolerance})
      text += ',' + format_double(v);
    text += row.pass() ? ",1\n" : ",0\n";
  }
  out << text;
}

int count_failures(const std::vector<ReportRow>& rows) {
  return static_cast<int>(
      std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return !r.pass(); }));
}

std::vector<TableRow> kerr_table(const KerrParams& params, const BLPoint& p) {
  require_exterior(params, p);
  return table_rows(principal_data(params, p, curvature(params, p)), p.r);
}

namespace {

struct PointOptions {
  KerrParams params;
  BLPoint point;
};

PointOptions point_from(const Config::View& v, double theta_default) {
  PointOptions o;
  const double m = v.get_double("m", 1.0);
  o.params = KerrParams::make(v.get_double("a", 0.3), m);
  o.point.t = v.get_double("t", 0.0);
  o.point.r = v.get_double("r", 3.0 * (m > 0.0 ? m : 1.0));
  o.point.theta = v.get_double("theta", theta_default);
  o.point.phi = v.get_double("phi", 0.0);
  return o;
}

}  // namespace

int run_table(const Config& config, std::ostream& out) {
  const Config::View v = config.view("table", command_schema());
  const PointOptions o = point_from(v, 1.0);
  const std::vector<TableRow> rows = kerr_table(o.params, o.point);
  std::string text = "quantity,re_computed,im_computed,re_kerr,im_kerr,rel_err\n";
  int failures = 0;
  for (const TableRow& row : rows) {
    text += row.quantity;
    for (double x : {row.re_computed, row.im_computed, row.re_kerr, row.im_kerr, row.rel_err})
      text += ',' + format_double(x);
    text += '\n';
    if (!(row.rel_err < tol::kTable)) ++failures;
  }
  out << text;
  return failures;
}

EvolveOptions EvolveOptions::from_config(const Config& config) {
  const Config::View v = config.view("evolve", command_schema());
  EvolveOptions o;
  EvolutionConfig& c = o.run;
  c.ell = v.get_int("ell", c.ell);
  c.m = v.get_double("m", c.m);
  o.cfl = v.get_double("cfl", o.cfl);
  const Grid1D defaults;
  c.grid = Grid1D::with_cfl(v.get_double("rstar_min", defaults.rstar_min),
                            v.get_double("rstar_max", defaults.rstar_max),
                            v.get_int("n_points", defaults.n_points), o.cfl);
  c.t_final = v.get_double("t_final", c.t_final);
  const std::string bc = v.get_string("bc", "outgoing");
  if (bc == "outgoing")
    c.bc = Boundary::outgoing;
  else if (bc == "reflecting")
    c.bc = Boundary::reflecting;
  else
    throw ConfigError("bc must be 'outgoing' or 'reflecting', got '" + bc + "'");
  c.pulse.center = v.get_double("pulse_center", c.pulse.center);
  c.pulse.width = v.get_double("pulse_width", c.pulse.width);
  c.pulse.amplitude = v.get_double("pulse_amplitude", c.pulse.amplitude);
  c.pulse.outgoing = v.get_bool("pulse_outgoing", c.pulse.outgoing);
  c.r_obs = v.get_double("r_obs", c.r_obs);
  c.sample_every = v.get_int("sample_every", c.sample_every);
  c.local_r_min = v.get_double("local_r_min", c.local_r_min);
  c.local_r_max = v.get_double("local_r_max", c.local_r_max);
  c.tail_start = v.get_double("tail_start", c.tail_start);
  o.refine = v.get_bool("refine", o.refine);
  o.refine_points = v.get_int("refine_points", o.refine_points);
  o.refine_t_final = v.get_double("refine_t_final", o.refine_t_final);
  if (c.ell < 0) throw ConfigError("ell must be >= 0");
  if (c.m < 0.0) throw ConfigError("m must be >= 0");
  if (c.sample_every < 1) throw ConfigError("sample_every must be >= 1");
  if (!(c.t_final >= 0.0)) throw ConfigError("t_final must be >= 0");
  try {
    c.grid.validate();
  } catch (const ContractError& e) {
    throw ConfigError(e.what());
  }
  return o;
}

int run_evolve(const Config& config, std::ostream& out) {
  const EvolveOptions o = EvolveOptions::from_config(config);
  const DecayReport report = evolve(o.run);
  std::ostringstream buf;
  write_csv(buf, report);
  buf << "# energy_drift=" << format_double(report.energy_drift) << '\n';
  buf << "# max_energy_increase=" << format_double(report.max_energy_increase) << '\n';
  buf << "# tail_samples=" << report.tail.samples << '\n';
  buf << "# tail_slope=" << format_double(report.tail.slope) << '\n';
  buf << "# tail_slope_ci=" << format_double(report.tail.ci_low) << ','
      << format_double(report.tail.ci_high) << '\n';
  if (o.refine) {
    EvolutionConfig coarse = o.run;
    coarse.grid = Grid1D::with_cfl(o.run.grid.rstar_min, o.run.grid.rstar_max, o.refine_points,
                                   o.cfl);
    coarse.t_final = o.refine_t_final;
    const ConvergenceResult conv = self_convergence(coarse);
    buf << "# convergence_factor=" << format_double(conv.factor) << '\n';
    buf << "# convergence_order=" << format_double(conv.order) << '\n';
  }
  out << buf.str();
  return 0;
}

int run_modes(const Config& config, std::ostream& out) {
  const Config::View v =
      config.view("modes", command_schema());
  const double m = v.get_double("m", 1.0);
  const KerrParams params = KerrParams::make(v.get_double("a", 0.3), m);
  const double r = v.get_double("r", 6.0 * (m > 0.0 ? m : 1.0));
  require_exterior(params, {0.0, r, 0.5 * std::numbers::pi, 0.0});
  const std::string field = v.get_string("field", "one");
  SphereFunction h;
  if (field == "one")
    h = [](double, double) { return 1.0; };
  else if (field == "j0")
    h = [](double th, double) { return std::cos(th); };
  else if (field == "jplus")
    h = [](double th, double ph) { return std::sin(th) * std::cos(ph); };
  else if (field == "jminus")
    h = [](double th, double ph) { return std::sin(th) * std::sin(ph); };
  else
    throw ConfigError("field must be one of one, j0, jplus, jminus; got '" + field + "'");
  const int n_theta = v.get_int("n_theta", 48);
  const int n_phi = v.get_int("n_phi", 64);
  if (n_theta < 2 || n_phi < 3) throw ConfigError("n_theta >= 2 and n_phi >= 3 required");
  const Ell1Modes modes = ell1_modes(h, params, r, n_theta, n_phi);
  const double area = sphere_area(params, r, n_theta);
  std::string text = "quantity,value\n";
  auto line = [&](const char* name, double x) { text += std::string(name) + ',' + format_double(x) + '\n'; };
  line("area", area);
  line("I0", modes.i0);
  line("Iplus", modes.iplus);
  line("Iminus", modes.iminus);
  int failures = 0;
  if (field == "one") {
    const double rel =
        std::max({std::abs(modes.i0), std::abs(modes.iplus), std::abs(modes.iminus)}) / area;
    line("constant_rel", rel);
    if (!(rel < tol::kEll1)) ++failures;
  }
  if (v.get_bool("isothermal", true)) {
    const IsothermalFit fit = isothermal_fit(kerr_sphere_metric(params, r), r);
    const double res = fit.residual();
    line("isothermal_constant", fit.constant());
    line("isothermal_residual", res);
    if (!(res < tol::kIsothermal)) ++failures;
  }
  out << text;
  return failures;
}

int run_transform(const Config& config, std::ostream& out) {
  const Config::View v = config.view("transform", command_schema());
  const PointOptions o = point_from(v, 1.0);
  FrameTransform x;
  x.f = {v.get_double("f1", 0.0), v.get_double("f2", 0.0)};
  x.fb = {v.get_double("fb1", 0.0), v.get_double("fb2", 0.0)};
  x.lambda = v.get_double("lambda", 1.0);
  if (!(x.lambda > 0.0)) throw ConfigError("lambda must be positive");
  require_exterior(o.params, o.point);
  const MetricAt mt = metric(o.params, o.point);
  const NullFrame base = principal_frame(o.params, o.point);
  const NullFrame moved = transform_frame(base, x);
  const FrameInvariants inv = frame_invariants(mt.g, moved);
  std::string text = "quantity,value\n";
  auto line = [&](const std::string& name, double val) { text += name + ',' + format_double(val) + '\n'; };
  const char* names[] = {"e4", "e3", "e1", "e2"};
  const int slots[] = {kE4, kE3, kE1, kE2};
  for (int k = 0; k < 4; ++k)
    for (int mu = 0; mu < 4; ++mu)
      line(std::string(names[k]) + "^" + std::to_string(mu), moved[slots[k]][mu]);
  line("g(e4,e4)", inv.e4_null);
  line("g(e3,e3)", inv.e3_null);
  line("g(e3,e4)+2", inv.pair);
  line("g(ea,eb)-delta", inv.horizontal);
  line("g(ea,e3)", inv.e3_orth);
  line("g(ea,e4)", inv.e4_orth);
  int failures = inv.max() < tol::kFrameInvariant ? 0 : 1;
  double roundtrip = kNaN, completed = kNaN;
  const InverseFit fit = fit_inverse_transform(x);
  roundtrip = frame_distance(transform_frame(moved, fit.inverse), base);
  try {
    const CompletedInverse inv = invert_transform_completed(x);
    completed = frame_distance(
        rotate_horizontal(transform_frame(moved, inv.inverse), inv.rotation), base);
    line("inverse_rotation", inv.rotation);
  } catch (const ConvergenceError&) {
  }
  line("roundtrip", roundtrip);
  line("roundtrip_completed", completed);
  if (!(roundtrip < tol::kRoundTrip)) ++failures;
  out << text;
  return failures;
}

}  // namespace kerrkit
