#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "selfnorm/baselines.hpp"
#include "selfnorm/cgf.hpp"
#include "selfnorm/emp_bernstein.hpp"
#include "selfnorm/regression.hpp"
#include "selfnorm/rng.hpp"
#include "selfnorm/sim.hpp"
#include "selfnorm/stitching.hpp"
#include "selfnorm/vector_bound.hpp"

namespace selfnorm::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitExperimentFailure = 1;
constexpr int kExitUsage = 2;

std::string g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

// Tunables shared by every subcommand; one flag per boundary parameter.
struct CommonOpts {
  std::string family = "poisson";
  double c = 1.0;
  double alpha = 1.05;
  double beta = 2.0;
  double eps = 0.5;
  double rho = 1.0;
  double delta = 0.05;
  double s = 2.0;
  int d = 1;
  long horizon = 10000;
  int reps = 1000;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string cover_bound = "face";
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--family", o.family, "CGF family: normal|exponential|poisson|gamma")
      ->check(CLI::IsMember({"normal", "exponential", "poisson", "gamma"}));
  cmd->add_option("--c", o.c, "family scale parameter c > 0");
  cmd->add_option("--alpha", o.alpha, "epoch spacing alpha > 1");
  cmd->add_option("--beta", o.beta, "condition-number spacing beta > 1");
  cmd->add_option("--eps", o.eps, "cover mesh epsilon in (0,1)");
  cmd->add_option("--rho", o.rho, "minimum intrinsic time rho > 0");
  cmd->add_option("--delta", o.delta, "error probability delta in (0,1)");
  cmd->add_option("--s", o.s, "error-spending exponent s > 1");
  cmd->add_option("--d", o.d, "dimension");
  cmd->add_option("--horizon", o.horizon, "number of rounds per trajectory");
  cmd->add_option("--reps", o.reps, "number of Monte Carlo repetitions");
  cmd->add_option("--seed", o.seed, "base RNG seed");
  cmd->add_option("--out", o.out_path, "write CSV to this file instead of stdout");
  cmd->add_option("--cover-bound", o.cover_bound, "covering bound: simple|face")
      ->check(CLI::IsMember({"simple", "face"}));
}

CgfFamily make_family(const CommonOpts& o) {
  if (o.family == "normal") return CgfFamily::normal();
  if (o.family == "exponential") return CgfFamily::exponential(o.c);
  if (o.family == "poisson") return CgfFamily::poisson(o.c);
  return CgfFamily::gamma(o.c);
}

VectorBoundaryParams make_vparams(const CommonOpts& o) {
  VectorBoundaryParams p;
  p.base = BoundaryParams(o.alpha, o.rho, o.delta, StitchFn(o.s));
  p.beta = o.beta;
  p.epsilon = o.eps;
  p.cover_bound = o.cover_bound == "simple" ? CoverBound::simple : CoverBound::face_based;
  return p;
}

// Routes CSV either to stdout or to --out.
class CsvSink {
 public:
  CsvSink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw CLI::ValidationError("--out", "cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ostream* stream_;
  std::unique_ptr<std::ofstream> file_;
};

std::vector<long> checkpoints(long horizon) {
  std::vector<long> cps;
  for (long t = 1; t < horizon; t *= 2) cps.push_back(t);
  cps.push_back(horizon);
  return cps;
}

int cmd_boundary_table(const CommonOpts& o, double vmin, double vmax, int points,
                       std::ostream& out_stream) {
  CsvSink sink(o.out_path, out_stream);
  const BoundaryParams p(o.alpha, o.rho, o.delta, StitchFn(o.s));
  const CgfFamily family = make_family(o);
  const double howard_c = o.family == "normal" ? 0.0 : o.c;

  auto& out = sink.stream();
  out << "v,ours_" << family.name() << ",howard_gamma\n";
  for (int i = 0; i < points; ++i) {
    const double v = points == 1
                         ? vmin
                         : vmin * std::pow(vmax / vmin, static_cast<double>(i) / (points - 1));
    out << g12(v) << ',' << g12(scalar_boundary(v, family, p)) << ','
        << g12(howard_gamma_boundary(v, howard_c, p)) << '\n';
  }
  return kExitOk;
}

int cmd_coverage(const CommonOpts& o, const std::string& kind_name,
                 const std::string& process_name, double boundary_scale,
                 const std::string& eb_form, std::ostream& out_stream, std::ostream& err) {
  static const std::map<std::string, ProcessKind> kinds = {
      {"gaussian-linear", ProcessKind::gaussian_linear},
      {"conditionally-symmetric", ProcessKind::conditionally_symmetric},
      {"bounded-bennett", ProcessKind::bounded_bennett},
      {"bernstein-moment", ProcessKind::bernstein_moment},
      {"bounded-empbern", ProcessKind::bounded_emp_bern},
      {"degenerate-2d", ProcessKind::degenerate_regression_2d},
      {"block-degenerate", ProcessKind::block_degenerate}};

  ProcessSpec spec;
  spec.kind = kinds.at(process_name);
  spec.d = o.d;
  spec.horizon = o.horizon;
  spec.seed = o.seed;
  spec.c = o.c;
  spec.covariates = o.d > 1 ? CovariateLaw::rotating : CovariateLaw::constant_axis;

  CoverageOptions options;
  options.family = make_family(o);
  options.params = make_vparams(o);
  options.boundary_scale = boundary_scale;
  options.eb_form = eb_form == "gamma" ? EbForm::gamma_closed : EbForm::exact;

  const BoundaryKind kind = kind_name == "scalar"    ? BoundaryKind::scalar
                            : kind_name == "empbern" ? BoundaryKind::emp_bernstein
                                                     : BoundaryKind::vector;

  const CoverageReport report = coverage_experiment(spec, kind, options, o.reps);
  const bool pass = report.rate <= o.delta + 3.0 * report.std_err;

  CsvSink sink(o.out_path, out_stream);
  sink.stream() << "reps,crossings,rate,std_err,delta,pass\n"
                << report.n_reps << ',' << report.crossings << ',' << g12(report.rate) << ','
                << g12(report.std_err) << ',' << g12(o.delta) << ',' << (pass ? 1 : 0) << '\n';
  err << "coverage: " << report.crossings << "/" << report.n_reps << " crossings, rate "
      << g12(report.rate) << " +- " << g12(report.std_err) << " vs delta " << g12(o.delta)
      << " -> " << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kExitOk : kExitExperimentFailure;
}

int cmd_ar_demo(const CommonOpts& o, double a_coeff, double y0, std::ostream& out_stream) {
  CsvSink sink(o.out_path, out_stream);
  // Two-sided scalar boundary for the AR residual: spend delta/2 per tail, no
  // covering terms in one dimension.
  const BoundaryParams half(o.alpha, o.rho, o.delta / 2.0, StitchFn(o.s));

  SplitMix64 rng(o.seed);
  double y_prev = y0;
  double v = 0.0;
  auto cps = checkpoints(o.horizon);
  std::size_t next = 0;

  auto& out = sink.stream();
  out << "t,our_radius,bercu_pointwise,bercu_union\n";
  for (long t = 1; t <= o.horizon; ++t) {
    v += y_prev * y_prev;
    y_prev = a_coeff * y_prev + rng.next_gaussian();
    if (next < cps.size() && t == cps[next]) {
      ++next;
      const double vf = std::max(v, o.rho);
      const double ours = std::sqrt(2.0 * o.alpha * ell(v, half) / vf);
      out << t << ',' << g12(ours) << ',' << g12(bercu_touati_radius(t, o.delta)) << ','
          << g12(bercu_touati_union_radius(t, o.delta)) << '\n';
    }
  }
  return kExitOk;
}

int cmd_regression_demo(const CommonOpts& o, double theta_norm, std::ostream& out_stream,
                        std::ostream& err) {
  const VectorBoundaryParams vp = make_vparams(o);
  const CgfFamily family = CgfFamily::normal();
  const int d = o.d;
  std::vector<double> theta_star(d, theta_norm / std::sqrt(static_cast<double>(d)));
  const auto cps = checkpoints(o.horizon);

  constexpr double kGoldenAngle = 2.3999632297286533;
  const double cr = std::cos(kGoldenAngle), sr = std::sin(kGoldenAngle);

  int violations = 0;
  CsvSink sink(o.out_path, out_stream);
  auto& out = sink.stream();
  // The mixture (log-det) radius is reported next to ours for comparison;
  // neither dominates the other in general.
  out << "t,radius,logdet_radius,error\n";

  for (int rep = 0; rep < o.reps; ++rep) {
    SplitMix64 rng(o.seed + static_cast<std::uint64_t>(rep));
    RegressionState state(d, o.rho, theta_norm);
    std::vector<double> x(d, 0.0);
    x[0] = 1.0;
    std::size_t next = 0;
    bool violated = false;

    for (long t = 1; t <= o.horizon; ++t) {
      double xdot = 0.0;
      for (int i = 0; i < d; ++i) xdot += x[i] * theta_star[i];
      state.update(x, xdot + rng.next_gaussian());
      for (int i = 0; i + 1 < d; ++i) {
        const double xa = x[i], xb = x[i + 1];
        x[i] = cr * xa - sr * xb;
        x[i + 1] = sr * xa + cr * xb;
      }

      const ConfidenceEllipsoid e =
          confidence_ellipsoid(state, family, vp, EllipsoidVariant::shrinkage);
      if (!e.contains(theta_star)) violated = true;

      if (rep == 0 && next < cps.size() && t == cps[next]) {
        ++next;
        const auto est = state.ls_shrinkage_estimate();
        double err_norm = 0.0;
        for (int i = 0; i < d; ++i) {
          err_norm += (est[i] - theta_star[i]) * (est[i] - theta_star[i]);
        }
        const double logdet =
            logdet_regression_radius(state.gram(), o.rho, o.delta, theta_norm);
        out << t << ',' << g12(e.radius) << ',' << g12(logdet) << ','
            << g12(std::sqrt(err_norm)) << '\n';
      }
    }
    if (violated) ++violations;
  }

  const double rate = static_cast<double>(violations) / o.reps;
  const double std_err = std::sqrt(rate * (1.0 - rate) / o.reps);
  const bool pass = rate <= o.delta + 3.0 * std_err;
  err << "regression coverage: " << violations << "/" << o.reps << " violations, rate "
      << g12(rate) << " +- " << g12(std_err) << " vs delta " << g12(o.delta) << " -> "
      << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kExitOk : kExitExperimentFailure;
}

int cmd_empbern_demo(const CommonOpts& o, double spread, const std::string& eb_form,
                     std::ostream& out_stream, std::ostream& err) {
  const VectorBoundaryParams vp = make_vparams(o);
  const EbForm form = eb_form == "gamma" ? EbForm::gamma_closed : EbForm::exact;

  ProcessSpec spec;
  spec.kind = ProcessKind::bounded_emp_bern;
  spec.d = o.d;
  spec.horizon = o.horizon;
  spec.seed = o.seed;
  spec.spread = spread;

  // Radii over time for the first repetition.
  CsvSink sink(o.out_path, out_stream);
  auto& out = sink.stream();
  out << "t,radius,mean_halfwidth\n";
  {
    ProcessStepper stepper(spec);
    const auto cps = checkpoints(o.horizon);
    std::size_t next = 0;
    while (stepper.step()) {
      if (next >= cps.size() || stepper.t() != cps[next]) continue;
      ++next;
      const SymEigen eig = sym_eig(stepper.v());
      const double radius = eb_radius_from_eigenvalues(eig.eigenvalues, stepper.t(), vp, form);
      const double gmax = std::max(eig.max_eigenvalue(), vp.base.rho);
      const double halfwidth = radius * std::sqrt(gmax) / static_cast<double>(stepper.t());
      out << stepper.t() << ',' << g12(radius) << ',' << g12(halfwidth) << '\n';
    }
  }

  CoverageOptions options;
  options.params = vp;
  options.eb_form = form;
  const CoverageReport report =
      coverage_experiment(spec, BoundaryKind::emp_bernstein, options, o.reps);
  const bool pass = report.rate <= o.delta + 3.0 * report.std_err;
  err << "empirical Bernstein coverage: " << report.crossings << "/" << report.n_reps
      << " crossings, rate " << g12(report.rate) << " +- " << g12(report.std_err)
      << " vs delta " << g12(o.delta) << " -> " << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kExitOk : kExitExperimentFailure;
}

void validate_common(const CommonOpts& o) {
  if (!(o.alpha > 1.0)) throw CLI::ValidationError("--alpha", "must exceed 1");
  if (!(o.beta > 1.0)) throw CLI::ValidationError("--beta", "must exceed 1");
  if (!(o.eps > 0.0 && o.eps < 1.0)) throw CLI::ValidationError("--eps", "must lie in (0,1)");
  if (!(o.rho > 0.0)) throw CLI::ValidationError("--rho", "must be positive");
  if (!(o.delta > 0.0 && o.delta < 1.0)) {
    throw CLI::ValidationError("--delta", "must lie in (0,1)");
  }
  if (!(o.s > 1.0)) throw CLI::ValidationError("--s", "must exceed 1");
  if (o.d < 1) throw CLI::ValidationError("--d", "must be at least 1");
  if (o.horizon < 1) throw CLI::ValidationError("--horizon", "must be at least 1");
  if (o.family != "normal" && !(o.c > 0.0)) {
    throw CLI::ValidationError("--c", "must be positive");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-uniform self-normalized confidence boundaries"};
  app.require_subcommand(1);

  auto* table = app.add_subcommand(
      "boundary-table", "CSV of the stitched boundary against the sub-Gamma comparison curve");
  CommonOpts table_opts;
  table_opts.delta = 0.01;  // figure setting
  double vmin = 1.0, vmax = 1e8;
  int points = 200;
  add_common_flags(table, table_opts);
  table->add_option("--vmin", vmin, "smallest intrinsic time");
  table->add_option("--vmax", vmax, "largest intrinsic time");
  table->add_option("--points", points, "number of log-spaced grid points");

  auto* coverage = app.add_subcommand("coverage", "Monte Carlo crossing-rate experiment");
  CommonOpts cov_opts;
  std::string kind = "scalar";
  std::string process = "gaussian-linear";
  double boundary_scale = 1.0;
  std::string eb_form = "exact";
  add_common_flags(coverage, cov_opts);
  coverage->add_option("--kind", kind, "boundary under test: scalar|vector|empbern")
      ->check(CLI::IsMember({"scalar", "vector", "empbern"}));
  coverage
      ->add_option("--process", process,
                   "gaussian-linear|conditionally-symmetric|bounded-bennett|bernstein-moment|"
                   "bounded-empbern|degenerate-2d|block-degenerate")
      ->check(CLI::IsMember({"gaussian-linear", "conditionally-symmetric", "bounded-bennett",
                             "bernstein-moment", "bounded-empbern", "degenerate-2d",
                             "block-degenerate"}));
  coverage->add_option("--boundary-scale", boundary_scale,
                       "multiply the boundary (0.2 demonstrates violation)");
  coverage->add_option("--eb-form", eb_form, "empirical Bernstein form: exact|gamma")
      ->check(CLI::IsMember({"exact", "gamma"}));

  auto* ar = app.add_subcommand("ar-demo", "AR(1) radius comparison against fixed-time bounds");
  CommonOpts ar_opts;
  ar_opts.alpha = 1.5;  // figure setting
  ar_opts.delta = 0.01;
  double a_coeff = 0.6, y0 = 0.0;
  add_common_flags(ar, ar_opts);
  ar->add_option("--a", a_coeff, "autoregression coefficient");
  ar->add_option("--y0", y0, "initial state");

  auto* reg = app.add_subcommand("regression-demo",
                                 "online regression ellipsoid radii and coverage");
  CommonOpts reg_opts;
  reg_opts.d = 2;
  reg_opts.horizon = 2000;
  reg_opts.reps = 200;
  double theta_norm = 1.0;
  add_common_flags(reg, reg_opts);
  reg->add_option("--theta-norm", theta_norm, "norm of the true slope vector");

  auto* eb = app.add_subcommand("empbern-demo",
                                "empirical Bernstein mean-estimation radii and coverage");
  CommonOpts eb_opts;
  eb_opts.d = 2;
  eb_opts.reps = 200;
  eb_opts.rho = 0.1;
  double spread = 1.0;
  std::string demo_eb_form = "exact";
  add_common_flags(eb, eb_opts);
  eb->add_option("--spread", spread, "observation spread in (0,1]");
  eb->add_option("--form", demo_eb_form, "radius form: exact|gamma")
      ->check(CLI::IsMember({"exact", "gamma"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    if (table->parsed()) {
      validate_common(table_opts);
      if (!(vmin > 0.0) || !(vmax >= vmin) || points < 1) {
        throw CLI::ValidationError("--vmin/--vmax/--points", "invalid grid");
      }
      return cmd_boundary_table(table_opts, vmin, vmax, points, out);
    }
    if (coverage->parsed()) {
      validate_common(cov_opts);
      return cmd_coverage(cov_opts, kind, process, boundary_scale, eb_form, out, err);
    }
    if (ar->parsed()) {
      validate_common(ar_opts);
      return cmd_ar_demo(ar_opts, a_coeff, y0, out);
    }
    if (reg->parsed()) {
      validate_common(reg_opts);
      return cmd_regression_demo(reg_opts, theta_norm, out, err);
    }
    if (eb->parsed()) {
      validate_common(eb_opts);
      return cmd_empbern_demo(eb_opts, spread, demo_eb_form, out, err);
    }
    err << "no subcommand selected\n";
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidSpecError& e) {
    err << "invalid process specification: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitExperimentFailure;
  }
}

}  // namespace selfnorm::cli
