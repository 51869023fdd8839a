#include "selfnorm/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "selfnorm/stitching.hpp"

namespace selfnorm {

namespace {

// Golden angle: successive plane rotations by an irrational fraction of the
// circle keep the covariate sequence from locking onto any fixed subspace.
constexpr double kGoldenAngle = 2.3999632297286533;

int degenerate_blocks(const ProcessSpec& spec) {
  return spec.kind == ProcessKind::block_degenerate ? spec.d / 2 : 1;
}

}  // namespace

void validate(const ProcessSpec& spec) {
  if (spec.d < 1) throw InvalidSpecError("ProcessSpec: d must be at least 1");
  if (spec.horizon < 1) throw InvalidSpecError("ProcessSpec: horizon must be at least 1");
  switch (spec.kind) {
    case ProcessKind::gaussian_linear:
      if (!(spec.noise_scale > 0.0)) {
        throw InvalidSpecError("ProcessSpec: noise_scale must be positive");
      }
      break;
    case ProcessKind::bounded_bennett:
    case ProcessKind::bernstein_moment:
      if (!(spec.c > 0.0)) throw InvalidSpecError("ProcessSpec: c must be positive");
      break;
    case ProcessKind::bounded_emp_bern:
      if (!(spec.spread > 0.0 && spec.spread <= 1.0)) {
        throw InvalidSpecError("ProcessSpec: spread must lie in (0, 1]");
      }
      break;
    case ProcessKind::degenerate_regression_2d:
      if (spec.d != 2) throw InvalidSpecError("ProcessSpec: degenerate regression needs d = 2");
      break;
    case ProcessKind::block_degenerate:
      if (spec.d < 2 || spec.d % 2 != 0) {
        throw InvalidSpecError("ProcessSpec: block construction needs even d >= 2");
      }
      break;
    case ProcessKind::conditionally_symmetric:
      break;
  }
}

ProcessStepper::ProcessStepper(const ProcessSpec& spec)
    : spec_(spec), rng_(spec.seed), s_(static_cast<std::size_t>(spec.d), 0.0), v_(spec.d) {
  validate(spec_);
  scratch_.assign(static_cast<std::size_t>(spec_.d), 0.0);
  switch (spec_.kind) {
    case ProcessKind::gaussian_linear:
      x_.assign(static_cast<std::size_t>(spec_.d), 0.0);
      x_[0] = 1.0;
      break;
    case ProcessKind::bounded_emp_bern:
      mu_hat_.assign(static_cast<std::size_t>(spec_.d), 0.0);
      break;
    case ProcessKind::degenerate_regression_2d:
    case ProcessKind::block_degenerate: {
      const std::size_t blocks = static_cast<std::size_t>(degenerate_blocks(spec_));
      u_.assign(blocks, 0.0);  // U_1 = 0 in every block
      usum_.assign(blocks, 0.0);
      esum_.assign(blocks, 0.0);
      break;
    }
    default:
      break;
  }
}

bool ProcessStepper::step() {
  if (t_ >= spec_.horizon) return false;
  ++t_;
  switch (spec_.kind) {
    case ProcessKind::gaussian_linear: step_gaussian_linear(); break;
    case ProcessKind::conditionally_symmetric: step_conditionally_symmetric(); break;
    case ProcessKind::bounded_bennett: step_bounded_bennett(); break;
    case ProcessKind::bernstein_moment: step_bernstein_moment(); break;
    case ProcessKind::bounded_emp_bern: step_bounded_emp_bern(); break;
    case ProcessKind::degenerate_regression_2d: step_degenerate(1); break;
    case ProcessKind::block_degenerate: step_degenerate(spec_.d / 2); break;
  }
  return true;
}

void ProcessStepper::step_gaussian_linear() {
  const double eps = spec_.noise_scale * rng_.next_gaussian();
  for (int i = 0; i < spec_.d; ++i) s_[i] += eps * x_[i];
  v_.add_outer(x_);
  if (spec_.covariates == CovariateLaw::rotating && spec_.d > 1) {
    const double c = std::cos(kGoldenAngle), sn = std::sin(kGoldenAngle);
    for (int i = 0; i + 1 < spec_.d; ++i) {
      const double a = x_[i], b = x_[i + 1];
      x_[i] = c * a - sn * b;
      x_[i + 1] = sn * a + c * b;
    }
  }
}

void ProcessStepper::step_conditionally_symmetric() {
  rng_.next_unit_vector(scratch_);
  const double mag = rng_.next_cauchy_abs();
  const double sign = rng_.next_sign();
  for (int i = 0; i < spec_.d; ++i) scratch_[i] *= sign * mag;
  for (int i = 0; i < spec_.d; ++i) s_[i] += scratch_[i];
  v_.add_outer(scratch_);
}

void ProcessStepper::step_bounded_bennett() {
  rng_.next_unit_vector(scratch_);
  const double sign = rng_.next_sign();
  for (int i = 0; i < spec_.d; ++i) {
    scratch_[i] *= sign * spec_.c;
    s_[i] += scratch_[i];
  }
  // Predictable variance: E_{t-1} X X^T = (c^2 / d) I.
  v_.add_scaled_identity(spec_.c * spec_.c / spec_.d);
}

void ProcessStepper::step_bernstein_moment() {
  rng_.next_unit_vector(scratch_);
  const double mag = -spec_.c * std::log(rng_.next_open_uniform());
  for (int i = 0; i < spec_.d; ++i) {
    scratch_[i] *= mag;
    s_[i] += scratch_[i];
  }
  // E M^2 = 2 c^2 for the exponential magnitude, spread over d directions.
  v_.add_scaled_identity(2.0 * spec_.c * spec_.c / spec_.d);
}

void ProcessStepper::step_bounded_emp_bern() {
  rng_.next_ball_point(scratch_);
  // Variance increment uses the pre-update mean; the observations have mean
  // zero, so S_t coincides with the running sum.
  for (int i = 0; i < spec_.d; ++i) {
    const double xi = 0.5 * spec_.spread * scratch_[i];
    s_[i] += xi;
    scratch_[i] = xi - mu_hat_[i];
  }
  v_.add_outer(scratch_);
  for (int i = 0; i < spec_.d; ++i) mu_hat_[i] = s_[i] / static_cast<double>(t_);
}

void ProcessStepper::step_degenerate(int blocks) {
  for (int b = 0; b < blocks; ++b) {
    const int off = 2 * b;
    const double u = u_[b];
    const double eps = rng_.next_gaussian();
    s_[off] += eps;
    s_[off + 1] += eps * u;
    v_.set(off, off, v_(off, off) + 1.0);
    v_.set(off, off + 1, v_(off, off + 1) + u);
    v_.set(off + 1, off + 1, v_(off + 1, off + 1) + u * u);
    usum_[b] += u;
    esum_[b] += eps;
    u_[b] = (usum_[b] + esum_[b]) / static_cast<double>(t_);
  }
}

Trajectory::Trajectory(ProcessSpec spec, std::vector<double> s, std::vector<double> v_eigs)
    : spec_(spec), s_(std::move(s)), v_eigs_(std::move(v_eigs)) {}

std::span<const double> Trajectory::s_at(long t) const {
  if (t < 1 || t > spec_.horizon) throw DomainError("Trajectory: step index out of range");
  return {s_.data() + static_cast<std::size_t>(t - 1) * spec_.d,
          static_cast<std::size_t>(spec_.d)};
}

std::span<const double> Trajectory::eigenvalues_at(long t) const {
  if (t < 1 || t > spec_.horizon) throw DomainError("Trajectory: step index out of range");
  return {v_eigs_.data() + static_cast<std::size_t>(t - 1) * spec_.d,
          static_cast<std::size_t>(spec_.d)};
}

SymMatrix Trajectory::v_at(long t) const {
  if (t < 1 || t > spec_.horizon) throw DomainError("Trajectory: step index out of range");
  ProcessStepper stepper(spec_);
  for (long i = 0; i < t; ++i) stepper.step();
  return stepper.v();
}

Trajectory generate(const ProcessSpec& spec) {
  validate(spec);
  ProcessStepper stepper(spec);
  std::vector<double> s;
  std::vector<double> eigs;
  s.reserve(static_cast<std::size_t>(spec.horizon) * spec.d);
  eigs.reserve(static_cast<std::size_t>(spec.horizon) * spec.d);
  while (stepper.step()) {
    const auto sv = stepper.s();
    s.insert(s.end(), sv.begin(), sv.end());
    const SymEigen eig = sym_eig(stepper.v());
    eigs.insert(eigs.end(), eig.eigenvalues.begin(), eig.eigenvalues.end());
  }
  return Trajectory(spec, std::move(s), std::move(eigs));
}

namespace {

bool run_one_rep(const ProcessSpec& spec, BoundaryKind kind, const CoverageOptions& options) {
  ProcessStepper stepper(spec);
  const double rho = options.params.base.rho;
  while (stepper.step()) {
    double stat = 0.0, bound = 0.0;
    if (kind == BoundaryKind::scalar) {
      stat = stepper.s()[0];
      bound = scalar_boundary(stepper.v()(0, 0), options.family, options.params.base);
    } else {
      const SymEigen eig = sym_eig(stepper.v());
      stat = self_normalized_norm(stepper.s(), eig, rho);
      bound = (kind == BoundaryKind::vector)
                  ? vector_boundary_from_eigenvalues(eig.eigenvalues, options.family,
                                                     options.params)
                  : eb_radius_from_eigenvalues(eig.eigenvalues, stepper.t(), options.params,
                                               options.eb_form);
    }
    if (stat >= bound * options.boundary_scale) return true;
  }
  return false;
}

}  // namespace

CoverageReport coverage_experiment(const ProcessSpec& spec, BoundaryKind kind,
                                   const CoverageOptions& options, int n_reps) {
  if (n_reps < 100) {
    throw DomainError("coverage_experiment: needs at least 100 repetitions");
  }
  validate(spec);
  if (kind == BoundaryKind::scalar && spec.d != 1) {
    throw InvalidSpecError("coverage_experiment: the scalar boundary needs d = 1");
  }
  if (kind == BoundaryKind::emp_bernstein && spec.kind != ProcessKind::bounded_emp_bern) {
    throw InvalidSpecError(
        "coverage_experiment: the empirical Bernstein boundary needs a bounded_emp_bern process");
  }

  std::vector<unsigned char> crossed(static_cast<std::size_t>(n_reps), 0);
  auto run_range = [&](int begin, int end) {
    for (int rep = begin; rep < end; ++rep) {
      ProcessSpec rep_spec = spec;
      rep_spec.seed = spec.seed + static_cast<std::uint64_t>(rep);
      crossed[static_cast<std::size_t>(rep)] = run_one_rep(rep_spec, kind, options) ? 1 : 0;
    }
  };

  const unsigned hw = std::thread::hardware_concurrency();
  const int n_threads = static_cast<int>(std::min<unsigned>(hw > 0 ? hw : 1, 8));
  if (n_threads <= 1 || n_reps < 2 * n_threads) {
    run_range(0, n_reps);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n_reps + n_threads - 1) / n_threads;
    for (int i = 0; i < n_threads; ++i) {
      const int begin = i * chunk;
      const int end = std::min(n_reps, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  CoverageReport report;
  report.n_reps = n_reps;
  for (unsigned char c : crossed) report.crossings += c;
  report.rate = static_cast<double>(report.crossings) / n_reps;
  report.std_err = std::sqrt(report.rate * (1.0 - report.rate) / n_reps);
  return report;
}

std::vector<LilCheckpoint> lil_ratio_trace(const ProcessSpec& spec, double rho) {
  validate(spec);
  if (!(rho > 0.0)) throw DomainError("lil_ratio_trace: rho must be positive");
  const double loglog_floor = std::exp(std::exp(1.0));

  ProcessStepper stepper(spec);
  std::vector<LilCheckpoint> out;
  long next_checkpoint = 1;
  while (stepper.step()) {
    const long t = stepper.t();
    const bool at_power = t == next_checkpoint;
    if (!at_power && t != spec.horizon) continue;
    if (at_power) next_checkpoint *= 2;

    const SymEigen eig = sym_eig(stepper.v());
    const double sn = self_normalized_norm(stepper.s(), eig, rho);
    const double gmax = std::max(eig.max_eigenvalue(), rho);
    const double gmin = std::max(eig.min_eigenvalue(), rho);
    const double kappa = gmax / gmin;
    const double loglog = std::log(std::log(std::max(gmax, loglog_floor)));
    LilCheckpoint row;
    row.t = t;
    row.ratio = sn / std::sqrt(2.0 * loglog + spec.d * std::log(kappa));
    const double log_t = std::log(static_cast<double>(t));
    row.norm_sq_over_log_t =
        t >= 2 ? sn * sn / log_t : std::numeric_limits<double>::quiet_NaN();
    row.log_kappa_over_log_t =
        t >= 2 ? std::log(kappa) / log_t : std::numeric_limits<double>::quiet_NaN();
    out.push_back(row);
  }
  return out;
}

}  // namespace selfnorm
