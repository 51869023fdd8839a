#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "selfnorm/cgf.hpp"
#include "selfnorm/emp_bernstein.hpp"
#include "selfnorm/linalg.hpp"
#include "selfnorm/rng.hpp"
#include "selfnorm/vector_bound.hpp"

namespace selfnorm {

/// The generated process classes. Each yields a pair (S_t, V_t):
///
///   gaussian_linear           S = sum eps_s X_s with iid N(0,1) noise and
///                             predictable unit covariates; V = sum X X^T
///   conditionally_symmetric   X_t = sign * |Cauchy| * direction; V = sum X X^T
///   bounded_bennett           ||X_t|| = c, centered; V = sum E_{s-1} X X^T = (c^2 t / d) I
///   bernstein_moment          X_t = M U with exponential magnitude M (mean c)
///                             and uniform direction; V = (2 c^2 t / d) I
///   bounded_emp_bern          iid in the radius-(spread/2) ball; V is the
///                             empirical variance proxy of the mean estimator
///   degenerate_regression_2d  X_t = (1, U_t) with U_1 = 0, U_{t+1} = Ubar_t + ebar_t
///   block_degenerate          d/2 independent 2-d degenerate blocks, block-diagonal V
enum class ProcessKind {
  gaussian_linear,
  bounded_bennett,
  bounded_emp_bern,
  bernstein_moment,
  conditionally_symmetric,
  degenerate_regression_2d,
  block_degenerate,
};

/// Covariate law for gaussian_linear: the first axis held fixed, or a fixed
/// orthogonal rotation applied each round so the Gram matrix fills out every
/// direction.
enum class CovariateLaw { constant_axis, rotating };

struct ProcessSpec {
  ProcessKind kind = ProcessKind::gaussian_linear;
  int d = 1;
  long horizon = 1000;
  std::uint64_t seed = 0;
  double noise_scale = 1.0;                          // gaussian_linear
  CovariateLaw covariates = CovariateLaw::constant_axis;
  double c = 1.0;                                    // bounded_bennett, bernstein_moment
  double spread = 1.0;                               // bounded_emp_bern, in (0, 1]
};

/// InvalidSpecError on nonsense (d < 1, horizon < 1, odd d for the block
/// construction, spread outside (0, 1], ...).
void validate(const ProcessSpec& spec);

/// Streaming view of one trajectory; the seed fully determines the path.
class ProcessStepper {
 public:
  explicit ProcessStepper(const ProcessSpec& spec);

  /// Advance one round; false once the horizon is exhausted.
  bool step();

  long t() const noexcept { return t_; }
  const ProcessSpec& spec() const noexcept { return spec_; }
  std::span<const double> s() const noexcept { return s_; }
  const SymMatrix& v() const noexcept { return v_; }

 private:
  void step_gaussian_linear();
  void step_conditionally_symmetric();
  void step_bounded_bennett();
  void step_bernstein_moment();
  void step_bounded_emp_bern();
  void step_degenerate(int blocks);

  ProcessSpec spec_;
  SplitMix64 rng_;
  long t_ = 0;
  std::vector<double> s_;
  SymMatrix v_;
  std::vector<double> x_;      // gaussian_linear covariate
  std::vector<double> scratch_;
  std::vector<double> mu_hat_;           // bounded_emp_bern running mean
  std::vector<double> u_, usum_, esum_;  // per-block degenerate regressors
};

/// Materialized trajectory: per-step S_t and the eigenvalues of V_t
/// (descending). Full matrices are recovered on demand by replaying the seed.
class Trajectory {
 public:
  Trajectory(ProcessSpec spec, std::vector<double> s, std::vector<double> v_eigs);

  const ProcessSpec& spec() const noexcept { return spec_; }
  long length() const noexcept { return spec_.horizon; }
  std::span<const double> s_at(long t) const;
  std::span<const double> eigenvalues_at(long t) const;
  SymMatrix v_at(long t) const;

 private:
  ProcessSpec spec_;
  std::vector<double> s_;
  std::vector<double> v_eigs_;
};

Trajectory generate(const ProcessSpec& spec);

/// Which boundary the coverage harness checks the trajectory against.
///   scalar         S_t vs the stitched scalar boundary (d = 1 only)
///   vector         ||(V ∨ rho I)^{-1/2} S|| vs the closed vector boundary
///   emp_bernstein  the same statistic vs the empirical-Bernstein radius
enum class BoundaryKind { scalar, vector, emp_bernstein };

struct CoverageOptions {
  CgfFamily family = CgfFamily::normal();
  VectorBoundaryParams params{};
  double boundary_scale = 1.0;  // < 1 deliberately violates the guarantee
  EbForm eb_form = EbForm::exact;
};

struct CoverageReport {
  int n_reps = 0;
  int crossings = 0;
  double rate = 0.0;
  double std_err = 0.0;  // binomial standard error sqrt(rate (1 - rate) / n)
};

/// Runs n_reps independent trajectories (rep r uses seed spec.seed + r) and
/// counts those whose statistic ever meets or exceeds the scaled boundary.
/// DomainError when n_reps < 100.
CoverageReport coverage_experiment(const ProcessSpec& spec, BoundaryKind kind,
                                   const CoverageOptions& options, int n_reps);

struct LilCheckpoint {
  long t = 0;
  /// ||(V∨rho I)^{-1/2} S|| / sqrt(2 loglog gamma_max + d log kappa), with the
  /// loglog argument floored at e^e so early checkpoints stay finite.
  double ratio = 0.0;
  double norm_sq_over_log_t = 0.0;
  double log_kappa_over_log_t = 0.0;
};

/// Ratio trace at checkpoints 1, 2, 4, ..., plus the final round.
std::vector<LilCheckpoint> lil_ratio_trace(const ProcessSpec& spec, double rho);

}  // namespace selfnorm
