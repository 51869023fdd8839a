#pragma once

#include <span>
#include <vector>

#include "selfnorm/linalg.hpp"
#include "selfnorm/regression.hpp"
#include "selfnorm/vector_bound.hpp"

namespace selfnorm {

/// State of the multivariate empirical-Bernstein mean estimator for
/// observations with ||X_t|| <= 1/2: running sum, running mean, and the
/// empirical variance proxy V_t = sum (X_s - mu_hat_{s-1})(X_s - mu_hat_{s-1})^T,
/// where each increment uses the mean BEFORE the observation and mu_hat_0 = 0.
class EmpBernState {
 public:
  explicit EmpBernState(int d);

  /// NormError when ||x|| > 1/2 + 1e-12.
  void update(std::span<const double> x);

  int dim() const noexcept { return d_; }
  long rounds() const noexcept { return t_; }
  const std::vector<double>& sum() const noexcept { return sum_x_; }
  const std::vector<double>& mean() const noexcept { return mu_hat_; }
  const SymMatrix& emp_var() const noexcept { return emp_var_; }

 private:
  int d_;
  long t_;
  std::vector<double> sum_x_;
  std::vector<double> mu_hat_;
  SymMatrix emp_var_;
};

/// exact         the sub-exponential boundary: vector boundary with psi_{E,1}
/// gamma_closed  the sub-Gamma relaxation in closed form,
///                 sqrt(2 alpha L_rho(V)) + alpha L_rho(V) / gamma_min(V ∨ rho I).
///
/// The two forms are not multiples of each other: the exact path picks up the
/// 1/(1-eps) covering factor while the closed relaxation carries none.
enum class EbForm { exact, gamma_closed };

/// Bound on the self-normalized norm ||(V_t ∨ rho I)^{-1/2} sum (X_s - E_{s-1} X_s)||.
double eb_radius(const EmpBernState& state, const VectorBoundaryParams& p,
                 EbForm form = EbForm::exact);
double eb_radius_from_eigenvalues(std::span<const double> eigenvalues, long t,
                                  const VectorBoundaryParams& p, EbForm form = EbForm::exact);

/// Confidence set for a constant mean: center mu_hat_t, membership
/// ||(V_t ∨ rho I)^{-1/2}(sum_x - t p)|| <= radius, expressed through a shape
/// matrix t^2 (V_t ∨ rho I)^{-1} so the generic ellipsoid test reads exactly
/// that inequality.
ConfidenceEllipsoid eb_confidence_set(const EmpBernState& state, const VectorBoundaryParams& p,
                                      EbForm form = EbForm::exact);

}  // namespace selfnorm
