#pragma once

#include <limits>
#include <span>
#include <vector>

#include "selfnorm/cgf.hpp"
#include "selfnorm/linalg.hpp"
#include "selfnorm/vector_bound.hpp"

namespace selfnorm {

/// Incremental state of an online linear regression: Gram matrix
/// V_t = sum X_s X_s^T, moment vector sum X_s Y_s, the shrinkage level rho,
/// and an optional known bound on ||theta*|| (+infinity when unknown).
///
/// The confidence-ellipsoid guarantees assume the residual process
/// (sum eps_s X_s, V_t) is sub-psi for the chosen family. Two sufficient
/// conditions, neither checked at runtime: the noise is conditionally
/// sub-Gaussian (any covariates), or ||X_t|| <= 1 and the noise CGF is
/// bounded by a super-Gaussian psi. The caller asserts the model.
class RegressionState {
 public:
  RegressionState(int d, double rho,
                  double theta_norm_bound = std::numeric_limits<double>::infinity());

  void update(std::span<const double> x, double y);

  int dim() const noexcept { return d_; }
  long rounds() const noexcept { return t_; }
  double rho() const noexcept { return rho_; }
  double theta_norm_bound() const noexcept { return theta_norm_bound_; }
  const SymMatrix& gram() const noexcept { return gram_; }
  const std::vector<double>& xty() const noexcept { return xty_; }

  /// (V_t ∨ rho I)^{-1} sum X_s Y_s. Equals plain least squares once
  /// gamma_min(V_t) >= rho.
  std::vector<double> ls_shrinkage_estimate() const;

  /// (V_t + rho I)^{-1} sum X_s Y_s.
  std::vector<double> ridge_estimate() const;

 private:
  int d_;
  long t_;
  double rho_;
  double theta_norm_bound_;
  SymMatrix gram_;
  std::vector<double> xty_;
};

/// Confidence set {theta : ||shape^{1/2}(theta - center)|| <= radius}.
/// `valid` is false when a variant's side condition fails (the restricted
/// ellipsoid before the Gram matrix clears its eigenvalue floor).
struct ConfidenceEllipsoid {
  std::vector<double> center;
  SymMatrix shape{1};
  double radius = 0.0;
  bool valid = true;

  bool contains(std::span<const double> theta) const;
};

enum class EllipsoidVariant { shrinkage, ridge, restricted };

/// Time-uniform confidence ellipsoid for the slope vector.
///
///   shrinkage   shape V ∨ rho I, radius = vector boundary + sqrt(rho) B 1{gmin(V) < rho}
///   ridge       shape V + rho I, radius = vector boundary on V + rho I, plus sqrt(rho) B always
///   restricted  shape V, no additive term, valid only when gamma_min(V) >= rho
///
/// B = state.theta_norm_bound(); MissingBoundError when an active additive
/// term needs it and it is infinite. The state's rho overrides p.base.rho so
/// the estimator and the boundary always share one floor.
ConfidenceEllipsoid confidence_ellipsoid(const RegressionState& state, const CgfFamily& f,
                                         const VectorBoundaryParams& p, EllipsoidVariant variant);

struct VarRowEstimate {
  std::vector<double> coefficients;  // one row of the stacked transition matrix
  ConfidenceEllipsoid ellipsoid;
};

/// Least-squares fit of a VAR(p) model from observations Y_{-p+1}, ..., Y_T
/// (history.size() = p + T, T >= 1). Builds the stacked d*p-dimensional
/// regressors X_t = (Y_{t-1}, ..., Y_{t-p}), runs the d row regressions on
/// one shared Gram matrix, and radii use the sub-Gaussian closed form
/// (1/(1-eps)) sqrt(2 alpha L_rho(V)).
std::vector<VarRowEstimate> var_fit(std::span<const std::vector<double>> history, int p,
                                    double rho, const VectorBoundaryParams& vp,
                                    double theta_norm_bound = std::numeric_limits<double>::infinity());

}  // namespace selfnorm
