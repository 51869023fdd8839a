#pragma once

#include "selfnorm/cgf.hpp"
#include "selfnorm/errors.hpp"

namespace selfnorm {

/// Error-spending function h(k) = (k + 1)^s * zeta(s), s > 1, accepting real
/// arguments k >= 0. By construction sum_{k in N0} 1/h(k) = 1. zeta(s) is
/// computed once at construction (direct summation plus Euler-Maclaurin tail,
/// absolute error below 1e-12) and cached.
class StitchFn {
 public:
  explicit StitchFn(double s);

  double exponent() const noexcept { return s_; }
  double zeta() const noexcept { return zeta_; }
  double operator()(double k) const;

 private:
  double s_;
  double zeta_;
};

/// Tuning for the scalar stitched boundary: epoch spacing alpha > 1, minimum
/// intrinsic time rho > 0, error probability delta in (0, 1), and the
/// error-spending function h.
struct BoundaryParams {
  BoundaryParams();
  BoundaryParams(double alpha, double rho, double delta, StitchFn stitch);

  double alpha;
  double rho;
  double delta;
  StitchFn stitch;
};

/// ell_rho(v) = log h(log_alpha((v ∨ rho)/rho)) + log(1/delta).
double ell(double v, const BoundaryParams& p);

/// Time-uniform scalar boundary: (v ∨ rho) * (psi*)^{-1}(alpha * ell_rho(v) / (v ∨ rho)).
/// A sub-psi process (S_t, V_t) crosses it with probability at most delta.
double scalar_boundary(double v, const CgfFamily& f, const BoundaryParams& p);

/// Piecewise-linear epoch boundary min_{k <= k_max} g_k(v) in the rho = 1
/// normalized regime, where g_k is the optimized line anchored at intrinsic
/// time alpha^k:
///   x_k = alpha^k (psi*)^{-1}(log(h(k)/delta) / alpha^k),
///   g_k(v) = x_k + s(x_k / alpha^k) (v - alpha^k).
/// Dominated from above by scalar_boundary for every v >= 1.
double epoch_line_boundary(double v, const CgfFamily& f, const BoundaryParams& p, int k_max);

/// Same with k_max = ceil(log_alpha v) + 5, enough to include the binding epoch.
double epoch_line_boundary(double v, const CgfFamily& f, const BoundaryParams& p);

/// Curved sub-Gamma comparison boundary with scale c >= 0:
///   k1 * sqrt((v ∨ rho) * ell_rho(v)) + c * k2 * ell_rho(v),
/// k1 = (alpha^{1/4} + alpha^{-1/4})/sqrt(2), k2 = (sqrt(alpha) + 1)/2.
/// At c = 0 this is the sub-Gaussian boundary k1 * sqrt((v ∨ rho) ell_rho(v)).
double howard_gamma_boundary(double v, double c, const BoundaryParams& p);

}  // namespace selfnorm
