#pragma once

#include "selfnorm/linalg.hpp"
#include "selfnorm/stitching.hpp"

namespace selfnorm {

/// Mixture (log-determinant) self-normalized radius for sub-Gaussian
/// processes: sqrt(2 log((1/delta) sqrt(det(I + V/rho)))).
double logdet_mixture_radius(const SymMatrix& V, double rho, double delta);

/// The regression version: logdet_mixture_radius + sqrt(rho) * theta_norm_bound.
double logdet_regression_radius(const SymMatrix& V, double rho, double delta,
                                double theta_norm_bound);

/// Scalar empirical-Bernstein comparison boundary
///   sqrt(k1^2 (v ∨ rho) l + k2^2 l^2) + k2 l,   l = ell evaluated at error budget 2*delta,
/// with k1 = (alpha^{1/4} + alpha^{-1/4})/sqrt(2) and k2 = (sqrt(alpha)+1)/sqrt(2).
/// The doubled budget pays for the two-sided union bound.
double scalar_emp_bernstein_radius(double v, const BoundaryParams& p);

/// Fixed-time AR(1) radius: the x > 0 solving
///   2 exp(-t x^2 / (2 (1 + y_x))) = delta,  psi*_{P,1}(y_x) = x^2.
/// Outer bisection on x (bracket expanded up to x = 1e6), inner solve through
/// the Poisson conjugate inverse; relative tolerance 1e-8.
double bercu_touati_radius(long t, double delta);

/// Union-bounded time-uniform wrapper: the same radius at failure probability
/// 6 delta / (pi^2 t^2) for round t.
double bercu_touati_union_radius(long t, double delta);

}  // namespace selfnorm
