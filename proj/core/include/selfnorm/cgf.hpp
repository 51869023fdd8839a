#pragma once

#include <string_view>

#include "selfnorm/errors.hpp"

namespace selfnorm {

enum class CgfKind { normal, exponential, poisson, gamma };

/// One of the four built-in CGF-like families psi on [0, lambda_max):
///
///   normal          psi(l) = l^2 / 2
///   exponential(c)  psi(l) = (-log(1 - c l) - c l) / c^2,   lambda_max = 1/c
///   poisson(c)      psi(l) = (exp(c l) - c l - 1) / c^2
///   gamma(c)        psi(l) = l^2 / (2 (1 - c l)),           lambda_max = 1/c
///
/// Every family satisfies psi(0) = psi'(0) = 0, psi''(0) = 1, is strictly
/// convex, and has psi'(l) -> infinity as l -> lambda_max, so the convex
/// conjugate psi*(u) = sup_l { u l - psi(l) } is finite and strictly
/// increasing for all u >= 0.
class CgfFamily {
 public:
  static CgfFamily normal();
  static CgfFamily exponential(double c);
  static CgfFamily poisson(double c);
  static CgfFamily gamma(double c);

  CgfKind kind() const noexcept { return kind_; }
  /// Scale parameter c; zero for the normal family, which has none.
  double scale() const noexcept { return c_; }
  double lambda_max() const noexcept;
  std::string_view name() const noexcept;

  double psi(double lambda) const;
  double psi_prime(double lambda) const;
  double psi_double_prime(double lambda) const;

  /// Convex conjugate psi*(u) for u >= 0, in closed form for every family.
  double conjugate(double u) const;

  /// The unique u >= 0 with psi*(u) = x. Closed form for normal and gamma;
  /// bracketed bisection on the conjugate for poisson and exponential.
  double conjugate_inverse(double x) const;

  /// Slope transform s(u) = psi((psi')^{-1}(u)) / (psi')^{-1}(u), with
  /// s(0) = 0 by continuity. Satisfies s(u) <= u.
  double slope_transform(double u) const;

  /// True when psi(l)/l^2 is nondecreasing; holds for all four families.
  bool is_super_gaussian() const noexcept { return true; }

 private:
  CgfFamily(CgfKind kind, double c) : kind_(kind), c_(c) {}
  CgfKind kind_;
  double c_;
};

/// The rescaled family psi_rho(l) = rho * psi(l / sqrt(rho)) on
/// [0, sqrt(rho) * lambda_max). Used to reduce a rho-floored process to the
/// normalized rho = 1 regime.
struct RescaledCgf {
  CgfFamily base;
  double rho;
};

RescaledCgf rescale(const CgfFamily& f, double rho);

double rescaled_psi(const RescaledCgf& r, double lambda);
double rescaled_lambda_max(const RescaledCgf& r);

/// (psi_rho*)^{-1}(x) = sqrt(rho) * (psi*)^{-1}(x / rho).
double rescaled_conjugate_inverse(const RescaledCgf& r, double x);

}  // namespace selfnorm
