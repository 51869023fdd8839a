#include "selfnorm/cgf.hpp"

#include <cmath>
#include <limits>

#include "root_find.hpp"

namespace selfnorm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_scale(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw DomainError("CgfFamily: scale parameter c must be positive and finite");
  }
}

// (1+w) log(1+w) - w, the scaled Poisson conjugate. Series for small w keeps
// full relative precision through the w^2/2 cancellation.
double xlogx_minus(double w) {
  if (w < 1e-4) {
    const double w2 = w * w;
    return w2 * (0.5 - w / 6.0 + w2 / 12.0 - w2 * w / 20.0);
  }
  return (1.0 + w) * std::log1p(w) - w;
}

// w - log(1+w), the scaled exponential conjugate.
double w_minus_log1p(double w) {
  if (w < 1e-4) {
    const double w2 = w * w;
    return w2 * (0.5 - w / 3.0 + w2 / 4.0 - w2 * w / 5.0);
  }
  return w - std::log1p(w);
}

}  // namespace

CgfFamily CgfFamily::normal() { return {CgfKind::normal, 0.0}; }

CgfFamily CgfFamily::exponential(double c) {
  require_scale(c);
  return {CgfKind::exponential, c};
}

CgfFamily CgfFamily::poisson(double c) {
  require_scale(c);
  return {CgfKind::poisson, c};
}

CgfFamily CgfFamily::gamma(double c) {
  require_scale(c);
  return {CgfKind::gamma, c};
}

double CgfFamily::lambda_max() const noexcept {
  switch (kind_) {
    case CgfKind::normal:
    case CgfKind::poisson:
      return kInf;
    case CgfKind::exponential:
    case CgfKind::gamma:
      return 1.0 / c_;
  }
  return kInf;
}

std::string_view CgfFamily::name() const noexcept {
  switch (kind_) {
    case CgfKind::normal: return "normal";
    case CgfKind::exponential: return "exponential";
    case CgfKind::poisson: return "poisson";
    case CgfKind::gamma: return "gamma";
  }
  return "?";
}

double CgfFamily::psi(double lambda) const {
  if (!(lambda >= 0.0) || lambda >= lambda_max()) {
    throw DomainError("psi: lambda outside [0, lambda_max)");
  }
  switch (kind_) {
    case CgfKind::normal:
      return 0.5 * lambda * lambda;
    case CgfKind::exponential:
      return (-std::log1p(-c_ * lambda) - c_ * lambda) / (c_ * c_);
    case CgfKind::poisson:
      return (std::expm1(c_ * lambda) - c_ * lambda) / (c_ * c_);
    case CgfKind::gamma:
      return lambda * lambda / (2.0 * (1.0 - c_ * lambda));
  }
  return 0.0;
}

double CgfFamily::psi_prime(double lambda) const {
  if (!(lambda >= 0.0) || lambda >= lambda_max()) {
    throw DomainError("psi_prime: lambda outside [0, lambda_max)");
  }
  switch (kind_) {
    case CgfKind::normal:
      return lambda;
    case CgfKind::exponential:
      return lambda / (1.0 - c_ * lambda);
    case CgfKind::poisson:
      return std::expm1(c_ * lambda) / c_;
    case CgfKind::gamma: {
      const double r = 1.0 - c_ * lambda;
      return lambda * (2.0 - c_ * lambda) / (2.0 * r * r);
    }
  }
  return 0.0;
}

double CgfFamily::psi_double_prime(double lambda) const {
  if (!(lambda >= 0.0) || lambda >= lambda_max()) {
    throw DomainError("psi_double_prime: lambda outside [0, lambda_max)");
  }
  switch (kind_) {
    case CgfKind::normal:
      return 1.0;
    case CgfKind::exponential: {
      const double r = 1.0 - c_ * lambda;
      return 1.0 / (r * r);
    }
    case CgfKind::poisson:
      return std::exp(c_ * lambda);
    case CgfKind::gamma: {
      const double r = 1.0 - c_ * lambda;
      return 1.0 / (r * r * r);
    }
  }
  return 0.0;
}

double CgfFamily::conjugate(double u) const {
  if (!(u >= 0.0)) {
    throw DomainError("conjugate: u must be nonnegative");
  }
  switch (kind_) {
    case CgfKind::normal:
      return 0.5 * u * u;
    case CgfKind::poisson:
      return xlogx_minus(c_ * u) / (c_ * c_);
    case CgfKind::exponential:
      return w_minus_log1p(c_ * u) / (c_ * c_);
    case CgfKind::gamma: {
      // Inverts (psi*)^{-1}(x) = sqrt(2x) + c x: the quadratic in sqrt(x),
      // written so small c*u does not cancel.
      const double root = std::sqrt(2.0 + 4.0 * c_ * u) + std::sqrt(2.0);
      return 4.0 * u * u / (root * root);
    }
  }
  return 0.0;
}

double CgfFamily::conjugate_inverse(double x) const {
  if (!(x >= 0.0)) {
    throw DomainError("conjugate_inverse: x must be nonnegative");
  }
  if (x == 0.0) return 0.0;
  switch (kind_) {
    case CgfKind::normal:
      return std::sqrt(2.0 * x);
    case CgfKind::gamma:
      return std::sqrt(2.0 * x) + c_ * x;
    case CgfKind::poisson:
    case CgfKind::exponential:
      return detail::bisect_increasing([this](double u) { return conjugate(u); }, x);
  }
  return 0.0;
}

double CgfFamily::slope_transform(double u) const {
  if (!(u >= 0.0)) {
    throw DomainError("slope_transform: u must be nonnegative");
  }
  if (u < 1e-12) return 0.0;  // s(0) = 0 by continuity
  detail::RootOptions opt;
  opt.hi_limit = lambda_max();
  const double lambda = detail::bisect_increasing(
      [this](double l) { return psi_prime(l); }, u, opt);
  if (lambda == 0.0) return 0.0;
  return psi(lambda) / lambda;
}

RescaledCgf rescale(const CgfFamily& f, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw DomainError("rescale: rho must be positive and finite");
  }
  return {f, rho};
}

double rescaled_psi(const RescaledCgf& r, double lambda) {
  return r.rho * r.base.psi(lambda / std::sqrt(r.rho));
}

double rescaled_lambda_max(const RescaledCgf& r) {
  return std::sqrt(r.rho) * r.base.lambda_max();
}

double rescaled_conjugate_inverse(const RescaledCgf& r, double x) {
  return std::sqrt(r.rho) * r.base.conjugate_inverse(x / r.rho);
}

}  // namespace selfnorm
