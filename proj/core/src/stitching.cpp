#include "selfnorm/stitching.hpp"

#include <algorithm>
#include <cmath>

namespace selfnorm {

namespace {

// zeta(s) = sum_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2 + Bernoulli tail
// corrections through B6. At N = 64 the truncation error is far below the
// 1e-12 target for every s > 1.
double zeta_euler_maclaurin(double s) {
  constexpr int N = 64;
  double sum = 0.0;
  for (int n = 1; n < N; ++n) {
    sum += std::pow(static_cast<double>(n), -s);
  }
  const double ns = std::pow(static_cast<double>(N), -s);
  sum += static_cast<double>(N) * ns / (s - 1.0);
  sum += 0.5 * ns;
  sum += s * ns / N / 12.0;
  sum -= s * (s + 1.0) * (s + 2.0) * ns / (static_cast<double>(N) * N * N) / 720.0;
  sum += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * ns /
         (std::pow(static_cast<double>(N), 5)) / 30240.0;
  return sum;
}

}  // namespace

StitchFn::StitchFn(double s) : s_(s) {
  if (!(s > 1.0) || !std::isfinite(s)) {
    throw DomainError("StitchFn: exponent s must exceed 1");
  }
  zeta_ = zeta_euler_maclaurin(s);
}

double StitchFn::operator()(double k) const {
  if (!(k >= 0.0)) {
    throw DomainError("StitchFn: argument must be nonnegative");
  }
  return std::pow(k + 1.0, s_) * zeta_;
}

BoundaryParams::BoundaryParams() : BoundaryParams(1.05, 1.0, 0.05, StitchFn(2.0)) {}

BoundaryParams::BoundaryParams(double alpha_, double rho_, double delta_, StitchFn stitch_)
    : alpha(alpha_), rho(rho_), delta(delta_), stitch(std::move(stitch_)) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw DomainError("BoundaryParams: alpha must exceed 1");
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw DomainError("BoundaryParams: rho must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("BoundaryParams: delta must lie in (0, 1)");
  }
}

double ell(double v, const BoundaryParams& p) {
  const double vr = std::max(v, p.rho) / p.rho;
  const double k = std::log(vr) / std::log(p.alpha);
  return std::log(p.stitch(k)) + std::log(1.0 / p.delta);
}

double scalar_boundary(double v, const CgfFamily& f, const BoundaryParams& p) {
  const double vf = std::max(v, p.rho);
  return vf * f.conjugate_inverse(p.alpha * ell(v, p) / vf);
}

double epoch_line_boundary(double v, const CgfFamily& f, const BoundaryParams& p, int k_max) {
  if (!(v >= 1.0)) {
    throw DomainError("epoch_line_boundary: requires v >= 1 (normalized rho = 1 regime)");
  }
  if (k_max < 0) {
    throw DomainError("epoch_line_boundary: k_max must be nonnegative");
  }
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= k_max; ++k) {
    const double mk = std::pow(p.alpha, k);
    const double xk = mk * f.conjugate_inverse(std::log(p.stitch(k) / p.delta) / mk);
    const double g = xk + f.slope_transform(xk / mk) * (v - mk);
    best = std::min(best, g);
  }
  return best;
}

double epoch_line_boundary(double v, const CgfFamily& f, const BoundaryParams& p) {
  if (!(v >= 1.0)) {
    throw DomainError("epoch_line_boundary: requires v >= 1 (normalized rho = 1 regime)");
  }
  const int k_max = static_cast<int>(std::ceil(std::log(v) / std::log(p.alpha))) + 5;
  return epoch_line_boundary(v, f, p, k_max);
}

double howard_gamma_boundary(double v, double c, const BoundaryParams& p) {
  if (!(c >= 0.0)) {
    throw DomainError("howard_gamma_boundary: scale c must be nonnegative");
  }
  const double l = ell(v, p);
  const double k1 = (std::pow(p.alpha, 0.25) + std::pow(p.alpha, -0.25)) / std::sqrt(2.0);
  const double k2 = (std::sqrt(p.alpha) + 1.0) / 2.0;
  return k1 * std::sqrt(std::max(v, p.rho) * l) + c * k2 * l;
}

}  // namespace selfnorm
