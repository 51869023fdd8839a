#include "selfnorm/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "root_find.hpp"
#include "selfnorm/cgf.hpp"

namespace selfnorm {

double logdet_mixture_radius(const SymMatrix& V, double rho, double delta) {
  if (!(rho > 0.0)) throw DomainError("logdet_mixture_radius: rho must be positive");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("logdet_mixture_radius: delta must lie in (0, 1)");
  }
  const SymEigen eig = sym_eig(V);
  double half_log_det = 0.0;
  for (double g : eig.eigenvalues) half_log_det += 0.5 * std::log1p(std::max(g, 0.0) / rho);
  return std::sqrt(2.0 * (std::log(1.0 / delta) + half_log_det));
}

double logdet_regression_radius(const SymMatrix& V, double rho, double delta,
                                double theta_norm_bound) {
  if (!(theta_norm_bound >= 0.0) || !std::isfinite(theta_norm_bound)) {
    throw DomainError("logdet_regression_radius: needs a finite nonnegative norm bound");
  }
  return logdet_mixture_radius(V, rho, delta) + std::sqrt(rho) * theta_norm_bound;
}

double scalar_emp_bernstein_radius(double v, const BoundaryParams& p) {
  if (!(v >= 0.0)) throw DomainError("scalar_emp_bernstein_radius: v must be nonnegative");
  if (!(p.delta < 0.5)) {
    // The two-sided union bound runs at budget 2*delta, which must itself be
    // a probability.
    throw DomainError("scalar_emp_bernstein_radius: needs delta < 1/2");
  }
  // ell at error budget 2*delta: the two-sided union bound.
  const double vr = std::max(v, p.rho) / p.rho;
  const double l = std::log(p.stitch(std::log(vr) / std::log(p.alpha))) +
                   std::log(1.0 / (2.0 * p.delta));
  const double k1 = (std::pow(p.alpha, 0.25) + std::pow(p.alpha, -0.25)) / std::sqrt(2.0);
  const double k2 = (std::sqrt(p.alpha) + 1.0) / std::sqrt(2.0);
  return std::sqrt(k1 * k1 * std::max(v, p.rho) * l + k2 * k2 * l * l) + k2 * l;
}

double bercu_touati_radius(long t, double delta) {
  if (t < 1) throw DomainError("bercu_touati_radius: t must be at least 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("bercu_touati_radius: delta must lie in (0, 1)");
  }
  const CgfFamily poisson = CgfFamily::poisson(1.0);
  // Tail probability 2 exp(-t x^2 / (2 (1 + y_x))) is decreasing in x, so the
  // negated log-tail is increasing; solve for the delta level set.
  auto neg_log_tail = [&](double x) {
    const double y = poisson.conjugate_inverse(x * x);
    return static_cast<double>(t) * x * x / (2.0 * (1.0 + y)) - std::log(2.0);
  };
  detail::RootOptions opt;
  // Solve x well past the 1e-8 target so the forward-substituted tail
  // probability lands within 1e-8 of delta even at large t.
  opt.rel_tol = 1e-12;
  opt.hi_limit = 1e6;  // documented cap on the outer bracket
  return detail::bisect_increasing(neg_log_tail, std::log(1.0 / delta), opt);
}

double bercu_touati_union_radius(long t, double delta) {
  if (t < 1) throw DomainError("bercu_touati_union_radius: t must be at least 1");
  const double per_round = 6.0 * delta / (M_PI * M_PI * static_cast<double>(t) * t);
  return bercu_touati_radius(t, per_round);
}

}  // namespace selfnorm
