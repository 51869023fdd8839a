#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "selfnorm/errors.hpp"

namespace selfnorm::detail {

struct RootOptions {
  double rel_tol = 1e-10;
  int max_iter = 200;
  // Open upper end of the search domain; the bracket never reaches it.
  double hi_limit = std::numeric_limits<double>::infinity();
};

/// Root of f(z) = target for f continuous and increasing on [0, hi_limit)
/// with f(0) <= target. Bracket [0, 1] expanded geometrically (clamped just
/// inside hi_limit), then plain bisection. Bisection is used deliberately:
/// it cannot overshoot the pole that exponential- and gamma-type functions
/// have at the end of their domain.
template <class F>
double bisect_increasing(F&& f, double target, RootOptions opt = {}) {
  const double cap = std::isfinite(opt.hi_limit)
                         ? opt.hi_limit * (1.0 - 1e-12)
                         : std::numeric_limits<double>::infinity();
  double lo = 0.0;
  double hi = std::isfinite(cap) ? std::min(1.0, cap) : 1.0;

  int iter = 0;
  while (f(hi) < target) {
    if (++iter > opt.max_iter) {
      throw ConvergenceError("bisect_increasing: bracket expansion exceeded iteration cap");
    }
    lo = hi;
    double next = hi * 2.0;
    if (std::isfinite(cap)) {
      next = std::min(next, cap);
      if (next == hi) {
        throw ConvergenceError("bisect_increasing: target unreachable below domain limit");
      }
    }
    hi = next;
  }

  iter = 0;
  while (hi - lo > opt.rel_tol * std::max(1.0, hi)) {
    if (++iter > opt.max_iter) {
      throw ConvergenceError("bisect_increasing: bisection exceeded iteration cap");
    }
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace selfnorm::detail
