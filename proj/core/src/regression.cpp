#include "selfnorm/regression.hpp"

#include <algorithm>
#include <cmath>

namespace selfnorm {

RegressionState::RegressionState(int d, double rho, double theta_norm_bound)
    : d_(d), t_(0), rho_(rho), theta_norm_bound_(theta_norm_bound), gram_(d) {
  if (d < 1) throw DimensionError("RegressionState: dimension must be at least 1");
  if (!(rho > 0.0)) throw DomainError("RegressionState: rho must be positive");
  if (!(theta_norm_bound >= 0.0)) {
    throw DomainError("RegressionState: theta_norm_bound must be nonnegative");
  }
  xty_.assign(static_cast<std::size_t>(d), 0.0);
}

void RegressionState::update(std::span<const double> x, double y) {
  if (static_cast<int>(x.size()) != d_) {
    throw DimensionError("RegressionState::update: covariate dimension mismatch");
  }
  gram_.add_outer(x);
  for (int i = 0; i < d_; ++i) xty_[i] += y * x[i];
  ++t_;
}

std::vector<double> RegressionState::ls_shrinkage_estimate() const {
  if (t_ < 1) throw DomainError("ls_shrinkage_estimate: needs at least one round");
  return solve_spd(spectral_floor(gram_, rho_), xty_);
}

std::vector<double> RegressionState::ridge_estimate() const {
  if (t_ < 1) throw DomainError("ridge_estimate: needs at least one round");
  SymMatrix shifted = gram_;
  shifted.add_scaled_identity(rho_);
  return solve_spd(shifted, xty_);
}

bool ConfidenceEllipsoid::contains(std::span<const double> theta) const {
  if (!valid) {
    throw InvalidEllipsoidError("ConfidenceEllipsoid: membership queried on an invalid set");
  }
  if (theta.size() != center.size()) {
    throw DimensionError("ConfidenceEllipsoid::contains: dimension mismatch");
  }
  const int d = shape.dim();
  std::vector<double> diff(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) diff[i] = theta[i] - center[i];
  const SymEigen eig = sym_eig(shape);
  double acc = 0.0;
  for (int n = 0; n < d; ++n) {
    double proj = 0.0;
    for (int i = 0; i < d; ++i) proj += eig.vec(i, n) * diff[i];
    acc += std::max(eig.eigenvalues[n], 0.0) * proj * proj;
  }
  return std::sqrt(acc) <= radius;
}

ConfidenceEllipsoid confidence_ellipsoid(const RegressionState& state, const CgfFamily& f,
                                         const VectorBoundaryParams& p,
                                         EllipsoidVariant variant) {
  // The estimator and its boundary must share one eigenvalue floor; the
  // state's shrinkage level wins over whatever the caller left in p.base.rho.
  VectorBoundaryParams vp = p;
  vp.base = BoundaryParams(p.base.alpha, state.rho(), p.base.delta, p.base.stitch);
  const double rho = state.rho();
  const double B = state.theta_norm_bound();

  const SymEigen gram_eig = sym_eig(state.gram());
  const bool below_floor = gram_eig.min_eigenvalue() < rho;

  ConfidenceEllipsoid e;
  switch (variant) {
    case EllipsoidVariant::shrinkage: {
      e.center = state.ls_shrinkage_estimate();
      double radius = vector_boundary_from_eigenvalues(gram_eig.eigenvalues, f, vp);
      if (below_floor) {
        if (!std::isfinite(B)) {
          throw MissingBoundError(
              "shrinkage ellipsoid: gamma_min(V) < rho requires a finite theta norm bound");
        }
        radius += std::sqrt(rho) * B;
      }
      e.radius = radius;
      std::vector<double> floored(gram_eig.eigenvalues);
      for (double& g : floored) g = std::max(g, rho);
      e.shape = gram_eig.reconstruct(floored);
      e.valid = true;
      break;
    }
    case EllipsoidVariant::ridge: {
      if (!std::isfinite(B)) {
        throw MissingBoundError("ridge ellipsoid: requires a finite theta norm bound");
      }
      e.center = state.ridge_estimate();
      std::vector<double> shifted(gram_eig.eigenvalues);
      for (double& g : shifted) g += rho;
      e.radius = vector_boundary_from_eigenvalues(shifted, f, vp) + std::sqrt(rho) * B;
      e.shape = gram_eig.reconstruct(shifted);
      e.valid = true;
      break;
    }
    case EllipsoidVariant::restricted: {
      e.center = state.ls_shrinkage_estimate();
      e.radius = vector_boundary_from_eigenvalues(gram_eig.eigenvalues, f, vp);
      e.shape = state.gram();
      e.valid = !below_floor;
      break;
    }
  }
  return e;
}

std::vector<VarRowEstimate> var_fit(std::span<const std::vector<double>> history, int p,
                                    double rho, const VectorBoundaryParams& vp,
                                    double theta_norm_bound) {
  if (p < 1) throw DomainError("var_fit: lag order p must be at least 1");
  if (history.size() < static_cast<std::size_t>(p) + 1) {
    throw DomainError("var_fit: history must hold at least p + 1 observations");
  }
  if (!(rho > 0.0)) throw DomainError("var_fit: rho must be positive");
  const int d = static_cast<int>(history.front().size());
  if (d < 1) throw DimensionError("var_fit: observations must be nonempty vectors");
  for (const auto& y : history) {
    if (static_cast<int>(y.size()) != d) {
      throw DimensionError("var_fit: ragged history");
    }
  }

  const int dp = d * p;
  const long rounds = static_cast<long>(history.size()) - p;
  SymMatrix gram(dp);
  std::vector<std::vector<double>> xty(d, std::vector<double>(dp, 0.0));
  std::vector<double> x(static_cast<std::size_t>(dp));

  // history[p - 1 + t] is Y_t; the stacked regressor at round t is
  // (Y_{t-1}, Y_{t-2}, ..., Y_{t-p}).
  for (long t = 1; t <= rounds; ++t) {
    for (int lag = 1; lag <= p; ++lag) {
      const auto& y = history[static_cast<std::size_t>(p - 1 + t - lag)];
      std::copy(y.begin(), y.end(), x.begin() + static_cast<std::size_t>(lag - 1) * d);
    }
    gram.add_outer(x);
    const auto& yt = history[static_cast<std::size_t>(p - 1 + t)];
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < dp; ++j) xty[i][j] += yt[i] * x[j];
    }
  }

  VectorBoundaryParams bp = vp;
  bp.base = BoundaryParams(vp.base.alpha, rho, vp.base.delta, vp.base.stitch);
  const SymEigen gram_eig = sym_eig(gram);
  const double L = l_rho_from_eigenvalues(gram_eig.eigenvalues, bp);
  double radius = std::sqrt(2.0 * bp.base.alpha * L) / (1.0 - bp.epsilon);
  if (gram_eig.min_eigenvalue() < rho) {
    if (!std::isfinite(theta_norm_bound)) {
      throw MissingBoundError(
          "var_fit: gamma_min(V) < rho requires a finite bound on the row norms");
    }
    radius += std::sqrt(rho) * theta_norm_bound;
  }

  std::vector<double> floored(gram_eig.eigenvalues);
  for (double& g : floored) g = std::max(g, rho);
  const SymMatrix shape = gram_eig.reconstruct(floored);

  std::vector<VarRowEstimate> rows;
  rows.reserve(d);
  for (int i = 0; i < d; ++i) {
    VarRowEstimate row;
    row.coefficients = solve_spd(shape, xty[i]);
    row.ellipsoid.center = row.coefficients;
    row.ellipsoid.shape = shape;
    row.ellipsoid.radius = radius;
    row.ellipsoid.valid = true;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace selfnorm
