#include "selfnorm/emp_bernstein.hpp"

#include <algorithm>
#include <cmath>

namespace selfnorm {

EmpBernState::EmpBernState(int d) : d_(d), t_(0), emp_var_(d) {
  if (d < 1) throw DimensionError("EmpBernState: dimension must be at least 1");
  sum_x_.assign(static_cast<std::size_t>(d), 0.0);
  mu_hat_.assign(static_cast<std::size_t>(d), 0.0);
}

void EmpBernState::update(std::span<const double> x) {
  if (static_cast<int>(x.size()) != d_) {
    throw DimensionError("EmpBernState::update: dimension mismatch");
  }
  double norm_sq = 0.0;
  for (double xi : x) norm_sq += xi * xi;
  if (std::sqrt(norm_sq) > 0.5 + 1e-12) {
    throw NormError("EmpBernState::update: observation norm exceeds 1/2");
  }
  // Increment uses the mean BEFORE this observation (mu_hat_0 = 0).
  std::vector<double> centered(static_cast<std::size_t>(d_));
  for (int i = 0; i < d_; ++i) centered[i] = x[i] - mu_hat_[i];
  emp_var_.add_outer(centered);
  ++t_;
  for (int i = 0; i < d_; ++i) {
    sum_x_[i] += x[i];
    mu_hat_[i] = sum_x_[i] / static_cast<double>(t_);
  }
}

double eb_radius_from_eigenvalues(std::span<const double> eigenvalues, long t,
                                  const VectorBoundaryParams& p, EbForm form) {
  if (t < 1) throw DomainError("eb_radius: needs at least one observation");
  switch (form) {
    case EbForm::exact:
      return vector_boundary_from_eigenvalues(eigenvalues, CgfFamily::exponential(1.0), p);
    case EbForm::gamma_closed: {
      const double L = l_rho_from_eigenvalues(eigenvalues, p);
      double gmin = eigenvalues.front();
      for (double g : eigenvalues) gmin = std::min(gmin, g);
      gmin = std::max(gmin, p.base.rho);
      const double aL = p.base.alpha * L;
      return std::sqrt(2.0 * aL) + aL / gmin;
    }
  }
  return 0.0;
}

double eb_radius(const EmpBernState& state, const VectorBoundaryParams& p, EbForm form) {
  return eb_radius_from_eigenvalues(sym_eig(state.emp_var()).eigenvalues, state.rounds(), p,
                                    form);
}

ConfidenceEllipsoid eb_confidence_set(const EmpBernState& state, const VectorBoundaryParams& p,
                                      EbForm form) {
  if (state.rounds() < 1) throw DomainError("eb_confidence_set: needs at least one observation");
  const SymEigen eig = sym_eig(state.emp_var());
  const double t = static_cast<double>(state.rounds());

  ConfidenceEllipsoid e;
  e.center = state.mean();
  e.radius = eb_radius_from_eigenvalues(eig.eigenvalues, state.rounds(), p, form);
  // ||shape^{1/2}(p - mean)|| = ||(V ∨ rho I)^{-1/2}(sum_x - t p)||.
  std::vector<double> inv(eig.eigenvalues);
  for (double& g : inv) g = t * t / std::max(g, p.base.rho);
  e.shape = eig.reconstruct(inv);
  e.valid = true;
  return e;
}

}  // namespace selfnorm
