#pragma once

#include <span>
#include <vector>

#include "selfnorm/errors.hpp"

namespace selfnorm {

/// Dense symmetric d x d matrix, full row-major storage. Symmetry is checked
/// at construction (|a_ij - a_ji| <= 1e-12 * max|a|) and preserved by every
/// mutator.
class SymMatrix {
 public:
  explicit SymMatrix(int d);
  SymMatrix(int d, std::vector<double> entries);

  static SymMatrix identity(int d);
  static SymMatrix diagonal(std::span<const double> diag);

  int dim() const noexcept { return d_; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * d_ + j]; }
  void set(int i, int j, double value);

  /// A += weight * x x^T.
  void add_outer(std::span<const double> x, double weight = 1.0);
  void add_scaled_identity(double c);
  void scale(double c);

  std::vector<double> matvec(std::span<const double> x) const;
  /// x^T A x.
  double quad_form(std::span<const double> x) const;
  double frobenius_norm() const;
  double max_abs() const;

  const std::vector<double>& data() const noexcept { return a_; }

 private:
  int d_;
  std::vector<double> a_;
};

/// Spectral decomposition V = sum_n gamma_n v_n v_n^T with eigenvalues sorted
/// nonincreasing and orthonormal eigenvector columns. Column n of
/// `eigenvectors` (stored column-major, entry (i, n) at i + n*dim) holds v_n,
/// with its largest-magnitude component made positive.
struct SymEigen {
  int dim = 0;
  std::vector<double> eigenvalues;
  std::vector<double> eigenvectors;

  double max_eigenvalue() const { return eigenvalues.front(); }
  double min_eigenvalue() const { return eigenvalues.back(); }
  double vec(int i, int n) const { return eigenvectors[static_cast<std::size_t>(n) * dim + i]; }

  /// sum_n f(gamma_n) v_n v_n^T for the supplied replacement eigenvalues.
  SymMatrix reconstruct(std::span<const double> new_eigenvalues) const;
};

/// Cyclic Jacobi eigendecomposition. Off-diagonal Frobenius tolerance
/// 1e-12 * ||V||_F; throws ConvergenceError if the sweep cap is exceeded.
SymEigen sym_eig(const SymMatrix& V);

/// V ∨ rho I: same eigenvectors, eigenvalues max(gamma_n, rho).
SymMatrix spectral_floor(const SymMatrix& V, double rho);

/// V^{-1/2}; SingularError when gamma_min <= 1e-14 * gamma_max.
SymMatrix inv_sqrt(const SymMatrix& V);

/// gamma_max / gamma_min, +infinity when gamma_min <= 0.
double condition_number(const SymMatrix& V);

double log_det(const SymMatrix& V);

/// Solve V x = b through the eigendecomposition; SingularError as inv_sqrt.
std::vector<double> solve_spd(const SymMatrix& V, std::span<const double> b);

}  // namespace selfnorm
