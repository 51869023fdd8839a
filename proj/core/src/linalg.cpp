#include "selfnorm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace selfnorm {

namespace {
constexpr double kSymTol = 1e-12;
constexpr double kSingularRatio = 1e-14;
}  // namespace

SymMatrix::SymMatrix(int d) : d_(d) {
  if (d < 1) throw DimensionError("SymMatrix: dimension must be at least 1");
  a_.assign(static_cast<std::size_t>(d) * d, 0.0);
}

SymMatrix::SymMatrix(int d, std::vector<double> entries) : d_(d), a_(std::move(entries)) {
  if (d < 1) throw DimensionError("SymMatrix: dimension must be at least 1");
  if (a_.size() != static_cast<std::size_t>(d) * d) {
    throw DimensionError("SymMatrix: entry count does not match dimension");
  }
  const double scale = max_abs();
  for (int i = 0; i < d_; ++i) {
    for (int j = i + 1; j < d_; ++j) {
      double& ij = a_[static_cast<std::size_t>(i) * d_ + j];
      double& ji = a_[static_cast<std::size_t>(j) * d_ + i];
      if (std::abs(ij - ji) > kSymTol * scale) {
        throw DomainError("SymMatrix: entries are not symmetric");
      }
      const double m = 0.5 * (ij + ji);
      ij = ji = m;
    }
  }
}

SymMatrix SymMatrix::identity(int d) {
  SymMatrix m(d);
  for (int i = 0; i < d; ++i) m.a_[static_cast<std::size_t>(i) * d + i] = 1.0;
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix m(static_cast<int>(diag.size()));
  for (int i = 0; i < m.d_; ++i) m.a_[static_cast<std::size_t>(i) * m.d_ + i] = diag[i];
  return m;
}

void SymMatrix::set(int i, int j, double value) {
  a_[static_cast<std::size_t>(i) * d_ + j] = value;
  a_[static_cast<std::size_t>(j) * d_ + i] = value;
}

void SymMatrix::add_outer(std::span<const double> x, double weight) {
  if (static_cast<int>(x.size()) != d_) {
    throw DimensionError("SymMatrix::add_outer: vector dimension mismatch");
  }
  for (int i = 0; i < d_; ++i) {
    const double wi = weight * x[i];
    for (int j = 0; j < d_; ++j) {
      a_[static_cast<std::size_t>(i) * d_ + j] += wi * x[j];
    }
  }
}

void SymMatrix::add_scaled_identity(double c) {
  for (int i = 0; i < d_; ++i) a_[static_cast<std::size_t>(i) * d_ + i] += c;
}

void SymMatrix::scale(double c) {
  for (double& v : a_) v *= c;
}

std::vector<double> SymMatrix::matvec(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != d_) {
    throw DimensionError("SymMatrix::matvec: vector dimension mismatch");
  }
  std::vector<double> y(static_cast<std::size_t>(d_), 0.0);
  for (int i = 0; i < d_; ++i) {
    double acc = 0.0;
    for (int j = 0; j < d_; ++j) acc += a_[static_cast<std::size_t>(i) * d_ + j] * x[j];
    y[i] = acc;
  }
  return y;
}

double SymMatrix::quad_form(std::span<const double> x) const {
  const auto y = matvec(x);
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

double SymMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (double v : a_) acc += v * v;
  return std::sqrt(acc);
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

SymMatrix SymEigen::reconstruct(std::span<const double> new_eigenvalues) const {
  if (static_cast<int>(new_eigenvalues.size()) != dim) {
    throw DimensionError("SymEigen::reconstruct: eigenvalue count mismatch");
  }
  SymMatrix out(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      double acc = 0.0;
      for (int n = 0; n < dim; ++n) acc += new_eigenvalues[n] * vec(i, n) * vec(j, n);
      out.set(i, j, acc);
    }
  }
  return out;
}

SymEigen sym_eig(const SymMatrix& V) {
  const int d = V.dim();
  SymEigen out;
  out.dim = d;
  out.eigenvalues.resize(d);
  out.eigenvectors.assign(static_cast<std::size_t>(d) * d, 0.0);

  std::vector<double> a = V.data();
  std::vector<double> q(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) q[static_cast<std::size_t>(i) * d + i] = 1.0;
  auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * d + j]; };
  auto Q = [&](int i, int j) -> double& { return q[static_cast<std::size_t>(i) * d + j]; };

  const double frob = V.frobenius_norm();
  const double tol = kSymTol * frob;
  constexpr int kMaxSweeps = 100;

  if (d > 1 && frob > 0.0) {
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
      double off = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) off += 2.0 * A(i, j) * A(i, j);
      if (std::sqrt(off) <= tol) break;

      for (int p = 0; p < d - 1; ++p) {
        for (int r = p + 1; r < d; ++r) {
          const double apr = A(p, r);
          if (apr == 0.0) continue;
          const double theta = (A(r, r) - A(p, p)) / (2.0 * apr);
          const double t = std::copysign(1.0, theta) /
                           (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          // Two-sided rotation in the (p, r) plane.
          const double app = A(p, p), arr = A(r, r);
          A(p, p) = c * c * app - 2.0 * s * c * apr + s * s * arr;
          A(r, r) = s * s * app + 2.0 * s * c * apr + c * c * arr;
          A(p, r) = 0.0;
          A(r, p) = 0.0;
          for (int k = 0; k < d; ++k) {
            if (k == p || k == r) continue;
            const double akp = A(k, p), akr = A(k, r);
            A(k, p) = c * akp - s * akr;
            A(p, k) = A(k, p);
            A(k, r) = s * akp + c * akr;
            A(r, k) = A(k, r);
          }
          for (int k = 0; k < d; ++k) {
            const double qkp = Q(k, p), qkr = Q(k, r);
            Q(k, p) = c * qkp - s * qkr;
            Q(k, r) = s * qkp + c * qkr;
          }
        }
      }
    }
    if (sweep == kMaxSweeps) {
      throw ConvergenceError("sym_eig: Jacobi sweeps exceeded cap");
    }
  }

  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return A(i, i) > A(j, j); });

  for (int n = 0; n < d; ++n) {
    const int src = order[n];
    out.eigenvalues[n] = A(src, src);
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < d; ++i) {
      if (std::abs(Q(i, src)) > best) {
        best = std::abs(Q(i, src));
        arg = i;
      }
    }
    const double flip = Q(arg, src) < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < d; ++i) {
      out.eigenvectors[static_cast<std::size_t>(n) * d + i] = flip * Q(i, src);
    }
  }
  return out;
}

SymMatrix spectral_floor(const SymMatrix& V, double rho) {
  if (!(rho > 0.0)) throw DomainError("spectral_floor: rho must be positive");
  const SymEigen eig = sym_eig(V);
  std::vector<double> floored(eig.eigenvalues);
  for (double& g : floored) g = std::max(g, rho);
  return eig.reconstruct(floored);
}

SymMatrix inv_sqrt(const SymMatrix& V) {
  const SymEigen eig = sym_eig(V);
  const double gmax = eig.max_eigenvalue();
  const double gmin = eig.min_eigenvalue();
  if (!(gmin > kSingularRatio * std::max(gmax, 0.0)) || !(gmin > 0.0)) {
    throw SingularError("inv_sqrt: matrix is numerically singular");
  }
  std::vector<double> inv(eig.eigenvalues);
  for (double& g : inv) g = 1.0 / std::sqrt(g);
  return eig.reconstruct(inv);
}

double condition_number(const SymMatrix& V) {
  const SymEigen eig = sym_eig(V);
  if (!(eig.min_eigenvalue() > 0.0)) return std::numeric_limits<double>::infinity();
  return eig.max_eigenvalue() / eig.min_eigenvalue();
}

double log_det(const SymMatrix& V) {
  const SymEigen eig = sym_eig(V);
  double acc = 0.0;
  for (double g : eig.eigenvalues) acc += std::log(g);
  return acc;
}

std::vector<double> solve_spd(const SymMatrix& V, std::span<const double> b) {
  if (static_cast<int>(b.size()) != V.dim()) {
    throw DimensionError("solve_spd: right-hand side dimension mismatch");
  }
  const SymEigen eig = sym_eig(V);
  const double gmax = eig.max_eigenvalue();
  const double gmin = eig.min_eigenvalue();
  if (!(gmin > kSingularRatio * std::max(gmax, 0.0)) || !(gmin > 0.0)) {
    throw SingularError("solve_spd: matrix is numerically singular");
  }
  const int d = V.dim();
  std::vector<double> x(static_cast<std::size_t>(d), 0.0);
  for (int n = 0; n < d; ++n) {
    double proj = 0.0;
    for (int i = 0; i < d; ++i) proj += eig.vec(i, n) * b[i];
    proj /= eig.eigenvalues[n];
    for (int i = 0; i < d; ++i) x[i] += proj * eig.vec(i, n);
  }
  return x;
}

}  // namespace selfnorm
