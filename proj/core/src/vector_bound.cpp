#include "selfnorm/vector_bound.hpp"

#include <algorithm>
#include <cmath>

namespace selfnorm {

namespace {

void validate(const VectorBoundaryParams& p) {
  if (!(p.beta > 1.0) || !std::isfinite(p.beta)) {
    throw DomainError("VectorBoundaryParams: beta must exceed 1");
  }
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) {
    throw DomainError("VectorBoundaryParams: epsilon must lie in (0, 1)");
  }
}

struct FlooredSpectrum {
  double gmax = 0.0;
  double gmin = 0.0;
  double kappa = 1.0;
};

FlooredSpectrum floor_spectrum(std::span<const double> eigenvalues, double rho) {
  if (eigenvalues.empty()) throw DimensionError("empty eigenvalue list");
  FlooredSpectrum fs;
  auto [mn, mx] = std::minmax_element(eigenvalues.begin(), eigenvalues.end());
  fs.gmax = std::max(*mx, rho);
  fs.gmin = std::max(*mn, rho);
  fs.kappa = fs.gmax / fs.gmin;
  return fs;
}

}  // namespace

double face_cover_constant(int d) {
  if (d < 1) throw DomainError("face_cover_constant: d must be at least 1");
  // 2d * Vol(B^inf_{d-1}) / Vol(B_{d-1}) with Vol(B^inf_k) = 2^k and
  // Vol(B_k) = pi^{k/2} / Gamma(k/2 + 1); both volumes are 1 at k = 0.
  const double k = d - 1.0;
  return 2.0 * d * std::pow(2.0, k) * std::tgamma(0.5 * k + 1.0) / std::pow(M_PI, 0.5 * k);
}

double covering_number_bound(int d, double eps, CoverBound mode) {
  if (d < 1) throw DomainError("covering_number_bound: d must be at least 1");
  if (!(eps > 0.0 && eps < 1.0)) {
    throw DomainError("covering_number_bound: eps must lie in (0, 1)");
  }
  switch (mode) {
    case CoverBound::simple:
      return std::pow(3.0 / eps, d);
    case CoverBound::face_based:
      return face_cover_constant(d) * std::pow(3.0 / eps, d - 1.0);
  }
  return 0.0;
}

double l_rho_from_eigenvalues(std::span<const double> eigenvalues, const VectorBoundaryParams& p) {
  validate(p);
  const int d = static_cast<int>(eigenvalues.size());
  const auto fs = floor_spectrum(eigenvalues, p.base.rho);
  const double sk = std::sqrt(fs.kappa);

  const double epoch_term =
      std::log(p.base.stitch(std::log(fs.gmax / p.base.rho) / std::log(p.base.alpha)));
  const double budget_term = std::log(1.0 / (p.base.delta * (1.0 - 1.0 / p.beta)));

  double cover_term = 0.0;
  switch (p.cover_bound) {
    case CoverBound::face_based:
      // log(beta sqrt(kappa) * C_d * (3 beta sqrt(kappa)/eps)^{d-1})
      cover_term = std::log(p.beta * sk * face_cover_constant(d)) +
                   (d - 1.0) * std::log(3.0 * p.beta * sk / p.epsilon);
      break;
    case CoverBound::simple:
      // The whole product collapses into d log(3 beta sqrt(kappa)/eps): the
      // beta sqrt(kappa) prefactor is absorbed by one extra 3/eps > 1 factor.
      cover_term = d * std::log(3.0 * p.beta * sk / p.epsilon);
      break;
  }
  return epoch_term + budget_term + cover_term;
}

double l_rho(const SymMatrix& V, const VectorBoundaryParams& p) {
  return l_rho_from_eigenvalues(sym_eig(V).eigenvalues, p);
}

double vector_boundary_from_eigenvalues(std::span<const double> eigenvalues, const CgfFamily& f,
                                        const VectorBoundaryParams& p) {
  if (!f.is_super_gaussian()) {
    throw NotSuperGaussianError(
        "vector_boundary: family is not super-Gaussian; use general_vector_boundary");
  }
  const double L = l_rho_from_eigenvalues(eigenvalues, p);
  const double gmin = floor_spectrum(eigenvalues, p.base.rho).gmin;
  return std::sqrt(gmin) / (1.0 - p.epsilon) * f.conjugate_inverse(p.base.alpha * L / gmin);
}

double vector_boundary(const SymMatrix& V, const CgfFamily& f, const VectorBoundaryParams& p) {
  return vector_boundary_from_eigenvalues(sym_eig(V).eigenvalues, f, p);
}

double general_vector_boundary_from_eigenvalues(std::span<const double> eigenvalues,
                                                const CgfFamily& f,
                                                const VectorBoundaryParams& p) {
  const double L = l_rho_from_eigenvalues(eigenvalues, p);
  const auto fs = floor_spectrum(eigenvalues, p.base.rho);
  const double aL = p.base.alpha * L;
  auto g = [&](double x) { return std::sqrt(x) * f.conjugate_inverse(aL / x); };

  double lo = fs.gmin, hi = fs.gmax;
  double best = std::max(g(lo), g(hi));
  if (hi - lo > 1e-12 * hi) {
    // Golden-section search for the interior maximum of the unimodal g.
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = g(x1), f2 = g(x2);
    while (hi - lo > 1e-10 * hi) {
      if (f1 >= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - invphi * (hi - lo);
        f1 = g(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + invphi * (hi - lo);
        f2 = g(x2);
      }
    }
    best = std::max({best, f1, f2});
  }
  return best / (1.0 - p.epsilon);
}

double general_vector_boundary(const SymMatrix& V, const CgfFamily& f,
                               const VectorBoundaryParams& p) {
  return general_vector_boundary_from_eigenvalues(sym_eig(V).eigenvalues, f, p);
}

double self_normalized_norm(std::span<const double> s, const SymEigen& eig, double rho) {
  if (static_cast<int>(s.size()) != eig.dim) {
    throw DimensionError("self_normalized_norm: dimension mismatch");
  }
  if (!(rho > 0.0)) throw DomainError("self_normalized_norm: rho must be positive");
  double acc = 0.0;
  for (int n = 0; n < eig.dim; ++n) {
    double proj = 0.0;
    for (int i = 0; i < eig.dim; ++i) proj += eig.vec(i, n) * s[i];
    acc += proj * proj / std::max(eig.eigenvalues[n], rho);
  }
  return std::sqrt(acc);
}

double self_normalized_norm(std::span<const double> s, const SymMatrix& V, double rho) {
  return self_normalized_norm(s, sym_eig(V), rho);
}

}  // namespace selfnorm
