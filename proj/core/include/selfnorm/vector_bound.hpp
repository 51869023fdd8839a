#pragma once

#include <span>

#include "selfnorm/cgf.hpp"
#include "selfnorm/linalg.hpp"
#include "selfnorm/stitching.hpp"

namespace selfnorm {

/// Which analytic bound stands in for the sphere covering number N_{d-1}(eps):
///   simple      (3/eps)^d            (unit-ball volume bound)
///   face_based  C_d (3/eps)^{d-1}    (face decomposition of the l-inf sphere)
enum class CoverBound { simple, face_based };

/// Vector-boundary tuning: the scalar BoundaryParams plus the
/// condition-number spacing beta > 1 and cover mesh epsilon in (0, 1).
struct VectorBoundaryParams {
  BoundaryParams base{};
  double beta = 2.0;
  double epsilon = 0.5;
  CoverBound cover_bound = CoverBound::face_based;
};

/// C_d = 2 d Vol_{d-1}(B^inf_{d-1}) / Vol_{d-1}(B_{d-1}); C_1 = 2.
double face_cover_constant(int d);

/// Covering-number bound for the unit sphere S^{d-1} at mesh eps.
/// face_based returns C_d (3/eps)^{d-1} (so exactly 2 when d = 1);
/// simple returns (3/eps)^d.
double covering_number_bound(int d, double eps, CoverBound mode);

/// The three-term budget
///   L_rho(V) = log h(log_alpha(gmax/rho)) + log(1/(delta (1 - 1/beta))) + cover term,
/// with gmax, kappa taken from V ∨ rho I. The cover term is
///   log(beta sqrt(kappa) C_d (3 beta sqrt(kappa)/eps)^{d-1})   (face_based)
///   d log(3 beta sqrt(kappa)/eps)                              (simple).
double l_rho(const SymMatrix& V, const VectorBoundaryParams& p);
double l_rho_from_eigenvalues(std::span<const double> eigenvalues, const VectorBoundaryParams& p);

/// Closed-form bound on the self-normalized norm ||(V ∨ rho I)^{-1/2} S||:
///   (sqrt(gmin) / (1 - eps)) * (psi*)^{-1}(alpha L_rho(V) / gmin),
/// gmin = gamma_min(V ∨ rho I). Requires a super-Gaussian family.
double vector_boundary(const SymMatrix& V, const CgfFamily& f, const VectorBoundaryParams& p);
double vector_boundary_from_eigenvalues(std::span<const double> eigenvalues, const CgfFamily& f,
                                        const VectorBoundaryParams& p);

/// Sup-form boundary valid for any CGF-like family:
///   (1/(1-eps)) * sup_{x in [gmin, gmax]} sqrt(x) (psi*)^{-1}(alpha L_rho(V)/x),
/// maximized by golden-section search. Coincides with vector_boundary for
/// super-Gaussian families, where the sup sits at x = gmin.
double general_vector_boundary(const SymMatrix& V, const CgfFamily& f,
                               const VectorBoundaryParams& p);
double general_vector_boundary_from_eigenvalues(std::span<const double> eigenvalues,
                                                const CgfFamily& f,
                                                const VectorBoundaryParams& p);

/// ||(V ∨ rho I)^{-1/2} S||_2.
double self_normalized_norm(std::span<const double> s, const SymMatrix& V, double rho);
double self_normalized_norm(std::span<const double> s, const SymEigen& eig, double rho);

}  // namespace selfnorm
