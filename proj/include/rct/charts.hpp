#pragma once

#include <functional>
#include <vector>

#include "rct/types.hpp"

namespace rct {

// Smooth embedding of a real parameter domain into flattened tuple space
// (re/im of every matrix entry, component-major, row-major).
struct ChartMap {
  int domain_dim = 0;
  Eigen::VectorXd base_point;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> embedding;
};

// Unipotent upper-triangular matrix: ones on the diagonal, free strictly
// upper entries (row-major). n = 2 reduces to the single parameter alpha.
struct UnipotentParam {
  int n = 2;
  std::vector<cplx> upper;

  static UnipotentParam from_alpha(cplx alpha) { return {2, {alpha}}; }

  Eigen::MatrixXcd matrix() const;
  Eigen::MatrixXcd inverse() const;
};

struct TangentReport {
  double defect = 0.0;
  bool within_tol = false;
};

// Max over component pairs r<s of ||[Q^r, Z^s] - [Q^s, Z^r]||_F; the symmetry
// characterizing tangent vectors Z at a commuting tuple Q.
TangentReport tangent_check(const MatrixTuple& Q, const MatrixTuple& Z, double tol);

// Real dimension of the solution space of the componentwise tangent relations
// Y^s_ij (l^r_j - l^r_i) = Y^r_ij (l^s_j - l^s_i) at a diagonal tuple with
// joint eigenvalues D; numerical rank via SVD (threshold 1e-9 of the largest
// singular value). triangular_only restricts Y to upper-triangular support.
// Expected: 2n^2 + 2(d-1)n full, n^2 + (2d-1)n triangular.
int tangent_dimension(const EigenConfig& D, bool triangular_only);

// Closed-form conjugation-orbit Jacobian factors (constants fixed to 1).
double kappa_diagonal(const EigenConfig& D);            // prod_{i<j} |l_i-l_j|^2
double kappa_d1(const Eigen::VectorXcd& eigenvalues);   // same, single matrix
double kappa_n2(const Eigen::VectorXcd& lambda1,
                const Eigen::VectorXcd& lambda2);       // |l2-l1|^2

// Gram matrix of the n=2 triangular chart differential in the orthonormal
// basis (diag units per component, E_12): (2d+1) x (2d+1), self-adjoint.
Eigen::MatrixXcd gamma_matrix_2x2(const Eigen::VectorXcd& lambda1,
                                  const Eigen::VectorXcd& lambda2, cplx alpha);

// det of the above via its Schur complement: leading block (1+2|a|^2)^d
// times complement |D|^2/(1+2|a|^2).
double gamma_det_closed(const Eigen::VectorXcd& lambda1,
                        const Eigen::VectorXcd& lambda2, cplx alpha);

// Numeric Gram matrix of the triangular chart differential at (D, A) for
// n <= 3, assembled from the exact linear differential (no finite
// differences); same basis convention as gamma_matrix_2x2 when n = 2.
Eigen::MatrixXcd gamma_matrix_numeric(const EigenConfig& D, const UnipotentParam& A);

// Numeric unitary-directions Jacobian factor at an upper-triangular tuple Q:
// Gram determinant of S -> (ad_Q S) projected off the triangular tangent
// space, over the orthonormal real basis of zero-diagonal skew-Hermitian
// matrices. Equals 2^{-n(n-1)/2} prod |l_i-l_j|^2 at diagonal tuples.
double kappa_numeric(const MatrixTuple& Q);

// sqrt|det(J^T J)| of the chart embedding by central finite differences at
// base_point, Richardson-extrapolated over step and step/2. Throws
// UnstableDerivative when halving the step moves the result by > 1e-3 rel.
double numeric_gram_jacobian(const ChartMap& chart, double step = 1e-5);

// Chart factories used by the Jacobian cross-checks.
// Self-adjoint sector: (theta, S) -> e^S (D + D_theta) e^{-S} at (0, 0); the
// Gram determinant there equals prod_{i<j} |l_i - l_j|^2.
ChartMap make_hermitian_chart(const EigenConfig& D);
// Triangular sector: (Dt, At) -> At Dt At^{-1}, parameters at their values.
ChartMap make_triangular_chart(const EigenConfig& D, const UnipotentParam& A);

// Log integrand of the triangular-coordinates eigenvalue-law integral for the
// Gaussian weight exp(-gamma ||X||_F^2): log of
// w1(||D||_F^2) w2(||A D A^{-1} - D||_F^2) kappa(Q) |det Gamma|, constants
// dropped. Closed forms at n = 2; exact-differential numerics at n = 3;
// UnsupportedSize beyond.
double log_unipotent_integrand(const EigenConfig& D, const UnipotentParam& A,
                               double gamma);

}  // namespace rct
