#pragma once

#include <Eigen/Dense>

#include "rct/field.hpp"
#include "rct/types.hpp"

namespace rct {

// Log of an unnormalized density. finite_flag is false exactly at coincident
// points, where the law either vanishes (log_value = -inf) or blows up
// (log_value = +inf); consumers must branch on it before using log_value.
struct DensityReport {
  double log_value = 0.0;
  bool finite_flag = true;
};

// -sum_j Q(lambda_j) + 2 sum_{i<j} log |lambda_i - lambda_j| (Euclidean
// distance between points). Coincident pair -> {-inf, false}.
DensityReport log_ginibre_density(const EigenConfig& lambda, const ExternalField& Q);

// Scaled version: -n sum_j Q(y_j) + 2 sum_{i<j} log |y_i - y_j|.
DensityReport log_scaled_density(const EigenConfig& y, const ExternalField& Q);

// sum_{i<j} log |y_i - y_j|^{-2} + (n-1) sum_i Q(y_i).
// Throws CoincidentPoints on a coincident pair.
double k_n_functional(const EigenConfig& y, const ExternalField& Q);

// Log of the eigenvalue pair density for d-tuples of 2x2 matrices:
// exp(-gamma(|l1|^2+|l2|^2)) |D|^2 sum_{j<d} (1/(d-1-j)!) (2^j/gamma^{j+1}) |D|^{-2j}
// with D = l2 - l1 in C^d. At D = 0: d=1 vanishes (-inf sentinel), d=2 has the
// finite limit log(2/gamma^2) + Gaussian part, d>=3 diverges (+inf sentinel).
DensityReport log_rho_2x2(const Eigen::VectorXcd& lambda1,
                          const Eigen::VectorXcd& lambda2, int d, double gamma);

// Closed form of int_0^inf exp(-k r^2) (1+2r^2)^{d-1} r dr =
// sum_{j<d} binom(d-1,j) 2^j j! / (2 k^{j+1}).
double radial_integral(int d, double k);

// One-axis projection density f_d of the quadratic-field equilibrium law:
// semicircle profile (2/(pi R^2)) sqrt(R^2-x^2) for d <= 3, and
// Gamma(d/2)/(sqrt(pi) R^{d-2} Gamma((d-1)/2)) (R^2-x^2)^{(d-3)/2} for d >= 4;
// zero outside [-R, R], R = equilibrium_radius(d, gamma).
double projected_density(int d, double gamma, double x);

}  // namespace rct
