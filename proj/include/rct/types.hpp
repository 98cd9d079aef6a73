#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "rct/errors.hpp"

namespace rct {

using cplx = std::complex<double>;

// d-tuple of n×n complex matrices. Components share one size; hermitian is a
// promise (each component self-adjoint within 1e-12 Frobenius), not enforced
// on every mutation, and validate() checks it on demand.
struct MatrixTuple {
  std::vector<Eigen::MatrixXcd> comps;
  bool hermitian = false;

  int d() const { return static_cast<int>(comps.size()); }
  int n() const { return comps.empty() ? 0 : static_cast<int>(comps[0].rows()); }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& m : comps) s += m.squaredNorm();
    return std::sqrt(s);
  }

  void validate() const {
    if (comps.empty()) throw ShapeMismatch("tuple has no components");
    const Eigen::Index nn = comps[0].rows();
    for (const auto& m : comps) {
      if (m.rows() != nn || m.cols() != nn)
        throw ShapeMismatch("components must be square and of equal size");
    }
    if (hermitian) {
      for (const auto& m : comps) {
        if ((m - m.adjoint()).norm() > 1e-12 * std::max(1.0, m.norm()))
          throw NotHermitian("hermitian flag set on non-self-adjoint component");
      }
    }
  }
};

// Configuration of n spectral points in C^d (rows = points). real_valued
// marks configurations living in R^d: imaginary parts are identically zero
// and samplers must not perturb them.
struct EigenConfig {
  Eigen::MatrixXcd points;  // n rows, d columns
  bool real_valued = false;

  int n() const { return static_cast<int>(points.rows()); }
  int d() const { return static_cast<int>(points.cols()); }

  // Euclidean distance between points i and j in C^d ≅ R^{2d}.
  double dist(int i, int j) const { return (points.row(i) - points.row(j)).norm(); }

  bool finite() const { return points.allFinite(); }
};

// Multiplicity pattern r_1 ≥ r_2 ≥ ... ≥ r_p ≥ 1 of joint eigenvalues.
struct Banner {
  std::vector<int> multiplicities;

  int p() const { return static_cast<int>(multiplicities.size()); }

  bool valid_for(int n) const {
    if (multiplicities.empty()) return false;
    int sum = 0, prev = 1 << 30;
    for (int r : multiplicities) {
      if (r < 1 || r > prev) return false;
      prev = r;
      sum += r;
    }
    return sum == n;
  }
};

}  // namespace rct
