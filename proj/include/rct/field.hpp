#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "rct/errors.hpp"

namespace rct {

// Confining potential Q(x) = gamma * |x|^alpha on R^d (Euclidean norm).
// gamma = 0 gives the free (fieldless) functional; confinement needs
// gamma > 0, which minimizers and equilibrium laws check on their own.
struct ExternalField {
  double gamma = 1.0;
  double alpha = 2.0;

  ExternalField() = default;
  ExternalField(double g, double a = 2.0) : gamma(g), alpha(a) {
    if (!(gamma >= 0.0)) throw ConfigError("gamma must be non-negative");
    if (!(alpha >= 1.0)) throw ConfigError("alpha must be >= 1");
  }

  double operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    return from_norm(x.norm());
  }

  double from_norm(double r) const { return gamma * std::pow(r, alpha); }

  // Gradient gamma * alpha * |x|^{alpha-2} x; zero at the origin for alpha >= 2.
  Eigen::VectorXd gradient(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    double r = x.norm();
    if (r == 0.0) return Eigen::VectorXd::Zero(x.size());
    return gamma * alpha * std::pow(r, alpha - 2.0) * x;
  }
};

}  // namespace rct
