#pragma once

#include <functional>
#include <vector>

namespace rct {

// Adaptive Simpson on [a, b] to absolute tolerance tol (with recursion cap;
// endpoint square-root behavior is handled by the subdivision). Tolerances
// below the roundoff plateau of the integrand are clamped panel-by-panel, so
// an over-tight tol degrades to ~1e-15 relative instead of hanging.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 52);

// Monotone piecewise-linear CDF table of an (unnormalized) density on [a, b],
// built from a composite-Simpson prefix scan on `knots` panels, then
// normalized to total mass 1. Supports evaluation and inversion by bisection.
class CdfTable {
 public:
  CdfTable(const std::function<double(double)>& density, double a, double b,
           int knots = 10000);

  double total_mass() const { return raw_mass_; }  // before normalization
  double cdf(double x) const;
  double inverse(double u) const;  // u in [0, 1]

 private:
  std::vector<double> x_, F_;
  double raw_mass_ = 0.0;
};

}  // namespace rct
