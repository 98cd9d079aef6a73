#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rct/field.hpp"
#include "rct/types.hpp"

namespace rct {

enum class LawKind { Semicircle, UniformDisk, BallLaw, SphereUniform };

// Closed-form minimizer of the logarithmic energy with field gamma|x|^2:
// semicircle (d=1), uniform disk (d=2), ball law with inverse square-root
// boundary blowup (d=3), uniform surface measure on a sphere (d>=4).
struct EquilibriumLaw {
  LawKind kind;
  int d;
  double gamma;
  double radius;
};

struct EnergyReport {
  EigenConfig config;      // real-valued minimizer, n rows in R^d
  double energy = 0.0;     // converged value of the discrete functional
  double gradient_norm = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Support radius of the quadratic-field equilibrium law: sqrt(2/gamma),
// 1/sqrt(gamma), sqrt(2/(3 gamma)), 1/sqrt(2 gamma) for d = 1, 2, 3, >= 4.
// For d >= 4 the alpha >= 2 extension (alpha*gamma)^(-1/alpha) is available;
// any other alpha != 2 throws UnsupportedAlpha.
double equilibrium_radius(int d, double gamma, double alpha = 2.0);

EquilibriumLaw make_equilibrium_law(int d, double gamma);

// (1/n^2) sum_{i != j} log 1/|x_i-x_j| + (1/n) sum_i Q(x_i) on real configs.
// Throws CoincidentPoints when a pair coincides.
double discrete_energy(const EigenConfig& x, const ExternalField& Q);

// Descend the n-point energy whose pair term matches discrete_energy and
// whose field term carries weight (n-1)/n^2 (the large-n rate functional;
// its n=2 minimizer for Q=x^2/2 is the pair +-1). Gradient descent with
// backtracking line search, 3 restarts, best result returned; converged=false
// after max_iter without reaching tol (best-so-far still returned).
EnergyReport minimize_energy(int n, int d, const ExternalField& Q,
                             std::uint64_t seed, int max_iter = 5000,
                             double tol = 1e-8);

// Draw `count` i.i.d. points of the law (real-valued config). Semicircle and
// the d=3 radial law go through a tabulated inverse CDF; disk and sphere are
// sampled by closed-form transforms.
EigenConfig sample_equilibrium(const EquilibriumLaw& law, int count,
                               std::uint64_t seed);

// Kolmogorov-Smirnov distance between the empirical law of `samples` and a
// reference CDF (evaluated at the sample points).
double ks_distance_1d(std::vector<double> samples,
                      const std::function<double(double)>& cdf);

// First real coordinate of every point.
std::vector<double> axis_projection(const EigenConfig& points);

}  // namespace rct
