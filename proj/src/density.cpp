#include "rct/density.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "rct/equilibrium.hpp"
#include "rct/util.hpp"

namespace rct {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double field_at(const ExternalField& Q, const EigenConfig& cfg, int i) {
  // Point norm in C^d coincides with the Euclidean norm of the realification,
  // so one code path serves real and complex configurations.
  return Q.from_norm(cfg.points.row(i).norm());
}

// 2 sum_{i<j} log r_ij, canonically summed; returns -inf on coincidence.
double repulsion_sum(const EigenConfig& cfg, bool* coincident) {
  std::vector<double> terms;
  const int n = cfg.n();
  terms.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  *coincident = false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double r = cfg.dist(i, j);
      if (r == 0.0) {
        *coincident = true;
        return -kInf;
      }
      terms.push_back(2.0 * std::log(r));
    }
  return stable_sum(terms);
}

double field_total(const EigenConfig& cfg, const ExternalField& Q) {
  std::vector<double> terms;
  terms.reserve(cfg.n());
  for (int i = 0; i < cfg.n(); ++i) terms.push_back(field_at(Q, cfg, i));
  return stable_sum(terms);
}

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

double log_sum_exp(const std::vector<double>& logs) {
  double peak = -kInf;
  for (double v : logs) peak = std::max(peak, v);
  if (!std::isfinite(peak)) return peak;
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - peak);
  return peak + std::log(acc);
}

}  // namespace

DensityReport log_ginibre_density(const EigenConfig& lambda, const ExternalField& Q) {
  if (lambda.n() < 1) throw ShapeMismatch("empty configuration");
  if (!lambda.finite()) throw NonFinitePoint("configuration has non-finite entries");
  bool coincident = false;
  double rep = repulsion_sum(lambda, &coincident);
  if (coincident) return {-kInf, false};
  return {rep - field_total(lambda, Q), true};
}

DensityReport log_scaled_density(const EigenConfig& y, const ExternalField& Q) {
  if (y.n() < 1) throw ShapeMismatch("empty configuration");
  if (!y.finite()) throw NonFinitePoint("configuration has non-finite entries");
  bool coincident = false;
  double rep = repulsion_sum(y, &coincident);
  if (coincident) return {-kInf, false};
  return {rep - static_cast<double>(y.n()) * field_total(y, Q), true};
}

double k_n_functional(const EigenConfig& y, const ExternalField& Q) {
  if (y.n() < 1) throw ShapeMismatch("empty configuration");
  bool coincident = false;
  double rep = repulsion_sum(y, &coincident);
  if (coincident) throw CoincidentPoints("functional undefined at coincident points");
  return -rep + static_cast<double>(y.n() - 1) * field_total(y, Q);
}

DensityReport log_rho_2x2(const Eigen::VectorXcd& lambda1,
                          const Eigen::VectorXcd& lambda2, int d, double gamma) {
  if (d < 1) throw ShapeMismatch("d must be positive");
  if (lambda1.size() != d || lambda2.size() != d)
    throw ShapeMismatch("eigenvalue points must have d components");
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");

  const double gauss = -gamma * (lambda1.squaredNorm() + lambda2.squaredNorm());
  const double delta_sq = (lambda2 - lambda1).squaredNorm();

  if (delta_sq == 0.0) {
    if (d == 1) return {-kInf, false};
    if (d == 2) return {std::log(2.0 / (gamma * gamma)) + gauss, true};
    return {kInf, false};
  }

  // log of |D|^2 * sum_j (1/(d-1-j)!) (2^j / gamma^{j+1}) |D|^{-2j}, assembled
  // in log space so small gaps at large d cannot overflow.
  const double log_u = std::log(delta_sq);
  std::vector<double> logs(d);
  for (int j = 0; j < d; ++j) {
    logs[j] = (1.0 - j) * log_u + j * std::log(2.0) -
              (j + 1) * std::log(gamma) - std::log(factorial(d - 1 - j));
  }
  return {gauss + log_sum_exp(logs), true};
}

double radial_integral(int d, double k) {
  if (d < 1) throw ShapeMismatch("d must be positive");
  if (!(k > 0.0)) throw ConfigError("k must be positive");
  double total = 0.0;
  double binom = 1.0;  // binom(d-1, j), updated incrementally
  for (int j = 0; j < d; ++j) {
    total += binom * std::pow(2.0, j) * factorial(j) / (2.0 * std::pow(k, j + 1));
    binom *= static_cast<double>(d - 1 - j) / (j + 1);
  }
  return total;
}

double projected_density(int d, double gamma, double x) {
  const double R = equilibrium_radius(d, gamma);
  const double gap = R * R - x * x;
  if (gap <= 0.0) return 0.0;
  if (d <= 3) return 2.0 / (M_PI * R * R) * std::sqrt(gap);
  double log_coeff = std::lgamma(0.5 * d) - std::lgamma(0.5 * (d - 1)) -
                     0.5 * std::log(M_PI) - (d - 2) * std::log(R);
  return std::exp(log_coeff + 0.5 * (d - 3) * std::log(gap));
}

}  // namespace rct
