#include "rct/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>

#include "rct/quadrature.hpp"
#include "rct/rng.hpp"
#include "rct/util.hpp"

namespace rct {

double equilibrium_radius(int d, double gamma, double alpha) {
  if (d < 1) throw ShapeMismatch("d must be positive");
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (alpha == 2.0) {
    switch (d) {
      case 1: return std::sqrt(2.0 / gamma);
      case 2: return 1.0 / std::sqrt(gamma);
      case 3: return std::sqrt(2.0 / (3.0 * gamma));
      default: return 1.0 / std::sqrt(2.0 * gamma);
    }
  }
  if (d >= 4 && alpha > 2.0) return std::pow(alpha * gamma, -1.0 / alpha);
  throw UnsupportedAlpha("closed-form radius needs alpha = 2 (or d >= 4, alpha > 2)");
}

EquilibriumLaw make_equilibrium_law(int d, double gamma) {
  EquilibriumLaw law;
  law.d = d;
  law.gamma = gamma;
  law.radius = equilibrium_radius(d, gamma);
  switch (d) {
    case 1: law.kind = LawKind::Semicircle; break;
    case 2: law.kind = LawKind::UniformDisk; break;
    case 3: law.kind = LawKind::BallLaw; break;
    default: law.kind = LawKind::SphereUniform; break;
  }
  return law;
}

namespace {

Eigen::MatrixXd real_points(const EigenConfig& x) {
  return x.points.real();
}

// Pair term sum_{i<j} log(1/r_ij), canonically summed.
double half_pair_sum(const Eigen::MatrixXd& pts) {
  const int n = static_cast<int>(pts.rows());
  std::vector<double> terms;
  terms.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double r = (pts.row(i) - pts.row(j)).norm();
      if (r == 0.0) throw CoincidentPoints("points " + std::to_string(i) + " and " +
                                           std::to_string(j) + " coincide");
      terms.push_back(-std::log(r));
    }
  return stable_sum(terms);
}

double field_sum(const Eigen::MatrixXd& pts, const ExternalField& Q) {
  std::vector<double> terms;
  terms.reserve(pts.rows());
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    terms.push_back(Q(pts.row(i).transpose()));
  return stable_sum(terms);
}

// Objective descended by minimize_energy: (2 S_pair + (n-1) S_field) / n^2,
// i.e. the rate functional; +inf (no throw) at coincident points so the line
// search backs off instead of aborting.
double rate_objective(const Eigen::MatrixXd& pts, const ExternalField& Q) {
  const int n = static_cast<int>(pts.rows());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((pts.row(i) - pts.row(j)).squaredNorm() == 0.0)
        return std::numeric_limits<double>::infinity();
  double pair = half_pair_sum(pts);
  double field = field_sum(pts, Q);
  return (2.0 * pair + (n - 1) * field) / (static_cast<double>(n) * n);
}

Eigen::MatrixXd rate_gradient(const Eigen::MatrixXd& pts, const ExternalField& Q) {
  const int n = static_cast<int>(pts.rows());
  const double n2 = static_cast<double>(n) * n;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(pts.rows(), pts.cols());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Eigen::RowVectorXd diff = pts.row(i) - pts.row(j);
      double r2 = diff.squaredNorm();
      // d/dx_i of -(2/n^2) log r_ij = -(2/n^2) (x_i-x_j)/r^2; reaction on j.
      Eigen::RowVectorXd pull = (2.0 / n2) * diff / r2;
      g.row(i) -= pull;
      g.row(j) += pull;
    }
    g.row(i) += ((n - 1) / n2) * Q.gradient(pts.row(i).transpose()).transpose();
  }
  return g;
}

struct DescentResult {
  Eigen::MatrixXd pts;
  double f = std::numeric_limits<double>::infinity();
  double gnorm = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iterations = 0;
};

DescentResult descend(Eigen::MatrixXd pts, const ExternalField& Q, int max_iter,
                      double tol) {
  DescentResult res;
  double f = rate_objective(pts, Q);
  Eigen::MatrixXd g = rate_gradient(pts, Q);
  double step = 0.1;
  Eigen::MatrixXd prev_pts, prev_g;
  int it = 0;
  for (; it < max_iter; ++it) {
    double gnorm = g.norm();
    if (gnorm <= tol) {
      res.converged = true;
      break;
    }
    // Barzilai-Borwein step guess, clamped, then Armijo backtracking.
    if (it > 0) {
      Eigen::MatrixXd dx = pts - prev_pts;
      Eigen::MatrixXd dg = g - prev_g;
      double num = (dx.array() * dg.array()).sum();
      double den = (dg.array() * dg.array()).sum();
      if (den > 0.0 && num > 0.0) step = num / den;
    }
    step = std::clamp(step, 1e-14, 1e4);

    prev_pts = pts;
    prev_g = g;
    double t = step;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      Eigen::MatrixXd trial = pts - t * g;
      double ft = rate_objective(trial, Q);
      if (ft <= f - 1e-4 * t * gnorm * gnorm) {
        pts = std::move(trial);
        f = ft;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;  // line search exhausted: gradient is numerically flat
    g = rate_gradient(pts, Q);
  }
  res.pts = std::move(pts);
  res.f = f;
  res.gnorm = rate_gradient(res.pts, Q).norm();
  res.iterations = it;
  if (res.gnorm <= tol) res.converged = true;
  return res;
}

}  // namespace

double discrete_energy(const EigenConfig& x, const ExternalField& Q) {
  const int n = x.n();
  if (n < 1) throw ShapeMismatch("empty configuration");
  Eigen::MatrixXd pts = real_points(x);
  double pair = n > 1 ? half_pair_sum(pts) : 0.0;
  double field = field_sum(pts, Q);
  return 2.0 * pair / (static_cast<double>(n) * n) + field / n;
}

EnergyReport minimize_energy(int n, int d, const ExternalField& Q,
                             std::uint64_t seed, int max_iter, double tol) {
  if (n < 1 || d < 1) throw ShapeMismatch("n and d must be positive");
  const double init_scale = 1.0 / std::sqrt(2.0 * Q.gamma);
  const int restarts = 3;

  auto run = [&](int idx) {
    auto rng = rng_stream(seed, static_cast<std::uint64_t>(idx));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd pts(n, d);
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < d; ++c) pts(i, c) = init_scale * gauss(rng);
    return descend(std::move(pts), Q, max_iter, tol);
  };

  std::vector<DescentResult> results(restarts);
  if (max_threads() > 1) {
    std::vector<std::future<DescentResult>> futs;
    futs.reserve(restarts);
    for (int i = 0; i < restarts; ++i)
      futs.push_back(std::async(std::launch::async, run, i));
    for (int i = 0; i < restarts; ++i) results[i] = futs[i].get();
  } else {
    for (int i = 0; i < restarts; ++i) results[i] = run(i);
  }

  int best = 0;
  for (int i = 1; i < restarts; ++i)
    if (results[i].f < results[best].f) best = i;

  EnergyReport rep;
  rep.config.points = results[best].pts.cast<cplx>();
  rep.config.real_valued = true;
  rep.energy = results[best].f;
  rep.gradient_norm = results[best].gnorm;
  rep.converged = results[best].converged;
  rep.iterations = results[best].iterations;
  return rep;
}

EigenConfig sample_equilibrium(const EquilibriumLaw& law, int count,
                               std::uint64_t seed) {
  if (count < 1) throw ConfigError("count must be positive");
  auto rng = rng_stream(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double R = law.radius;

  EigenConfig out;
  out.points = Eigen::MatrixXcd::Zero(count, law.d);
  out.real_valued = true;

  switch (law.kind) {
    case LawKind::Semicircle: {
      CdfTable table([R](double x) { return std::sqrt(std::max(0.0, R * R - x * x)); },
                     -R, R);
      for (int i = 0; i < count; ++i)
        out.points(i, 0) = cplx(table.inverse(unif(rng)), 0.0);
      break;
    }
    case LawKind::UniformDisk: {
      for (int i = 0; i < count; ++i) {
        double r = R * std::sqrt(unif(rng));
        double th = 2.0 * M_PI * unif(rng);
        out.points(i, 0) = cplx(r * std::cos(th), 0.0);
        out.points(i, 1) = cplx(r * std::sin(th), 0.0);
      }
      break;
    }
    case LawKind::BallLaw: {
      // Radial density r^2/sqrt(R^2-r^2) dr becomes R^2 sin^2(u) du under
      // r = R sin u, removing the boundary blowup before tabulation.
      CdfTable table([](double u) { double s = std::sin(u); return s * s; }, 0.0,
                     0.5 * M_PI);
      for (int i = 0; i < count; ++i) {
        double r = R * std::sin(table.inverse(unif(rng)));
        Eigen::Vector3d dir;
        do {
          dir << gauss(rng), gauss(rng), gauss(rng);
        } while (dir.norm() == 0.0);
        dir.normalize();
        for (int c = 0; c < 3; ++c) out.points(i, c) = cplx(r * dir[c], 0.0);
      }
      break;
    }
    case LawKind::SphereUniform: {
      for (int i = 0; i < count; ++i) {
        Eigen::VectorXd dir(law.d);
        do {
          for (int c = 0; c < law.d; ++c) dir[c] = gauss(rng);
        } while (dir.norm() == 0.0);
        dir *= R / dir.norm();
        for (int c = 0; c < law.d; ++c) out.points(i, c) = cplx(dir[c], 0.0);
      }
      break;
    }
  }
  return out;
}

double ks_distance_1d(std::vector<double> samples,
                      const std::function<double(double)>& cdf) {
  if (samples.empty()) throw EmptySamples("KS distance needs at least one sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double worst = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    double F = cdf(samples[i]);
    worst = std::max(worst, std::abs(F - static_cast<double>(i + 1) / n));
    worst = std::max(worst, std::abs(F - static_cast<double>(i) / n));
  }
  return worst;
}

std::vector<double> axis_projection(const EigenConfig& points) {
  std::vector<double> out;
  out.reserve(points.n());
  for (int i = 0; i < points.n(); ++i) out.push_back(points.points(i, 0).real());
  return out;
}

}  // namespace rct
