#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rct/density.hpp"
#include "rct/equilibrium.hpp"
#include "rct/field.hpp"
#include "rct/mcmc.hpp"
#include "rct/quadrature.hpp"

using rct::cplx;

namespace {

rct::EigenConfig real_point(double x) {
  Eigen::MatrixXcd pts(1, 1);
  pts(0, 0) = cplx(x, 0.0);
  return {pts, true};
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Standard error estimated from means of consecutive batches, so autocorrelated
// chain output still gets an honest uncertainty.
double batch_se(const std::vector<double>& v, int batches) {
  int len = static_cast<int>(v.size()) / batches;
  std::vector<double> means;
  for (int b = 0; b < batches; ++b) {
    double s = 0.0;
    for (int i = 0; i < len; ++i) s += v[static_cast<size_t>(b * len + i)];
    means.push_back(s / len);
  }
  double m = mean_of(means);
  double var = 0.0;
  for (double x : means) var += (x - m) * (x - m);
  var /= (batches - 1);
  return std::sqrt(var / batches);
}

}  // namespace

TEST_CASE("accept_probability") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(rct::accept_probability(-1.0, -0.5) == 1.0);
  CHECK(rct::accept_probability(-0.5, -1.0) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(rct::accept_probability(-1.0, -1.0) == 1.0);
  CHECK(rct::accept_probability(-1.0, -inf) == 0.0);
  CHECK(rct::accept_probability(-1.0, inf) == 0.0);
  CHECK(rct::accept_probability(-1.0, std::nan("")) == 0.0);
  CHECK(rct::accept_probability(-inf, -1.0) == 1.0);
}

TEST_CASE("chain reproduces a standard Gaussian") {
  auto target = [](const rct::EigenConfig& c) {
    double x = c.points(0, 0).real();
    return -0.5 * x * x;
  };
  rct::ChainConfig cfg;
  cfg.seed = 5;
  cfg.length = 102000;
  cfg.burn_in = 2000;
  cfg.thin = 5;
  cfg.proposal_sigma = 2.5;
  auto res = rct::sample_chain(target, real_point(0.3), cfg);
  REQUIRE(res.samples.size() == 20000);
  CHECK(res.acceptance_rate > 0.2);
  CHECK(res.acceptance_rate < 0.6);

  std::vector<double> xs;
  for (const auto& s : res.samples) xs.push_back(s.points(0, 0).real());
  double se = batch_se(xs, 100);
  CHECK(std::abs(mean_of(xs)) < 4.0 * se);
  double var = 0.0;
  for (double x : xs) var += x * x;
  var /= static_cast<double>(xs.size());
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("chains are bitwise reproducible and seed sensitive") {
  auto target = [](const rct::EigenConfig& c) {
    return -c.points.squaredNorm();
  };
  Eigen::MatrixXcd init(2, 2);
  init << cplx(0.1, 0.2), cplx(-0.3, 0.0), cplx(0.5, -0.1), cplx(0.0, 0.4);
  rct::ChainConfig cfg;
  cfg.seed = 99;
  cfg.length = 3000;
  cfg.burn_in = 500;
  cfg.thin = 3;
  auto a = rct::sample_chain(target, {init, false}, cfg);
  auto b = rct::sample_chain(target, {init, false}, cfg);
  REQUIRE(a.samples.size() == b.samples.size());
  for (size_t i = 0; i < a.samples.size(); ++i)
    CHECK((a.samples[i].points - b.samples[i].points).norm() == 0.0);
  CHECK(a.acceptance_rate == b.acceptance_rate);
  CHECK(a.final_sigma == b.final_sigma);

  cfg.seed = 100;
  auto c = rct::sample_chain(target, {init, false}, cfg);
  double diff = 0.0;
  for (size_t i = 0; i < a.samples.size(); ++i)
    diff += (a.samples[i].points - c.samples[i].points).norm();
  CHECK(diff > 0.0);
}

TEST_CASE("real-valued configurations never grow imaginary parts") {
  auto target = [](const rct::EigenConfig& c) {
    return -c.points.squaredNorm();
  };
  Eigen::MatrixXcd init(3, 2);
  init.setZero();
  init(0, 0) = cplx(0.5, 0.0);
  init(1, 1) = cplx(-0.5, 0.0);
  rct::ChainConfig cfg;
  cfg.seed = 12;
  cfg.length = 2000;
  cfg.burn_in = 100;
  auto res = rct::sample_chain(target, {init, true}, cfg);
  for (const auto& s : res.samples) {
    CHECK(s.real_valued);
    CHECK(s.points.imag().norm() == 0.0);
  }
}

TEST_CASE("a chain started where the target vanishes is rejected") {
  rct::ExternalField Q(1.0);
  Eigen::MatrixXcd init(2, 1);
  init << cplx(1.0, 0.0), cplx(1.0, 0.0);  // coincident: log density -inf
  auto target = [&Q](const rct::EigenConfig& c) {
    return rct::log_scaled_density(c, Q).log_value;
  };
  rct::ChainConfig cfg;
  cfg.seed = 1;
  CHECK_THROWS_AS(rct::sample_chain(target, {init, false}, cfg),
                  rct::InitNotFinite);
}

TEST_CASE("a chain that can never move reports zero acceptance") {
  Eigen::MatrixXcd init(1, 1);
  init(0, 0) = cplx(0.0, 0.0);
  auto target = [](const rct::EigenConfig& c) {
    // Finite only at the exact initial point; every proposal is rejected.
    return c.points(0, 0) == cplx(0.0, 0.0)
               ? 0.0
               : -std::numeric_limits<double>::infinity();
  };
  rct::ChainConfig cfg;
  cfg.seed = 2;
  cfg.length = 3000;
  cfg.burn_in = 200;
  cfg.adapt = false;
  CHECK_THROWS_AS(rct::sample_chain(target, {init, false}, cfg),
                  rct::ZeroAcceptance);
}

TEST_CASE("sample count and adaptation window bookkeeping") {
  auto target = [](const rct::EigenConfig& c) {
    return -c.points.squaredNorm();
  };
  rct::ChainConfig cfg;
  cfg.seed = 3;
  cfg.length = 1037;
  cfg.burn_in = 100;
  cfg.thin = 7;
  auto res = rct::sample_chain(target, real_point(0.0), cfg);
  CHECK(res.samples.size() == (1037 - 100) / 7);

  // Without burn-in there is no adaptation phase, so sigma stays put.
  cfg.burn_in = 0;
  cfg.thin = 1;
  cfg.length = 500;
  cfg.proposal_sigma = 0.37;
  cfg.adapt = true;
  auto frozen = rct::sample_chain(target, real_point(0.0), cfg);
  CHECK(frozen.final_sigma == 0.37);
}

TEST_CASE("chain config validation") {
  rct::ChainConfig cfg;
  cfg.length = 0;
  CHECK_THROWS_AS(cfg.validate(), rct::ConfigError);
  cfg.length = 100;
  cfg.burn_in = 100;
  CHECK_THROWS_AS(cfg.validate(), rct::ConfigError);
  cfg.burn_in = 10;
  cfg.thin = 0;
  CHECK_THROWS_AS(cfg.validate(), rct::ConfigError);
  cfg.thin = 1;
  cfg.proposal_sigma = 0.0;
  CHECK_THROWS_AS(cfg.validate(), rct::ConfigError);
  cfg.proposal_sigma = 0.5;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("pair-coordinate sampler matches the separation law for d=1") {
  double gamma = 1.0;
  rct::ChainConfig cfg;
  cfg.seed = 21;
  cfg.length = 220000;
  cfg.burn_in = 20000;
  cfg.thin = 10;
  cfg.proposal_sigma = 0.6;
  auto res = rct::sample_2x2_joint(1, gamma, cfg);
  REQUIRE(res.samples.size() == 20000);

  std::vector<double> seps;
  for (const auto& s : res.samples)
    seps.push_back((s.lambda2 - s.lambda1).norm());

  // Marginal of |D|: t^{2d-1} exp(log_rho_2x2 evaluated on an axis pair).
  rct::CdfTable table(
      [gamma](double t) {
        if (t <= 0.0) return 0.0;
        Eigen::VectorXcd a = Eigen::VectorXcd::Zero(1);
        Eigen::VectorXcd b = Eigen::VectorXcd::Zero(1);
        a(0) = cplx(-0.5 * t, 0.0);
        b(0) = cplx(0.5 * t, 0.0);
        auto rep = rct::log_rho_2x2(a, b, 1, gamma);
        return t * std::exp(rep.log_value);
      },
      0.0, 10.0);
  double ks = rct::ks_distance_1d(seps, [&](double t) { return table.cdf(t); });
  CHECK(ks < 0.05);

  // Determinism of the joint sampler.
  auto res2 = rct::sample_2x2_joint(1, gamma, cfg);
  CHECK(res2.samples.size() == res.samples.size());
  CHECK((res2.samples[5].lambda1 - res.samples[5].lambda1).norm() == 0.0);
  CHECK(res2.samples[5].alpha == res.samples[5].alpha);
}

TEST_CASE("strain coordinate concentrates as the points separate") {
  // Conditional law of alpha given the pair is a complex Gaussian with
  // E|alpha|^2 = 1/(gamma |D|^2) for d=1; target the alpha coordinate alone
  // with a 1x1 complex chain.
  double gamma = 1.0;
  double delta2 = 1.3 * 1.3;
  auto target = [gamma, delta2](const rct::EigenConfig& c) {
    return -gamma * delta2 * std::norm(c.points(0, 0));
  };
  Eigen::MatrixXcd init(1, 1);
  init(0, 0) = cplx(0.2, -0.1);
  rct::ChainConfig cfg;
  cfg.seed = 33;
  cfg.length = 120000;
  cfg.burn_in = 5000;
  cfg.thin = 5;
  cfg.proposal_sigma = 0.8;
  auto res = rct::sample_chain(target, {init, false}, cfg);
  std::vector<double> sq;
  for (const auto& s : res.samples) sq.push_back(std::norm(s.points(0, 0)));
  double expect = 1.0 / (gamma * delta2);
  CHECK(mean_of(sq) == doctest::Approx(expect).epsilon(0.05));
}

TEST_CASE("scaled-law chain respects the sign symmetry of the law") {
  // Label exchange mixes slowly (points rarely swap through the repulsive
  // barrier), so test symmetric functionals instead of per-slot means: the
  // law is invariant under x -> -x, making the center of mass and the sum of
  // the extreme order statistics mean zero.
  rct::ExternalField Q(0.5);
  auto target = [&Q](const rct::EigenConfig& c) {
    return rct::log_scaled_density(c, Q).log_value;
  };
  Eigen::MatrixXcd init(3, 1);
  init << cplx(-1.0, 0.0), cplx(0.1, 0.0), cplx(1.2, 0.0);
  rct::ChainConfig cfg;
  cfg.seed = 44;
  cfg.length = 160000;
  cfg.burn_in = 10000;
  cfg.thin = 15;
  cfg.proposal_sigma = 0.35;
  auto res = rct::sample_chain(target, {init, true}, cfg);
  std::vector<double> center, edge_sum, middle;
  for (const auto& s : res.samples) {
    std::vector<double> xs = {s.points(0, 0).real(), s.points(1, 0).real(),
                              s.points(2, 0).real()};
    std::sort(xs.begin(), xs.end());
    center.push_back(xs[0] + xs[1] + xs[2]);
    edge_sum.push_back(xs[0] + xs[2]);
    middle.push_back(xs[1]);
  }
  CHECK(std::abs(mean_of(center)) < 5.0 * batch_se(center, 50) + 0.01);
  CHECK(std::abs(mean_of(edge_sum)) < 5.0 * batch_se(edge_sum, 50) + 0.01);
  CHECK(std::abs(mean_of(middle)) < 5.0 * batch_se(middle, 50) + 0.01);
}

TEST_CASE("concentration fraction") {
  rct::ExternalField Q(0.5);
  // Near-minimizing config and a far-out config.
  auto good = rct::minimize_energy(6, 1, Q, 3, 5000, 1e-8).config;
  Eigen::MatrixXcd far_pts = good.points * 10.0;
  rct::EigenConfig bad{far_pts, true};
  double e_star = rct::k_n_functional(good, Q) / 36.0;

  std::vector<rct::EigenConfig> chain = {good, bad, good};
  CHECK(rct::ldp_concentration(chain, Q, 1e9, e_star) == 1.0);
  double tight = rct::ldp_concentration(chain, Q, 0.01, e_star);
  CHECK(tight == doctest::Approx(2.0 / 3.0));
  // Monotone in the tolerance parameter.
  CHECK(rct::ldp_concentration(chain, Q, 0.5, e_star) >= tight);
  CHECK_THROWS_AS(rct::ldp_concentration({}, Q, 0.1, e_star), rct::EmptySamples);
}
