#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "rct/density.hpp"
#include "rct/equilibrium.hpp"
#include "rct/field.hpp"
#include "rct/quadrature.hpp"
#include "rct/rng.hpp"
#include "rct/types.hpp"

using rct::cplx;

namespace {

rct::EigenConfig real_config(std::initializer_list<double> xs) {
  Eigen::MatrixXcd pts(static_cast<Eigen::Index>(xs.size()), 1);
  Eigen::Index i = 0;
  for (double x : xs) pts(i++, 0) = cplx(x, 0.0);
  return {pts, true};
}

Eigen::VectorXcd axis_point(double t, int d) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
  v(0) = cplx(t, 0.0);
  return v;
}

}  // namespace

TEST_CASE("log_ginibre_density pinned value") {
  // n=2, d=1, lambda = (0, 2), Q = |x|^2/2: -(0+2) + 2 log 2.
  rct::ExternalField Q(0.5);
  auto rep = rct::log_ginibre_density(real_config({0.0, 2.0}), Q);
  CHECK(rep.finite_flag);
  CHECK(rep.log_value == doctest::Approx(-2.0 + 2.0 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("log_ginibre_density single point has no interaction") {
  rct::ExternalField Q(2.0);
  auto rep = rct::log_ginibre_density(real_config({3.0}), Q);
  CHECK(rep.log_value == doctest::Approx(-18.0).epsilon(1e-14));
}

TEST_CASE("coincident points give the vanishing sentinel") {
  rct::ExternalField Q(1.0);
  auto rep = rct::log_ginibre_density(real_config({1.0, 1.0, 2.0}), Q);
  CHECK(!rep.finite_flag);
  CHECK(std::isinf(rep.log_value));
  CHECK(rep.log_value < 0.0);
}

TEST_CASE("density is exactly permutation invariant") {
  // Summation is canonicalized, so a reordered configuration produces the
  // same double, not merely a close one.
  rct::ExternalField Q(0.7);
  Eigen::MatrixXcd pts(4, 2);
  pts << cplx(0.3, -1.2), cplx(2.0, 0.1),
         cplx(-0.5, 0.4), cplx(1.1, -2.2),
         cplx(1.7, 0.9), cplx(-0.6, 0.0),
         cplx(-2.2, -0.3), cplx(0.4, 1.5);
  Eigen::MatrixXcd perm(4, 2);
  perm.row(0) = pts.row(3);
  perm.row(1) = pts.row(1);
  perm.row(2) = pts.row(0);
  perm.row(3) = pts.row(2);
  auto a = rct::log_ginibre_density({pts, false}, Q);
  auto b = rct::log_ginibre_density({perm, false}, Q);
  CHECK(a.log_value == b.log_value);
  auto as = rct::log_scaled_density({pts, false}, Q);
  auto bs = rct::log_scaled_density({perm, false}, Q);
  CHECK(as.log_value == bs.log_value);
}

TEST_CASE("density is invariant under simultaneous rotation of R^2 points") {
  // |x|^2 field and pairwise distances both only see Euclidean norms.
  rct::ExternalField Q(1.0);
  Eigen::MatrixXcd pts(3, 2);
  pts << cplx(0.4, 0.0), cplx(-1.0, 0.0),
         cplx(1.3, 0.0), cplx(0.2, 0.0),
         cplx(-0.8, 0.0), cplx(0.9, 0.0);
  double c = std::cos(0.77), s = std::sin(0.77);
  Eigen::MatrixXcd rot = pts;
  for (int i = 0; i < 3; ++i) {
    rot(i, 0) = c * pts(i, 0) - s * pts(i, 1);
    rot(i, 1) = s * pts(i, 0) + c * pts(i, 1);
  }
  auto a = rct::log_ginibre_density({pts, true}, Q);
  auto b = rct::log_ginibre_density({rot, true}, Q);
  CHECK(a.log_value == doctest::Approx(b.log_value).epsilon(1e-9));
}

TEST_CASE("log_scaled_density pinned value and n=1 reduction") {
  rct::ExternalField Q(0.5);
  auto rep = rct::log_scaled_density(real_config({0.0, 2.0}), Q);
  // Q(0)+Q(2) = 2, n = 2: -2*2 + 2 log 2.
  CHECK(rep.log_value == doctest::Approx(-4.0 + 2.0 * std::log(2.0)).epsilon(1e-14));

  auto one = rct::log_scaled_density(real_config({1.5}), Q);
  CHECK(one.log_value == doctest::Approx(-1.125).epsilon(1e-14));
}

TEST_CASE("scaled and unscaled laws differ by (n-1) sum Q") {
  rct::ExternalField Q(0.8);
  Eigen::MatrixXcd pts(5, 3);
  auto rng = rct::rng_stream(31);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < pts.size(); ++i)
    pts(i / 3, i % 3) = cplx(gauss(rng), gauss(rng));
  rct::EigenConfig cfg{pts, false};
  double sum_q = 0.0;
  for (int i = 0; i < 5; ++i) sum_q += Q.from_norm(pts.row(i).norm());
  double lhs = rct::log_scaled_density(cfg, Q).log_value;
  double rhs = rct::log_ginibre_density(cfg, Q).log_value - 4.0 * sum_q;
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("pair energy functional pinned values") {
  // n=2, y=(0,1), Q=|x|^2/2: the log term vanishes at distance 1, leaving
  // (n-1)(Q(0)+Q(1)) = 1/2.
  rct::ExternalField half(0.5);
  CHECK(rct::k_n_functional(real_config({0.0, 1.0}), half) ==
        doctest::Approx(0.5).epsilon(1e-14));
  // Zero field, y=(0,e): log e^{-2} = -2 exactly.
  rct::ExternalField zero(0.0);
  CHECK(rct::k_n_functional(real_config({0.0, std::exp(1.0)}), zero) ==
        doctest::Approx(-2.0).epsilon(1e-13));
  CHECK_THROWS_AS(rct::k_n_functional(real_config({1.0, 1.0}), half),
                  rct::CoincidentPoints);
}

TEST_CASE("discrete_energy matches the pair functional normalization") {
  // discrete_energy = k_n/n^2 + (1/n^2) sum_i Q(x_i).
  rct::ExternalField Q(0.5);
  auto cfg = real_config({0.0, 1.0, -1.0});
  double k = rct::k_n_functional(cfg, Q);
  CHECK(rct::discrete_energy(cfg, Q) ==
        doctest::Approx(k / 9.0 + 1.0 / 9.0).epsilon(1e-13));
  // n=2, points +-1: (1/4)(2 log(1/2)) + (1/2)(1/2+1/2) = 1/2 - (log 2)/2.
  CHECK(rct::discrete_energy(real_config({-1.0, 1.0}), Q) ==
        doctest::Approx(0.5 - 0.5 * std::log(2.0)).epsilon(1e-13));
  // Single point has no interaction term: energy = Q(x).
  CHECK(rct::discrete_energy(real_config({2.0}), Q) ==
        doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("pair law for 2x2 tuples: pinned values") {
  double gamma = 1.0;
  // d=1, l1=0, l2=1: -1 + log 1 + log(1/gamma) = -1.
  auto d1 = rct::log_rho_2x2(axis_point(0.0, 1), axis_point(1.0, 1), 1, gamma);
  CHECK(d1.finite_flag);
  CHECK(d1.log_value == doctest::Approx(-1.0).epsilon(1e-13));

  // Strip the Gaussian factor to isolate the interaction bracket.
  auto stripped = [gamma](double t, int d) {
    auto rep = rct::log_rho_2x2(axis_point(0.0, d), axis_point(t, d), d, gamma);
    return rep.log_value + gamma * t * t;
  };
  // d=2, |D|=1: bracket = 1*(1/1! + 2/1) ... = 1 + 2 = 3; at |D|->inf the
  // j=0 term dominates: |D|^2 * 1. Ratio exp(stripped(1))/2 = 3/2.
  CHECK(std::exp(stripped(1.0, 2)) / 2.0 == doctest::Approx(1.5).epsilon(1e-12));
  // d=3, |D|=1, gamma=1: |D|^2 (1/2 + 2 + 4) = 13/2.
  CHECK(stripped(1.0, 3) == doctest::Approx(std::log(6.5)).epsilon(1e-12));
}

TEST_CASE("pair law agrees with the direct sum formula away from D=0") {
  auto rng = rct::rng_stream(37);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int d : {1, 2, 3, 5}) {
    for (int rep = 0; rep < 20; ++rep) {
      Eigen::VectorXcd l1(d), l2(d);
      for (int r = 0; r < d; ++r) {
        l1(r) = cplx(gauss(rng), gauss(rng));
        l2(r) = cplx(gauss(rng), gauss(rng));
      }
      double gamma = 0.5 + 0.5 * std::abs(gauss(rng));
      double d2 = (l2 - l1).squaredNorm();
      if (d2 < 1e-4) continue;
      double bracket = 0.0;
      std::vector<double> inv_fact(static_cast<size_t>(d));
      double f = 1.0;
      for (int m = 0; m < d; ++m) {
        inv_fact[static_cast<size_t>(m)] = 1.0 / f;
        f *= (m + 1);
      }
      double pow2 = 1.0, powg = gamma, powd = 1.0;
      for (int j = 0; j < d; ++j) {
        bracket += inv_fact[static_cast<size_t>(d - 1 - j)] * pow2 / (powg * powd);
        pow2 *= 2.0;
        powg *= gamma;
        powd *= d2;
      }
      double direct = -gamma * (l1.squaredNorm() + l2.squaredNorm()) +
                      std::log(d2) + std::log(bracket);
      auto got = rct::log_rho_2x2(l1, l2, d, gamma);
      CHECK(got.finite_flag);
      CHECK(got.log_value == doctest::Approx(direct).epsilon(1e-10));
    }
  }
}

TEST_CASE("pair law sentinels at coincidence") {
  Eigen::VectorXcd p = axis_point(0.7, 2);
  auto d1 = rct::log_rho_2x2(axis_point(0.7, 1), axis_point(0.7, 1), 1, 1.0);
  CHECK(!d1.finite_flag);
  CHECK(d1.log_value == -std::numeric_limits<double>::infinity());

  auto d2 = rct::log_rho_2x2(p, p, 2, 2.0);
  CHECK(d2.finite_flag);
  // Finite limit: log(2/gamma^2) - gamma * 2|p|^2 = log(1/2) - 4*0.49.
  CHECK(d2.log_value ==
        doctest::Approx(std::log(0.5) - 4.0 * 0.49).epsilon(1e-12));

  auto d3 = rct::log_rho_2x2(axis_point(0.7, 3), axis_point(0.7, 3), 3, 1.0);
  CHECK(!d3.finite_flag);
  CHECK(d3.log_value == std::numeric_limits<double>::infinity());
}

TEST_CASE("d=3 pair interaction grows as the points approach") {
  // The stripped interaction increases monotonically as |D| -> 0: short
  // distances are favored, unlike the d=1 repulsion.
  double prev = -std::numeric_limits<double>::infinity();
  for (double t : {0.20, 0.15, 0.10, 0.05}) {
    auto rep = rct::log_rho_2x2(axis_point(0.0, 3), axis_point(t, 3), 3, 1.0);
    double stripped = rep.log_value + 1.0 * t * t;
    CHECK(stripped > prev);
    prev = stripped;
  }
  // d=1 comparison: repulsion, so the same sweep decreases.
  prev = std::numeric_limits<double>::infinity();
  for (double t : {0.20, 0.15, 0.10, 0.05}) {
    auto rep = rct::log_rho_2x2(axis_point(0.0, 1), axis_point(t, 1), 1, 1.0);
    double stripped = rep.log_value + 1.0 * t * t;
    CHECK(stripped < prev);
    prev = stripped;
  }
}

TEST_CASE("radial_integral pinned values and quadrature cross-check") {
  CHECK(rct::radial_integral(1, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  // d=2, k=1: 1/2 + 2/2 = 3/2.
  CHECK(rct::radial_integral(2, 1.0) == doctest::Approx(1.5).epsilon(1e-14));
  // d=3, k=2: independent quadrature of the defining integral.
  for (auto [d, k] : std::vector<std::pair<int, double>>{
           {3, 2.0}, {1, 0.3}, {4, 1.7}, {6, 0.9}}) {
    double upper = std::sqrt((40.0 + 10.0 * d) / k);
    double closed = rct::radial_integral(d, k);
    double quad = rct::adaptive_simpson(
        [d, k](double r) {
          return std::exp(-k * r * r) * std::pow(1.0 + 2.0 * r * r, d - 1) * r;
        },
        0.0, upper, 1e-12 * closed);
    CHECK(closed == doctest::Approx(quad).epsilon(1e-8));
  }
}

TEST_CASE("projected densities: normalization, shape, edge flattening") {
  double gamma = 0.5;
  // d<=3 share the semicircle profile with the d-dependent radius.
  double R1 = rct::equilibrium_radius(1, gamma);
  CHECK(rct::projected_density(1, gamma, 0.0) ==
        doctest::Approx(2.0 / (M_PI * R1)).epsilon(1e-13));
  CHECK(rct::projected_density(1, gamma, R1 * 1.0001) == 0.0);
  CHECK(rct::projected_density(1, gamma, -R1 * 1.0001) == 0.0);

  double R3 = rct::equilibrium_radius(3, gamma);
  for (double x : {0.0, 0.3, 0.9}) {
    double expect = (x * x >= R3 * R3)
                        ? 0.0
                        : 2.0 / (M_PI * R3 * R3) * std::sqrt(R3 * R3 - x * x);
    CHECK(rct::projected_density(3, gamma, x) ==
          doctest::Approx(expect).epsilon(1e-12));
  }

  for (int d = 1; d <= 8; ++d) {
    double R = rct::equilibrium_radius(d, gamma);
    // Substitute x = R sin u so the edge singularity of the integrand
    // disappears and plain adaptive quadrature converges fast.
    double mass = rct::adaptive_simpson(
        [d, gamma, R](double u) {
          double x = R * std::sin(u);
          return rct::projected_density(d, gamma, x) * R * std::cos(u);
        },
        -M_PI / 2.0, M_PI / 2.0, 1e-13);
    CHECK(std::abs(mass - 1.0) < 1e-8);
  }

  // The edge exponent (d-3)/2 grows with d, so relative to the center value
  // the projection loses mass near the boundary faster in higher dimension.
  double R = rct::equilibrium_radius(4, gamma);
  double x_edge = 0.999 * R;
  double r4 = rct::projected_density(4, gamma, x_edge) / rct::projected_density(4, gamma, 0.0);
  double r5 = rct::projected_density(5, gamma, x_edge) / rct::projected_density(5, gamma, 0.0);
  CHECK(r5 < r4);
}

TEST_CASE("non-finite configurations are rejected") {
  rct::ExternalField Q(1.0);
  Eigen::MatrixXcd pts(2, 1);
  pts << cplx(0.0, 0.0), cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_THROWS_AS(rct::log_ginibre_density({pts, false}, Q), rct::NonFinitePoint);
  CHECK_THROWS_AS(rct::log_scaled_density({pts, false}, Q), rct::NonFinitePoint);
}
