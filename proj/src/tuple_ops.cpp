#include "rct/tuple_ops.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <vector>

namespace rct {

double commutator_defect(const MatrixTuple& X) {
  X.validate();
  double worst = 0.0;
  for (int r = 0; r < X.d(); ++r)
    for (int s = r + 1; s < X.d(); ++s)
      worst = std::max(worst,
                       (X.comps[r] * X.comps[s] - X.comps[s] * X.comps[r]).norm());
  return worst;
}

namespace {

// Largest magnitude below the diagonal, over all components of U* X^r U.
double triangular_residual(const MatrixTuple& X, const Eigen::MatrixXcd& U) {
  double worst = 0.0;
  for (const auto& comp : X.comps) {
    Eigen::MatrixXcd T = U.adjoint() * comp * U;
    for (Eigen::Index i = 1; i < T.rows(); ++i)
      for (Eigen::Index j = 0; j < i; ++j) worst = std::max(worst, std::abs(T(i, j)));
  }
  return worst;
}

}  // namespace

EigenConfig multi_spectrum(const MatrixTuple& X, double tol, std::mt19937_64& rng) {
  X.validate();
  const double defect = commutator_defect(X);
  if (defect > tol)
    throw CommutatorTooLarge("defect " + std::to_string(defect) + " exceeds tol " +
                             std::to_string(tol));
  const int n = X.n(), d = X.d();
  const double scale = std::max(1.0, X.frobenius_norm());
  // A commuting tuple triangularizes exactly in the Schur basis of a generic
  // combination; allow rounding plus first-order leakage of the defect.
  const double residual_tol = std::max(1e-10 * scale * n, 50.0 * defect);

  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Eigen::VectorXd c(d);
    for (int r = 0; r < d; ++r) c[r] = gauss(rng);
    double cn = c.norm();
    if (cn == 0.0) continue;
    c /= cn;

    Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(n, n);
    for (int r = 0; r < d; ++r) Y += c[r] * X.comps[r];
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(Y, /*computeU=*/true);
    if (schur.info() != Eigen::Success) continue;
    const Eigen::MatrixXcd& U = schur.matrixU();

    if (triangular_residual(X, U) <= residual_tol) {
      EigenConfig out;
      out.points.resize(n, d);
      for (int r = 0; r < d; ++r) {
        Eigen::MatrixXcd T = U.adjoint() * X.comps[r] * U;
        out.points.col(r) = T.diagonal();
      }
      out.real_valued = false;
      return out;
    }
  }
  throw DegenerateCombination(
      "no random combination separated the joint spectrum after 8 attempts");
}

MatrixTuple reconstruct_tuple(const EigenConfig& lambda, const Eigen::MatrixXcd& U) {
  const int n = lambda.n(), d = lambda.d();
  if (U.rows() != n || U.cols() != n)
    throw ShapeMismatch("unitary size does not match configuration");
  double unitary_err =
      (U.adjoint() * U - Eigen::MatrixXcd::Identity(n, n)).norm();
  if (unitary_err > 1e-12)
    throw NotUnitary("||U*U - I||_F = " + std::to_string(unitary_err));

  bool all_real = true;
  for (int i = 0; i < n && all_real; ++i)
    for (int r = 0; r < d; ++r)
      if (lambda.points(i, r).imag() != 0.0) {
        all_real = false;
        break;
      }

  MatrixTuple out;
  out.comps.reserve(d);
  for (int r = 0; r < d; ++r) {
    Eigen::MatrixXcd comp = U * lambda.points.col(r).asDiagonal() * U.adjoint();
    if (all_real) {
      // Explicit temporary: assigning comp + comp.adjoint() back into comp
      // aliases, which would break the exact conjugate symmetry this enforces.
      Eigen::MatrixXcd sym = 0.5 * (comp + comp.adjoint());
      comp = std::move(sym);
    }
    out.comps.push_back(std::move(comp));
  }
  out.hermitian = all_real;
  return out;
}

Eigen::MatrixXcd haar_unitary(int n, std::mt19937_64& rng) {
  if (n < 1) throw ShapeMismatch("n must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double re = gauss(rng), im = gauss(rng);
      A(i, j) = cplx(re, im);
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
  Eigen::MatrixXcd Q = qr.householderQ();
  Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
  // Rescale columns by the phases of R's diagonal so R's diagonal becomes
  // positive; this makes the distribution exactly Haar instead of QR-biased.
  for (int j = 0; j < n; ++j) {
    cplx r = R(j, j);
    cplx phase = (r == cplx(0.0, 0.0)) ? cplx(1.0, 0.0) : r / std::abs(r);
    Q.col(j) *= phase;
  }
  return Q;
}

std::pair<double, double> hoffman_wielandt_gap(const Eigen::MatrixXcd& A,
                                               const Eigen::MatrixXcd& B) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    throw ShapeMismatch("inputs must be square and of equal size");
  auto check = [](const Eigen::MatrixXcd& M, const char* which) {
    if ((M - M.adjoint()).norm() > 1e-12 * std::max(1.0, M.norm()))
      throw NotHermitian(std::string(which) + " input is not self-adjoint");
  };
  check(A, "first");
  check(B, "second");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ea(A), eb(B);
  Eigen::VectorXd mu_a = ea.eigenvalues(), mu_b = eb.eigenvalues();
  std::sort(mu_a.data(), mu_a.data() + mu_a.size(), std::greater<double>());
  std::sort(mu_b.data(), mu_b.data() + mu_b.size(), std::greater<double>());

  double lhs = (mu_a - mu_b).squaredNorm();
  double rhs = (A - B).squaredNorm();
  return {lhs, rhs};
}

int dim_banner_stratum(int n, int d, const Banner& banner) {
  if (n < 1 || d < 1) throw ShapeMismatch("n and d must be positive");
  if (!banner.valid_for(n))
    throw InvalidBanner("multiplicities must be non-increasing, >= 1, and sum to n");
  if (d == 1) {
    int sq = 0;
    for (int r : banner.multiplicities) sq += r * r;
    return n * n - sq + banner.p();
  }
  return n * n + (d - 2) * n + banner.p();
}

int dim_variety(int n, int d, bool /*hermitian*/) {
  if (n < 1 || d < 1) throw ShapeMismatch("n and d must be positive");
  return n * n + (d - 1) * n;
}

int dim_variety_real(int n, int d, bool hermitian) {
  int v = dim_variety(n, d, hermitian);
  return hermitian ? v : 2 * v;
}

Irreducibility irreducibility_status(int d, int n) {
  if (n < 1 || d < 1) throw ShapeMismatch("n and d must be positive");
  if (d <= 2) return Irreducibility::Irreducible;
  if (n <= 3) return Irreducibility::Irreducible;
  if (d == 3) {
    if (n <= 10) return Irreducibility::Irreducible;
    if (n >= 29) return Irreducibility::Reducible;
    return Irreducibility::Unknown;
  }
  // d >= 4, n >= 4
  return Irreducibility::Reducible;
}

double config_multiset_distance(const EigenConfig& a, const EigenConfig& b) {
  if (a.n() != b.n() || a.d() != b.d())
    throw ShapeMismatch("configurations differ in shape");
  const int n = a.n();
  std::vector<bool> used(n, false);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      double dist = (a.points.row(i) - b.points.row(j)).norm();
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_dist);
  }
  return worst;
}

}  // namespace rct
