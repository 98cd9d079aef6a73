#include "rct/charts.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

#include "rct/errors.hpp"

namespace rct {

namespace {

// Flatten a tuple into real coordinates: component-major, row-major, re/im.
Eigen::VectorXd tuple_realvec(const std::vector<Eigen::MatrixXcd>& comps) {
  const Eigen::Index n = comps[0].rows();
  Eigen::VectorXd v(2 * static_cast<Eigen::Index>(comps.size()) * n * n);
  Eigen::Index k = 0;
  for (const auto& m : comps)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        v[k++] = m(i, j).real();
        v[k++] = m(i, j).imag();
      }
  return v;
}

std::vector<Eigen::MatrixXcd> scaled_tuple(const std::vector<Eigen::MatrixXcd>& comps,
                                           cplx factor) {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(comps.size());
  for (const auto& m : comps) out.push_back(factor * m);
  return out;
}

int svd_rank(const Eigen::JacobiSVD<Eigen::MatrixXcd>& svd) {
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  double cut = 1e-9 * sv[0];
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > cut) ++rank;
  return rank;
}

Eigen::MatrixXcd matrix_exp_skew(const Eigen::MatrixXcd& S) {
  // S skew-Hermitian: -iS is Hermitian, so e^S = V e^{i theta} V*.
  Eigen::MatrixXcd H = cplx(0.0, -1.0) * S;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases[i] = std::exp(cplx(0.0, es.eigenvalues()[i]));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Eigen::MatrixXcd UnipotentParam::matrix() const {
  const size_t want = static_cast<size_t>(n) * (n - 1) / 2;
  if (upper.size() != want)
    throw ShapeMismatch("unipotent parameter count does not match n");
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(n, n);
  size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) A(i, j) = upper[k++];
  return A;
}

Eigen::MatrixXcd UnipotentParam::inverse() const {
  Eigen::MatrixXcd A = matrix();
  return A.triangularView<Eigen::Upper>().solve(
      Eigen::MatrixXcd::Identity(n, n));
}

TangentReport tangent_check(const MatrixTuple& Q, const MatrixTuple& Z, double tol) {
  Q.validate();
  Z.validate();
  if (Q.d() != Z.d() || Q.n() != Z.n())
    throw ShapeMismatch("base tuple and direction differ in shape");
  double worst = 0.0;
  for (int r = 0; r < Q.d(); ++r)
    for (int s = r + 1; s < Q.d(); ++s) {
      Eigen::MatrixXcd lhs = Q.comps[r] * Z.comps[s] - Z.comps[s] * Q.comps[r];
      Eigen::MatrixXcd rhs = Q.comps[s] * Z.comps[r] - Z.comps[r] * Q.comps[s];
      worst = std::max(worst, (lhs - rhs).norm());
    }
  return {worst, worst <= tol};
}

int tangent_dimension(const EigenConfig& D, bool triangular_only) {
  const int n = D.n(), d = D.d();
  if (n < 1 || d < 1) throw ShapeMismatch("need at least one point and component");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (D.dist(i, j) == 0.0)
        throw DegenerateEigenvalues("joint eigenvalues " + std::to_string(i) +
                                    " and " + std::to_string(j) + " coincide");

  // Enumerate the allowed matrix entries once; unknown (r, entry) is a
  // complex coordinate of the direction tuple Y.
  std::vector<std::pair<int, int>> entries;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!triangular_only || i <= j) entries.emplace_back(i, j);
  const int per_comp = static_cast<int>(entries.size());
  const int cols = d * per_comp;
  auto col_of = [&](int r, int e) { return r * per_comp + e; };

  long rows = static_cast<long>(d) * (d - 1) / 2 * per_comp;
  if (rows == 0) return 2 * cols;

  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(rows, cols);
  long row = 0;
  for (int r = 0; r < d; ++r)
    for (int s = r + 1; s < d; ++s)
      for (int e = 0; e < per_comp; ++e) {
        auto [i, j] = entries[e];
        if (i == j) continue;  // diagonal directions are unconstrained
        cplx vr = D.points(j, r) - D.points(i, r);
        cplx vs = D.points(j, s) - D.points(i, s);
        M(row, col_of(s, e)) += vr;
        M(row, col_of(r, e)) -= vs;
        ++row;
      }
  M.conservativeResize(row, cols);
  if (row == 0) return 2 * cols;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  int nullity = cols - svd_rank(svd);
  return 2 * nullity;
}

double kappa_diagonal(const EigenConfig& D) {
  double prod = 1.0;
  for (int i = 0; i < D.n(); ++i)
    for (int j = i + 1; j < D.n(); ++j) {
      double r = D.dist(i, j);
      prod *= r * r;
    }
  return prod;
}

double kappa_d1(const Eigen::VectorXcd& eigenvalues) {
  double prod = 1.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    for (Eigen::Index j = i + 1; j < eigenvalues.size(); ++j)
      prod *= std::norm(eigenvalues[j] - eigenvalues[i]);
  return prod;
}

double kappa_n2(const Eigen::VectorXcd& lambda1, const Eigen::VectorXcd& lambda2) {
  if (lambda1.size() != lambda2.size())
    throw ShapeMismatch("points must share a dimension");
  return (lambda2 - lambda1).squaredNorm();
}

Eigen::MatrixXcd gamma_matrix_2x2(const Eigen::VectorXcd& lambda1,
                                  const Eigen::VectorXcd& lambda2, cplx alpha) {
  if (lambda1.size() != lambda2.size())
    throw ShapeMismatch("points must share a dimension");
  const int d = static_cast<int>(lambda1.size());
  const double a = std::norm(alpha);
  const Eigen::VectorXcd delta = lambda2 - lambda1;

  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(2 * d + 1, 2 * d + 1);
  for (int r = 0; r < d; ++r) {
    G(r, r) = cplx(1.0 + a, 0.0);
    G(d + r, d + r) = cplx(1.0 + a, 0.0);
    G(r, d + r) = cplx(-a, 0.0);
    G(d + r, r) = cplx(-a, 0.0);
    G(r, 2 * d) = -std::conj(alpha) * delta[r];
    G(d + r, 2 * d) = std::conj(alpha) * delta[r];
    G(2 * d, r) = -alpha * std::conj(delta[r]);
    G(2 * d, d + r) = alpha * std::conj(delta[r]);
  }
  G(2 * d, 2 * d) = cplx(delta.squaredNorm(), 0.0);
  return G;
}

double gamma_det_closed(const Eigen::VectorXcd& lambda1,
                        const Eigen::VectorXcd& lambda2, cplx alpha) {
  if (lambda1.size() != lambda2.size())
    throw ShapeMismatch("points must share a dimension");
  const int d = static_cast<int>(lambda1.size());
  const double one_plus = 1.0 + 2.0 * std::norm(alpha);
  const double delta_sq = (lambda2 - lambda1).squaredNorm();
  // Schur complement route: leading 2d block, then the E_12 complement.
  return std::pow(one_plus, d) * (delta_sq / one_plus);
}

Eigen::MatrixXcd gamma_matrix_numeric(const EigenConfig& D, const UnipotentParam& A) {
  const int n = D.n(), d = D.d();
  if (A.n != n) throw ShapeMismatch("unipotent size does not match tuple size");
  const Eigen::MatrixXcd Am = A.matrix();
  const Eigen::MatrixXcd Ai = A.inverse();

  const int cols = d * n + n * (n - 1) / 2;
  Eigen::MatrixXcd J(d * n * n, cols);
  int col = 0;
  auto put_tuple = [&](const std::vector<Eigen::MatrixXcd>& comps) {
    Eigen::Index k = 0;
    for (const auto& m : comps)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) J(k++, col) = m(i, j);
    ++col;
  };

  // Diagonal directions: slot r gets A E_pp A^{-1}.
  for (int p = 0; p < n; ++p) {
    Eigen::MatrixXcd core = Am.col(p) * Ai.row(p);  // A E_pp A^{-1}
    for (int r = 0; r < d; ++r) {
      std::vector<Eigen::MatrixXcd> comps(d, Eigen::MatrixXcd::Zero(n, n));
      comps[r] = core;
      put_tuple(comps);
    }
  }
  // Unipotent directions E_ij: slot r gets A [A^{-1} E_ij, D^r] A^{-1}.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<Eigen::MatrixXcd> comps;
      comps.reserve(d);
      for (int r = 0; r < d; ++r) {
        Eigen::MatrixXcd Dr = D.points.col(r).asDiagonal();
        Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(n, n);
        E(i, j) = 1.0;
        comps.push_back(Am * (Ai * E * Dr - Dr * Ai * E) * Ai);
      }
      put_tuple(comps);
    }

  return J.adjoint() * J;
}

double kappa_numeric(const MatrixTuple& Q) {
  Q.validate();
  const int n = Q.n(), d = Q.d();
  if (n < 2) throw UnsupportedSize("need n >= 2");

  // Tangent space of the triangular stratum at Q: upper-triangular tuples Z
  // with [Q^r, Z^s] = [Q^s, Z^r]; complex kernel of the constraint system.
  std::vector<std::pair<int, int>> support;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) support.emplace_back(i, j);
  const int per_comp = static_cast<int>(support.size());
  const int cols = d * per_comp;

  const long pair_count = static_cast<long>(d) * (d - 1) / 2;
  Eigen::MatrixXcd kernel;  // columns: complex basis of the tangent space
  if (pair_count == 0) {
    kernel = Eigen::MatrixXcd::Identity(cols, cols);
  } else {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(pair_count * n * n, cols);
    long row_base = 0;
    for (int r = 0; r < d; ++r)
      for (int s = r + 1; s < d; ++s) {
        for (int e = 0; e < per_comp; ++e) {
          auto [i, j] = support[e];
          // [Q, E_ij] contributions: (Q E_ij)_{kl} = Q_{ki} d_{jl},
          // (E_ij Q)_{kl} = d_{ik} Q_{jl}.
          for (int k = 0; k < n; ++k) {
            M(row_base + k * n + j, s * per_comp + e) += Q.comps[r](k, i);
            M(row_base + k * n + j, r * per_comp + e) -= Q.comps[s](k, i);
          }
          for (int l = 0; l < n; ++l) {
            M(row_base + i * n + l, s * per_comp + e) -= Q.comps[r](j, l);
            M(row_base + i * n + l, r * per_comp + e) += Q.comps[s](j, l);
          }
        }
        row_base += static_cast<long>(n) * n;
      }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
    int rank = svd_rank(svd);
    kernel = svd.matrixV().rightCols(cols - rank);
  }

  // Realify the tangent space inside R^{2dn^2} and orthonormalize.
  auto support_to_tuple = [&](const Eigen::VectorXcd& v) {
    std::vector<Eigen::MatrixXcd> comps(d, Eigen::MatrixXcd::Zero(n, n));
    for (int r = 0; r < d; ++r)
      for (int e = 0; e < per_comp; ++e)
        comps[r](support[e].first, support[e].second) = v[r * per_comp + e];
    return comps;
  };
  const Eigen::Index ambient = 2 * static_cast<Eigen::Index>(d) * n * n;
  Eigen::MatrixXd T(ambient, 2 * kernel.cols());
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    auto comps = support_to_tuple(kernel.col(c));
    T.col(2 * c) = tuple_realvec(comps);
    T.col(2 * c + 1) = tuple_realvec(scaled_tuple(comps, cplx(0.0, 1.0)));
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(T);
  Eigen::MatrixXd B =
      qr.householderQ() * Eigen::MatrixXd::Identity(ambient, T.cols());

  // Gram of the projected conjugation directions over the orthonormal basis
  // (E_ij - E_ji)/sqrt2, i(E_ij + E_ji)/sqrt2 of zero-diagonal skew matrices.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<Eigen::VectorXd> w;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int which = 0; which < 2; ++which) {
        Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
        if (which == 0) {
          S(i, j) = inv_sqrt2;
          S(j, i) = -inv_sqrt2;
        } else {
          S(i, j) = cplx(0.0, inv_sqrt2);
          S(j, i) = cplx(0.0, inv_sqrt2);
        }
        std::vector<Eigen::MatrixXcd> ad;
        ad.reserve(d);
        for (int r = 0; r < d; ++r)
          ad.push_back(Q.comps[r] * S - S * Q.comps[r]);
        Eigen::VectorXd v = tuple_realvec(ad);
        v -= B * (B.transpose() * v);
        w.push_back(std::move(v));
      }

  Eigen::MatrixXd G(w.size(), w.size());
  for (size_t a = 0; a < w.size(); ++a)
    for (size_t b = 0; b < w.size(); ++b) G(a, b) = w[a].dot(w[b]);
  return std::sqrt(std::abs(G.determinant()));
}

double numeric_gram_jacobian(const ChartMap& chart, double step) {
  if (!(step > 0.0)) throw ConfigError("step must be positive");
  if (chart.domain_dim < 1 || chart.base_point.size() != chart.domain_dim)
    throw ShapeMismatch("chart domain/base point mismatch");

  auto gram_at = [&](double h) {
    Eigen::VectorXd x = chart.base_point;
    Eigen::MatrixXd J;
    for (int k = 0; k < chart.domain_dim; ++k) {
      Eigen::VectorXd xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      Eigen::VectorXd col = (chart.embedding(xp) - chart.embedding(xm)) / (2.0 * h);
      if (J.size() == 0) J.resize(col.size(), chart.domain_dim);
      J.col(k) = col;
    }
    return std::sqrt(std::abs((J.transpose() * J).determinant()));
  };

  double coarse = gram_at(step);
  double fine = gram_at(0.5 * step);
  double ref = std::max(std::abs(fine), 1e-300);
  if (std::abs(coarse - fine) / ref > 1e-3)
    throw UnstableDerivative("halving the step moved the Gram determinant by " +
                             std::to_string(std::abs(coarse - fine) / ref));
  return (4.0 * fine - coarse) / 3.0;  // central differences are O(h^2)
}

ChartMap make_hermitian_chart(const EigenConfig& D) {
  const int n = D.n(), d = D.d();
  Eigen::MatrixXd base_eigs = D.points.real();

  ChartMap chart;
  chart.domain_dim = n * d + n * (n - 1);
  chart.base_point = Eigen::VectorXd::Zero(chart.domain_dim);
  chart.embedding = [n, d, base_eigs](const Eigen::VectorXd& v) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
    Eigen::Index k = static_cast<Eigen::Index>(n) * d;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double a = v[k++], b = v[k++];
        S(i, j) = cplx(a, b) * inv_sqrt2;
        S(j, i) = cplx(-a, b) * inv_sqrt2;
      }
    Eigen::MatrixXcd U = matrix_exp_skew(S);
    std::vector<Eigen::MatrixXcd> comps;
    comps.reserve(d);
    for (int r = 0; r < d; ++r) {
      Eigen::VectorXcd diag(n);
      for (int p = 0; p < n; ++p)
        diag[p] = cplx(base_eigs(p, r) + v[p * d + r], 0.0);
      comps.push_back(U * diag.asDiagonal() * U.adjoint());
    }
    return tuple_realvec(comps);
  };
  return chart;
}

ChartMap make_triangular_chart(const EigenConfig& D, const UnipotentParam& A) {
  const int n = D.n(), d = D.d();
  if (A.n != n) throw ShapeMismatch("unipotent size does not match tuple size");
  const int n_upper = n * (n - 1) / 2;

  ChartMap chart;
  chart.domain_dim = 2 * (n * d + n_upper);
  chart.base_point.resize(chart.domain_dim);
  Eigen::Index k = 0;
  for (int p = 0; p < n; ++p)
    for (int r = 0; r < d; ++r) {
      chart.base_point[k++] = D.points(p, r).real();
      chart.base_point[k++] = D.points(p, r).imag();
    }
  for (int e = 0; e < n_upper; ++e) {
    chart.base_point[k++] = A.upper[e].real();
    chart.base_point[k++] = A.upper[e].imag();
  }

  chart.embedding = [n, d, n_upper](const Eigen::VectorXd& v) {
    Eigen::MatrixXcd diag(n, d);
    Eigen::Index k2 = 0;
    for (int p = 0; p < n; ++p)
      for (int r = 0; r < d; ++r) {
        diag(p, r) = cplx(v[k2], v[k2 + 1]);
        k2 += 2;
      }
    UnipotentParam U;
    U.n = n;
    U.upper.resize(n_upper);
    for (int e = 0; e < n_upper; ++e) {
      U.upper[e] = cplx(v[k2], v[k2 + 1]);
      k2 += 2;
    }
    Eigen::MatrixXcd Am = U.matrix(), Ai = U.inverse();
    std::vector<Eigen::MatrixXcd> comps;
    comps.reserve(d);
    for (int r = 0; r < d; ++r)
      comps.push_back(Am * diag.col(r).asDiagonal() * Ai);
    return tuple_realvec(comps);
  };
  return chart;
}

double log_unipotent_integrand(const EigenConfig& D, const UnipotentParam& A,
                               double gamma) {
  const int n = D.n(), d = D.d();
  if (A.n != n) throw ShapeMismatch("unipotent size does not match tuple size");
  if (n < 2 || n > 3)
    throw UnsupportedSize("closed/numeric forms available for n = 2, 3 only");
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");

  if (n == 2) {
    const Eigen::VectorXcd l1 = D.points.row(0).transpose();
    const Eigen::VectorXcd l2 = D.points.row(1).transpose();
    const double delta_sq = (l2 - l1).squaredNorm();
    const double alpha_sq = std::norm(A.upper[0]);
    // w1 w2 kappa |det Gamma| with kappa = |D|^2 and the closed-form det.
    return -gamma * (l1.squaredNorm() + l2.squaredNorm()) -
           gamma * alpha_sq * delta_sq + 2.0 * std::log(delta_sq) +
           (d - 1) * std::log1p(2.0 * alpha_sq);
  }

  // n = 3: exact-differential numerics for both Jacobian factors.
  Eigen::MatrixXcd Am = A.matrix(), Ai = A.inverse();
  MatrixTuple Q;
  Q.comps.reserve(d);
  double base_norm_sq = 0.0, conj_gap_sq = 0.0;
  for (int r = 0; r < d; ++r) {
    Eigen::MatrixXcd Dr = D.points.col(r).asDiagonal();
    Eigen::MatrixXcd Qr = Am * Dr * Ai;
    base_norm_sq += Dr.squaredNorm();
    conj_gap_sq += (Qr - Dr).squaredNorm();
    Q.comps.push_back(std::move(Qr));
  }
  double log_kappa = std::log(kappa_numeric(Q));
  double log_det_gamma =
      std::log(std::abs(gamma_matrix_numeric(D, A).determinant()));
  return -gamma * base_norm_sq - gamma * conj_gap_sq + log_kappa + log_det_gamma;
}

}  // namespace rct
