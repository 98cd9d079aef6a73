#pragma once

#include <random>
#include <utility>

#include "rct/types.hpp"

namespace rct {

enum class Irreducibility { Irreducible, Reducible, Unknown };

// Max over component pairs r<s of ||X^r X^s - X^s X^r||_F; 0 for d = 1.
double commutator_defect(const MatrixTuple& X);

// Joint spectrum of a commuting (within tol) tuple: Schur-triangularize a
// random real linear combination, reuse its unitary for every component and
// read the diagonals. Retries with a fresh combination (up to 8 draws from
// rng) when the combination fails to separate the joint eigenvalues.
// Result rows carry no meaningful order; compare as multisets.
EigenConfig multi_spectrum(const MatrixTuple& X, double tol, std::mt19937_64& rng);

// U diag(lambda^r) U* per component; hermitian flag set iff every component
// of every point has exactly zero imaginary part.
MatrixTuple reconstruct_tuple(const EigenConfig& lambda, const Eigen::MatrixXcd& U);

// Haar-distributed n×n unitary: QR of a complex Ginibre matrix with the
// phases fixed so the triangular factor has positive diagonal.
Eigen::MatrixXcd haar_unitary(int n, std::mt19937_64& rng);

// (sum_j |mu_j(A)-mu_j(B)|^2, ||A-B||_F^2) with both spectra sorted
// descending; first ≤ second + 1e-9 for self-adjoint inputs.
std::pair<double, double> hoffman_wielandt_gap(const Eigen::MatrixXcd& A,
                                               const Eigen::MatrixXcd& B);

// Real dimension of the stratum of self-adjoint tuples with joint-eigenvalue
// multiplicity pattern `banner`: n^2 - sum r_i^2 + p for d = 1,
// n^2 + (d-2)n + p for d ≥ 2.
int dim_banner_stratum(int n, int d, const Banner& banner);

// n^2 + (d-1)n: real dimension of the self-adjoint variety, complex dimension
// of the general one. dim_variety_real doubles the latter.
int dim_variety(int n, int d, bool hermitian);
int dim_variety_real(int n, int d, bool hermitian);

// Known irreducibility table for the variety of commuting d-tuples of n×n
// matrices. Monotone: once reducible at (d', n), never irreducible at larger d.
Irreducibility irreducibility_status(int d, int n);

// Greedy multiset match: max over points of the distance to its nearest
// not-yet-claimed partner. Small only when configs agree as multisets.
double config_multiset_distance(const EigenConfig& a, const EigenConfig& b);

}  // namespace rct
