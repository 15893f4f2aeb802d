#pragma once

#include <Eigen/Dense>

namespace detvar {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Threshold policy for deciding which singular values count toward rank.
/// A singular value s contributes iff s > max(relative_rank_threshold * s_max,
/// absolute_floor), where s_max is a caller-chosen reference scale (usually
/// the largest singular value of the matrix under test).
struct TolerancePolicy {
  double relative_rank_threshold = 1e-10;
  double absolute_floor = 1e-14;

  double rank_cutoff(double sigma_max) const noexcept {
    const double rel = relative_rank_threshold * sigma_max;
    return rel > absolute_floor ? rel : absolute_floor;
  }
};

/// Thin SVD, X = left * diag(singular_values) * right^T with orthonormal
/// columns in both factors and nonincreasing singular values.
struct SvdFactorization {
  Matrix left;
  Vector singular_values;
  Matrix right;

  Matrix reconstruct() const;
};

/// Throws std::invalid_argument if any entry of x is NaN or infinite.
void check_finite(const Matrix& x, const char* what);

/// Frobenius inner product trace(y^T x). Throws on shape mismatch.
double frobenius_inner(const Matrix& x, const Matrix& y);

/// Thin SVD of a finite matrix. Throws std::runtime_error if the underlying
/// iteration fails to converge.
SvdFactorization svd(const Matrix& x);

/// Number of singular values in `sigma` (nonincreasing) above `cutoff`.
int rank_from_singular_values(const Vector& sigma, double cutoff);

/// Numerical rank of x under the policy, with the largest singular value of
/// x itself as the reference scale. The zero matrix has rank 0.
int numerical_rank(const Matrix& x, const TolerancePolicy& tol = {});

/// Best Frobenius-norm approximation of rank <= k (largest k singular
/// triples, ties broken by SVD output order). Requires 0 <= k <= min(m, n).
Matrix truncate_rank(const Matrix& x, int k);

/// Matrix with orthonormal columns spanning the image of x; the column count
/// equals numerical_rank(x, tol). May have zero columns.
Matrix orthonormal_range_basis(const Matrix& x, const TolerancePolicy& tol = {});

/// Given u with orthonormal columns (p <= q rows), returns u_perp such that
/// [u u_perp] is square orthogonal. Computed by a Householder QR of [u | I],
/// so the result is deterministic. Throws std::invalid_argument if the
/// columns of u are not orthonormal within 1e-8.
Matrix orthogonal_complement(const Matrix& u);

}  // namespace detvar
