#include "detvar/linalg.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace detvar {

Matrix SvdFactorization::reconstruct() const {
  return left * singular_values.asDiagonal() * right.transpose();
}

void check_finite(const Matrix& x, const char* what) {
  if (!x.allFinite()) {
    std::ostringstream msg;
    msg << what << ": matrix contains NaN or infinite entries";
    throw std::invalid_argument(msg.str());
  }
}

double frobenius_inner(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    std::ostringstream msg;
    msg << "frobenius_inner: shape mismatch (" << x.rows() << "x" << x.cols()
        << " vs " << y.rows() << "x" << y.cols() << ")";
    throw std::invalid_argument(msg.str());
  }
  return x.cwiseProduct(y).sum();
}

SvdFactorization svd(const Matrix& x) {
  check_finite(x, "svd");
  Eigen::JacobiSVD<Matrix> dec(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) {
    throw std::runtime_error("svd: iteration did not converge");
  }
  return SvdFactorization{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

int rank_from_singular_values(const Vector& sigma, double cutoff) {
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) ++rank;
  }
  return rank;
}

int numerical_rank(const Matrix& x, const TolerancePolicy& tol) {
  check_finite(x, "numerical_rank");
  if (x.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> dec(x);
  const Vector& sigma = dec.singularValues();
  const double scale = sigma.size() > 0 ? sigma(0) : 0.0;
  return rank_from_singular_values(sigma, tol.rank_cutoff(scale));
}

Matrix truncate_rank(const Matrix& x, int k) {
  const auto kmax = std::min(x.rows(), x.cols());
  if (k < 0 || k > kmax) {
    std::ostringstream msg;
    msg << "truncate_rank: k = " << k << " outside [0, " << kmax << "]";
    throw std::invalid_argument(msg.str());
  }
  if (k == 0) return Matrix::Zero(x.rows(), x.cols());
  const SvdFactorization f = svd(x);
  return f.left.leftCols(k) * f.singular_values.head(k).asDiagonal() *
         f.right.leftCols(k).transpose();
}

Matrix orthonormal_range_basis(const Matrix& x, const TolerancePolicy& tol) {
  const SvdFactorization f = svd(x);
  const double scale = f.singular_values.size() > 0 ? f.singular_values(0) : 0.0;
  const int rank =
      rank_from_singular_values(f.singular_values, tol.rank_cutoff(scale));
  return f.left.leftCols(rank);
}

Matrix orthogonal_complement(const Matrix& u) {
  check_finite(u, "orthogonal_complement");
  const Eigen::Index q = u.rows();
  const Eigen::Index p = u.cols();
  if (p > q) {
    throw std::invalid_argument(
        "orthogonal_complement: more columns than rows");
  }
  if (p > 0) {
    const double defect =
        (u.transpose() * u - Matrix::Identity(p, p)).norm();
    if (defect > 1e-8) {
      throw std::invalid_argument(
          "orthogonal_complement: input columns are not orthonormal");
    }
  }
  // Complete the basis from [u | I]; the first p Householder columns
  // reproduce im(u), the rest are the complement.
  Matrix augmented(q, p + q);
  augmented.leftCols(p) = u;
  augmented.rightCols(q) = Matrix::Identity(q, q);
  Eigen::HouseholderQR<Matrix> qr(augmented);
  Matrix full_q = qr.householderQ() * Matrix::Identity(q, q);
  return full_q.rightCols(q - p);
}

}  // namespace detvar
