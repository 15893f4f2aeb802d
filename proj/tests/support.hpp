#pragma once

#include <random>
#include <vector>

#include "detvar/geometry.hpp"
#include "detvar/harness.hpp"

namespace testsupport {

using detvar::AdaptedFrame;
using detvar::Matrix;

// The 4x4 fixture: a rank-2 base point, a rank-3 sequence converging to it,
// and the limit of the scaled differences.
inline Matrix fixture_base_point() {
  Matrix x = Matrix::Zero(4, 4);
  x(0, 0) = 1.0;
  x(1, 1) = 1.0;
  return x;
}

inline Matrix fixture_sequence_point(int i) {
  const double inv = 1.0 / i;
  Matrix xi = fixture_base_point();
  xi(1, 3) = inv;
  xi(2, 2) = inv;
  xi(3, 1) = inv;
  xi(3, 3) = inv * inv;
  return xi;
}

inline Matrix fixture_limit() {
  Matrix z = Matrix::Zero(4, 4);
  z(1, 3) = 1.0;
  z(2, 2) = 1.0;
  z(3, 1) = 1.0;
  return z;
}

// Canonical axis-aligned frame of the fixture base point.
inline AdaptedFrame fixture_frame() {
  const Matrix identity = Matrix::Identity(4, 4);
  return detvar::frame_from_bases(identity.leftCols(2), identity.rightCols(2),
                                  identity.leftCols(2), identity.rightCols(2));
}

// Brute-force determinant by cofactor expansion; test-only oracle.
inline double det_oracle(const Matrix& a) {
  const Eigen::Index n = a.rows();
  if (n == 1) return a(0, 0);
  double result = 0.0;
  double sign = 1.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    Matrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index cc = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = a(r, c);
      }
    }
    result += sign * a(0, j) * det_oracle(minor);
    sign = -sign;
  }
  return result;
}

namespace detail {
inline bool next_combination(std::vector<Eigen::Index>& idx, Eigen::Index n) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  for (Eigen::Index i = k - 1; i >= 0; --i) {
    if (idx[static_cast<std::size_t>(i)] < n - k + i) {
      ++idx[static_cast<std::size_t>(i)];
      for (Eigen::Index j = i + 1; j < k; ++j) {
        idx[static_cast<std::size_t>(j)] =
            idx[static_cast<std::size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}
}  // namespace detail

// Largest k such that some k x k minor exceeds tol in magnitude;
// an SVD-free rank oracle for small matrices.
inline int rank_oracle_minors(const Matrix& a, double tol) {
  const Eigen::Index kmax = std::min(a.rows(), a.cols());
  for (Eigen::Index k = kmax; k >= 1; --k) {
    std::vector<Eigen::Index> rows(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) rows[static_cast<std::size_t>(i)] = i;
    do {
      std::vector<Eigen::Index> cols(static_cast<std::size_t>(k));
      for (Eigen::Index i = 0; i < k; ++i) {
        cols[static_cast<std::size_t>(i)] = i;
      }
      do {
        Matrix minor(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
          for (Eigen::Index j = 0; j < k; ++j) {
            minor(i, j) = a(rows[static_cast<std::size_t>(i)],
                            cols[static_cast<std::size_t>(j)]);
          }
        }
        if (std::abs(det_oracle(minor)) > tol) {
          return static_cast<int>(k);
        }
      } while (detail::next_combination(cols, a.cols()));
    } while (detail::next_combination(rows, a.rows()));
  }
  return 0;
}

// A second frame for the same point, with the bases rotated inside their
// subspaces; the projection operators must not change.
inline AdaptedFrame rotated_copy(const AdaptedFrame& frame,
                                 std::mt19937_64& rng) {
  const auto rotation = [&rng](Eigen::Index k) {
    if (k == 0) return Matrix(0, 0);
    Eigen::HouseholderQR<Matrix> qr(detvar::gaussian_matrix(k, k, rng));
    return Matrix(qr.householderQ() * Matrix::Identity(k, k));
  };
  return detvar::frame_from_bases(frame.u * rotation(frame.u.cols()),
                                  frame.u_perp * rotation(frame.u_perp.cols()),
                                  frame.v * rotation(frame.v.cols()),
                                  frame.v_perp * rotation(frame.v_perp.cols()));
}

// Matrix of exact rank k with singular values in [0.5, 2].
inline Matrix exact_rank_matrix(int m, int n, int k, std::mt19937_64& rng) {
  if (k == 0) return Matrix::Zero(m, n);
  const auto orthonormal = [&rng](Eigen::Index rows, Eigen::Index cols) {
    Eigen::HouseholderQR<Matrix> qr(detvar::gaussian_matrix(rows, cols, rng));
    return Matrix(qr.householderQ() * Matrix::Identity(rows, cols));
  };
  std::uniform_real_distribution<double> dist(0.5, 2.0);
  detvar::Vector sigma(k);
  for (int i = 0; i < k; ++i) sigma(i) = dist(rng);
  return orthonormal(m, k) * sigma.asDiagonal() *
         orthonormal(n, k).transpose();
}

}  // namespace testsupport
