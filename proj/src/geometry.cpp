#include "detvar/geometry.hpp"

#include <sstream>
#include <stdexcept>

namespace detvar {

namespace {

void check_same_shape(const Matrix& a, Eigen::Index rows, Eigen::Index cols,
                      const char* what) {
  if (a.rows() != rows || a.cols() != cols) {
    std::ostringstream msg;
    msg << what << ": expected " << rows << "x" << cols << ", got " << a.rows()
        << "x" << a.cols();
    throw std::invalid_argument(msg.str());
  }
}

void check_orthogonal_pair(const Matrix& b, const Matrix& b_perp,
                           const char* what) {
  const Eigen::Index q = b.rows();
  if (b_perp.rows() != q || b.cols() + b_perp.cols() != q) {
    throw std::invalid_argument(std::string(what) +
                                ": bases do not assemble to a square matrix");
  }
  Matrix full(q, q);
  full.leftCols(b.cols()) = b;
  full.rightCols(b_perp.cols()) = b_perp;
  const double defect = (full.transpose() * full - Matrix::Identity(q, q)).norm();
  if (defect > 1e-8) {
    throw std::invalid_argument(std::string(what) +
                                ": assembled basis is not orthogonal");
  }
}

}  // namespace

AdaptedFrame adapted_frame(const Matrix& x, const TolerancePolicy& tol) {
  const SvdFactorization f = svd(x);
  const double scale = f.singular_values.size() > 0 ? f.singular_values(0) : 0.0;
  const int rank =
      rank_from_singular_values(f.singular_values, tol.rank_cutoff(scale));
  AdaptedFrame frame;
  frame.rank = rank;
  frame.u = f.left.leftCols(rank);
  frame.v = f.right.leftCols(rank);
  frame.u_perp = orthogonal_complement(frame.u.rows() > 0
                                           ? frame.u
                                           : Matrix(x.rows(), 0));
  frame.v_perp = orthogonal_complement(frame.v.rows() > 0
                                           ? frame.v
                                           : Matrix(x.cols(), 0));
  return frame;
}

AdaptedFrame frame_from_bases(Matrix u, Matrix u_perp, Matrix v,
                              Matrix v_perp) {
  check_orthogonal_pair(u, u_perp, "frame_from_bases: left");
  check_orthogonal_pair(v, v_perp, "frame_from_bases: right");
  if (u.cols() != v.cols()) {
    throw std::invalid_argument(
        "frame_from_bases: u and v must have the same number of columns");
  }
  AdaptedFrame frame;
  frame.rank = static_cast<int>(u.cols());
  frame.u = std::move(u);
  frame.u_perp = std::move(u_perp);
  frame.v = std::move(v);
  frame.v_perp = std::move(v_perp);
  return frame;
}

Matrix proj_tangent(const AdaptedFrame& frame, const Matrix& z) {
  check_same_shape(z, frame.rows(), frame.cols(), "proj_tangent");
  const Matrix uut_z = frame.u * (frame.u.transpose() * z);
  const Matrix z_vvt = (z * frame.v) * frame.v.transpose();
  const Matrix uut_z_vvt = (uut_z * frame.v) * frame.v.transpose();
  return uut_z + z_vvt - uut_z_vvt;
}

Matrix proj_normal(const AdaptedFrame& frame, const Matrix& z) {
  check_same_shape(z, frame.rows(), frame.cols(), "proj_normal");
  return frame.u_perp * (frame.u_perp.transpose() * z * frame.v_perp) *
         frame.v_perp.transpose();
}

long long tangent_dim(long long m, long long n, long long rank_low) {
  if (m <= 0 || n <= 0 || rank_low < 0 || rank_low > std::min(m, n)) {
    std::ostringstream msg;
    msg << "tangent_dim: invalid arguments m=" << m << " n=" << n
        << " rank=" << rank_low;
    throw std::invalid_argument(msg.str());
  }
  return (m + n - rank_low) * rank_low;
}

bool contains_tensor_product(const SubspacePair& pair, const Matrix& z,
                             double rel_tol) {
  if (pair.left_basis.rows() != z.rows() ||
      pair.right_basis.rows() != z.cols()) {
    throw std::invalid_argument(
        "contains_tensor_product: basis dimensions do not match z");
  }
  const double scale = z.norm();
  const Matrix& l = pair.left_basis;
  const Matrix& r = pair.right_basis;
  const double left_residual = (z - l * (l.transpose() * z)).norm();
  const double right_residual =
      (z.transpose() - r * (r.transpose() * z.transpose())).norm();
  return left_residual <= rel_tol * scale && right_residual <= rel_tol * scale;
}

}  // namespace detvar
