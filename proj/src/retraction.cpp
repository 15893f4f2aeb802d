#include "detvar/retraction.hpp"

#include <sstream>
#include <stdexcept>

namespace detvar {

namespace {

constexpr double kTangentLeakageTol = 1e-8;
constexpr double kRetractionDomainRel = 1e-8;
constexpr double kTransversalityTol = 1e-8;
constexpr double kTensorMembershipTol = 1e-8;

double smallest_singular_value(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> dec(a);
  const Vector& sigma = dec.singularValues();
  return sigma(sigma.size() - 1);
}

double largest_cross_cosine(const Matrix& b1, const Matrix& b2) {
  if (b1.cols() == 0 || b2.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> dec(b1.transpose() * b2);
  return dec.singularValues().size() > 0 ? dec.singularValues()(0) : 0.0;
}

}  // namespace

Matrix BlockCoordinates::assemble(const AdaptedFrame& frame) const {
  return frame.u * a * frame.v.transpose() +
         frame.u * c * frame.v_perp.transpose() +
         frame.u_perp * d * frame.v.transpose() +
         frame.u_perp * e * frame.v_perp.transpose();
}

BlockCoordinates block_coordinates(const AdaptedFrame& frame, const Matrix& y) {
  if (y.rows() != frame.rows() || y.cols() != frame.cols()) {
    throw std::invalid_argument("block_coordinates: y has the wrong shape");
  }
  check_finite(y, "block_coordinates");
  BlockCoordinates blocks;
  blocks.a = frame.u.transpose() * y * frame.v;
  blocks.c = frame.u.transpose() * y * frame.v_perp;
  blocks.d = frame.u_perp.transpose() * y * frame.v;
  blocks.e = frame.u_perp.transpose() * y * frame.v_perp;
  return blocks;
}

Matrix schur_complement(const BlockCoordinates& blocks,
                        const TolerancePolicy& tol) {
  const Matrix& a = blocks.a;
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("schur_complement: a-block must be square");
  }
  if (a.rows() == 0) return blocks.e;
  Eigen::JacobiSVD<Matrix> dec(a);
  const Vector& sigma = dec.singularValues();
  if (sigma(sigma.size() - 1) <= tol.rank_cutoff(sigma(0))) {
    throw std::domain_error(
        "schur_complement: a-block is numerically singular");
  }
  return blocks.e - blocks.d * a.partialPivLu().solve(blocks.c);
}

Matrix orthographic_retract(const Matrix& x, const AdaptedFrame& frame,
                            const Matrix& y_tangent,
                            const TolerancePolicy& tol) {
  if (x.rows() != frame.rows() || x.cols() != frame.cols()) {
    throw std::invalid_argument("orthographic_retract: x has the wrong shape");
  }
  if (y_tangent.rows() != x.rows() || y_tangent.cols() != x.cols()) {
    throw std::invalid_argument("orthographic_retract: y has the wrong shape");
  }
  check_finite(y_tangent, "orthographic_retract");

  const double y_norm = y_tangent.norm();
  if (y_norm == 0.0) return x;

  const Matrix y_normal_block =
      frame.u_perp.transpose() * y_tangent * frame.v_perp;
  if (y_normal_block.norm() > kTangentLeakageTol * y_norm) {
    throw std::domain_error(
        "orthographic_retract: y has a nonzero normal component");
  }

  const BlockCoordinates blocks = block_coordinates(frame, x + y_tangent);
  const double sigma_x = x.size() > 0 ? Eigen::JacobiSVD<Matrix>(x)
                                            .singularValues()(0)
                                      : 0.0;
  const double floor =
      std::max(kRetractionDomainRel * sigma_x, tol.absolute_floor);
  if (smallest_singular_value(blocks.a) <= floor) {
    throw std::domain_error(
        "orthographic_retract: a-block of x + y is singular (outside the "
        "retraction domain)");
  }

  const Matrix a_inv_c = blocks.a.partialPivLu().solve(blocks.c);
  const Matrix left = frame.u * blocks.a + frame.u_perp * blocks.d;  // [a; d]
  const Matrix right = frame.v + frame.v_perp * a_inv_c.transpose();  // [I, a^{-1}c]
  return left * right.transpose();
}

bool direct_sum_rank_check(const SubspacePair& pair1, const Matrix& a1,
                           const SubspacePair& pair2, const Matrix& a2,
                           const TolerancePolicy& tol) {
  if (!contains_tensor_product(pair1, a1, kTensorMembershipTol)) {
    throw std::domain_error(
        "direct_sum_rank_check: a1 is not contained in its subspace pair");
  }
  if (!contains_tensor_product(pair2, a2, kTensorMembershipTol)) {
    throw std::domain_error(
        "direct_sum_rank_check: a2 is not contained in its subspace pair");
  }
  const double left_cos =
      largest_cross_cosine(pair1.left_basis, pair2.left_basis);
  const double right_cos =
      largest_cross_cosine(pair1.right_basis, pair2.right_basis);
  if (left_cos >= 1.0 - kTransversalityTol ||
      right_cos >= 1.0 - kTransversalityTol) {
    throw std::domain_error(
        "direct_sum_rank_check: subspace pairs are not transversal");
  }
  return numerical_rank(a1 + a2, tol) ==
         numerical_rank(a1, tol) + numerical_rank(a2, tol);
}

}  // namespace detvar
