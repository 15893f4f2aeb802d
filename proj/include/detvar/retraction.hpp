#pragma once

#include "detvar/geometry.hpp"

namespace detvar {

/// Coordinates of a matrix in an adapted frame:
///   y = [u u_perp] [[a, c], [d, e]] [v v_perp]^T
/// with a of size rank x rank.
struct BlockCoordinates {
  Matrix a;
  Matrix c;
  Matrix d;
  Matrix e;

  Matrix assemble(const AdaptedFrame& frame) const;
};

/// Splits y into frame blocks a = u^T y v, c = u^T y v_perp, d = u_perp^T y v,
/// e = u_perp^T y v_perp.
BlockCoordinates block_coordinates(const AdaptedFrame& frame, const Matrix& y);

/// Schur complement e - d a^{-1} c. Throws std::domain_error when a is
/// numerically singular under the policy (the point then lies outside the
/// working ball of the orthographic retraction).
Matrix schur_complement(const BlockCoordinates& blocks,
                        const TolerancePolicy& tol = {});

/// Orthographic retraction onto the fixed-rank manifold through x: maps a
/// tangent vector y to the unique rank-r point of (x + y + normal space)
/// near x, in closed form
///   [u u_perp] [a; d] [I, a^{-1} c] [v v_perp]^T
/// where (a, c, d) are the frame blocks of x + y. The residual
/// retract(y) - (x + y) lies in the normal space, and retract(0) = x.
///
/// Throws std::domain_error if y has a nonzero normal component (relative
/// 1e-8) or if the a-block is singular: the domain requires
/// sigma_min(a) > max(1e-8 * sigma_1(x), absolute_floor).
Matrix orthographic_retract(const Matrix& x, const AdaptedFrame& frame,
                            const Matrix& y_tangent,
                            const TolerancePolicy& tol = {});

/// Rank-additivity check: with a1 in the pair1 subspace, a2 in the pair2
/// subspace, and the two pairs transversal (largest principal-angle cosine
/// below 1 - 1e-8 on each side), tests
///   rank(a1 + a2) == rank(a1) + rank(a2).
/// Precondition failures throw std::domain_error with distinct messages for
/// subspace membership and transversality.
bool direct_sum_rank_check(const SubspacePair& pair1, const Matrix& a1,
                           const SubspacePair& pair2, const Matrix& a2,
                           const TolerancePolicy& tol = {});

}  // namespace detvar
