#pragma once

#include "detvar/linalg.hpp"

namespace detvar {

/// Orthonormal bases adapted to a matrix X of rank `rank`: the columns of u
/// span im(X), those of v span im(X^T), and u_perp/v_perp complete them to
/// square orthogonal matrices. The generating X is not stored; callers that
/// need the alignment residuals re-check them explicitly.
struct AdaptedFrame {
  Matrix u;       // m x rank
  Matrix u_perp;  // m x (m - rank)
  Matrix v;       // n x rank
  Matrix v_perp;  // n x (n - rank)
  int rank = 0;

  Eigen::Index rows() const { return u.rows(); }
  Eigen::Index cols() const { return v.rows(); }
};

/// A pair of subspaces (im left_basis) x (im right_basis), each given by a
/// matrix with orthonormal columns. Carries the matrix subspace
/// {Z : im Z inside the left space, im Z^T inside the right space}.
struct SubspacePair {
  Matrix left_basis;
  Matrix right_basis;
};

/// Builds the frame of x under the rank policy. x = 0 yields an empty u, v
/// and full complements.
AdaptedFrame adapted_frame(const Matrix& x, const TolerancePolicy& tol = {});

/// Assembles a frame from explicit bases, validating that [u u_perp] and
/// [v v_perp] are orthogonal within 1e-8.
AdaptedFrame frame_from_bases(Matrix u, Matrix u_perp, Matrix v, Matrix v_perp);

/// Orthogonal projection of z onto the tangent space of the fixed-rank
/// manifold at the frame's point: u u^T z + z v v^T - u u^T z v v^T.
Matrix proj_tangent(const AdaptedFrame& frame, const Matrix& z);

/// Orthogonal projection onto the normal space: u_perp u_perp^T z v_perp v_perp^T.
/// proj_tangent + proj_normal is the identity.
Matrix proj_normal(const AdaptedFrame& frame, const Matrix& z);

/// Dimension (m + n - rank_low) * rank_low of the fixed-rank manifold.
/// Requires 0 <= rank_low <= min(m, n).
long long tangent_dim(long long m, long long n, long long rank_low);

/// True iff im(z) is inside the pair's left space and im(z^T) inside the
/// right space, both within rel_tol * ||z||_F.
bool contains_tensor_product(const SubspacePair& pair, const Matrix& z,
                             double rel_tol);

}  // namespace detvar
