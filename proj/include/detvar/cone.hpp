#pragma once

#include <random>
#include <string>

#include "detvar/geometry.hpp"

namespace detvar {

/// Verdict of a tangent-cone membership test at a point of rank `rank_low`
/// on the rank-<=r variety, together with the singular values of
/// u_perp^T z v_perp that justify it. A vector belongs to the cone iff the
/// rank of that block stays within the budget r - rank_low.
///
/// The rank decision uses the policy relative to the largest singular value
/// of z itself (not of the block), so tangent vectors whose normal component
/// is round-off leakage are accepted.
struct MembershipReport {
  bool is_member = false;
  Vector normal_block_singular_values;  // nonincreasing
  int normal_rank = 0;
  int rank_budget = 0;
  int r = 0;
  int rank_low = 0;
  bool tie = false;          // budget-boundary singular values equal within tolerance
  double reference_scale = 0.0;  // sigma_1(z) used for the cutoff
};

/// Machine-readable key=value serialization on a single line.
std::string to_machine(const MembershipReport& report);

/// A tangent-cone element split into its tangent-space part and a normal
/// part of rank at most the budget. The parts are orthogonal and sum to the
/// original vector (for decompose) or to the metric projection (for
/// project_to_cone). truncation_tie marks a non-unique metric projection.
struct ConeDecomposition {
  Matrix tangent_part;
  Matrix normal_part;
  bool truncation_tie = false;
};

/// Membership test for the tangent cone to the rank-<=r variety at x.
/// Requires 0 <= r < min(m, n) and rank(x) <= r. At x = 0 this reduces to
/// rank(z) <= r.
MembershipReport membership(const Matrix& x, const Matrix& z, int r,
                            const TolerancePolicy& tol = {});

/// Frame-cached variant; `frame` must be adapted to the point of interest.
MembershipReport membership(const AdaptedFrame& frame, const Matrix& z, int r,
                            const TolerancePolicy& tol = {});

/// Kernel-frame membership test: p (m x (m - rank_low)) and q
/// (n x (n - rank_low)) are any full-column-rank matrices spanning
/// ker(x^T) and ker(x); the verdict is rank(p^T z q) <= r - rank_low.
/// Agrees with membership() whenever the spans match. Throws
/// std::domain_error if p or q is rank-deficient.
bool membership_kernel_frames(const Matrix& p, const Matrix& q,
                              const Matrix& z, int r, int rank_low,
                              const TolerancePolicy& tol = {});

/// Subspace-existence membership test: true iff the kernel of
/// u_perp^T z v_perp has dimension at least n - r, i.e. iff some
/// (n - r)-dimensional subspace of ker(x) is mapped by z into im(x).
bool membership_grassmann(const Matrix& x, const Matrix& z, int r,
                          const TolerancePolicy& tol = {});
bool membership_grassmann(const AdaptedFrame& frame, const Matrix& z, int r,
                          const TolerancePolicy& tol = {});

/// For a member z, returns an n x (n - r) orthonormal basis of a subspace
/// S of ker(x) with z S inside im(x). Throws std::domain_error if z is not
/// in the cone.
Matrix grassmann_witness(const Matrix& x, const Matrix& z, int r,
                         const TolerancePolicy& tol = {});

/// Splits a cone member into tangent and normal parts. Throws
/// std::domain_error (reporting the offending singular values) if z is not
/// in the cone.
ConeDecomposition decompose(const Matrix& x, const Matrix& z, int r,
                            const TolerancePolicy& tol = {});
ConeDecomposition decompose(const AdaptedFrame& frame, const Matrix& z, int r,
                            const TolerancePolicy& tol = {});

/// Metric projection onto the tangent cone: keeps the tangent part and the
/// best rank-(r - rank_low) approximation of the normal part. The sum of the
/// parts is a nearest cone point in Frobenius norm; truncation_tie is set
/// when the dropped and kept singular values at the budget boundary are
/// equal within tolerance (the projection set is then not a singleton).
ConeDecomposition project_to_cone(const Matrix& x, const Matrix& z, int r,
                                  const TolerancePolicy& tol = {});
ConeDecomposition project_to_cone(const AdaptedFrame& frame, const Matrix& z,
                                  int r, const TolerancePolicy& tol = {});

/// Draws a random cone element: Gaussian tangent blocks plus a normal block
/// formed as a rank-budgeted product of Gaussian factors, all scaled by
/// `scale`. The result always passes membership().
Matrix sample_cone_element(const Matrix& x, int r, std::mt19937_64& rng,
                           double scale, const TolerancePolicy& tol = {});
Matrix sample_cone_element(const AdaptedFrame& frame, int r,
                           std::mt19937_64& rng, double scale);

}  // namespace detvar
