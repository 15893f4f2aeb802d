#include "detvar/cone.hpp"

#include <sstream>
#include <stdexcept>

#include "detvar/matrix_io.hpp"

namespace detvar {

namespace {

void check_r_range(Eigen::Index m, Eigen::Index n, int r) {
  const auto limit = std::min(m, n);
  if (r < 0 || r >= limit) {
    std::ostringstream msg;
    msg << "rank bound r = " << r << " must satisfy 0 <= r < min(m, n) = "
        << limit;
    throw std::invalid_argument(msg.str());
  }
}

void check_point_on_variety(int rank_low, int r) {
  if (rank_low > r) {
    std::ostringstream msg;
    msg << "base point has rank " << rank_low
        << " above the variety bound r = " << r;
    throw std::invalid_argument(msg.str());
  }
}

double largest_singular_value(const Matrix& z) {
  if (z.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> dec(z);
  return dec.singularValues().size() > 0 ? dec.singularValues()(0) : 0.0;
}

Matrix normal_block(const AdaptedFrame& frame, const Matrix& z) {
  return frame.u_perp.transpose() * z * frame.v_perp;
}

bool boundary_tie(const Vector& sigma, int budget, double cutoff) {
  if (budget < 1 || budget >= sigma.size()) return false;
  return sigma(budget - 1) - sigma(budget) <= cutoff;
}

Matrix gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      g(i, j) = normal(rng);
    }
  }
  return g;
}

}  // namespace

std::string to_machine(const MembershipReport& report) {
  std::ostringstream out;
  out << "member=" << (report.is_member ? 1 : 0) << " r=" << report.r
      << " rank_low=" << report.rank_low << " budget=" << report.rank_budget
      << " normal_rank=" << report.normal_rank
      << " tie=" << (report.tie ? 1 : 0)
      << " scale=" << format_scalar(report.reference_scale) << " sigma=";
  for (Eigen::Index i = 0; i < report.normal_block_singular_values.size(); ++i) {
    if (i > 0) out << ",";
    out << format_scalar(report.normal_block_singular_values(i));
  }
  return out.str();
}

MembershipReport membership(const AdaptedFrame& frame, const Matrix& z, int r,
                            const TolerancePolicy& tol) {
  check_r_range(frame.rows(), frame.cols(), r);
  check_point_on_variety(frame.rank, r);
  if (z.rows() != frame.rows() || z.cols() != frame.cols()) {
    throw std::invalid_argument("membership: z has the wrong shape");
  }
  check_finite(z, "membership");

  MembershipReport report;
  report.r = r;
  report.rank_low = frame.rank;
  report.rank_budget = r - frame.rank;
  report.reference_scale = largest_singular_value(z);

  const Matrix block = normal_block(frame, z);
  Eigen::JacobiSVD<Matrix> dec(block);
  report.normal_block_singular_values = dec.singularValues();

  const double cutoff = tol.rank_cutoff(report.reference_scale);
  report.normal_rank =
      rank_from_singular_values(report.normal_block_singular_values, cutoff);
  report.is_member = report.normal_rank <= report.rank_budget;
  report.tie = boundary_tie(report.normal_block_singular_values,
                            report.rank_budget, cutoff);
  return report;
}

MembershipReport membership(const Matrix& x, const Matrix& z, int r,
                            const TolerancePolicy& tol) {
  check_r_range(x.rows(), x.cols(), r);
  return membership(adapted_frame(x, tol), z, r, tol);
}

bool membership_kernel_frames(const Matrix& p, const Matrix& q,
                              const Matrix& z, int r, int rank_low,
                              const TolerancePolicy& tol) {
  check_r_range(z.rows(), z.cols(), r);
  check_point_on_variety(rank_low, r);
  if (p.rows() != z.rows() || p.cols() != z.rows() - rank_low) {
    throw std::invalid_argument(
        "membership_kernel_frames: p must be m x (m - rank_low)");
  }
  if (q.rows() != z.cols() || q.cols() != z.cols() - rank_low) {
    throw std::invalid_argument(
        "membership_kernel_frames: q must be n x (n - rank_low)");
  }
  // Orthonormalize the spans; the block rank is invariant under the change
  // of basis, and the test then shares the membership() scale convention.
  const Matrix p_basis = orthonormal_range_basis(p, tol);
  if (p_basis.cols() != p.cols()) {
    throw std::domain_error("membership_kernel_frames: p is rank-deficient");
  }
  const Matrix q_basis = orthonormal_range_basis(q, tol);
  if (q_basis.cols() != q.cols()) {
    throw std::domain_error("membership_kernel_frames: q is rank-deficient");
  }
  check_finite(z, "membership_kernel_frames");
  const Matrix block = p_basis.transpose() * z * q_basis;
  Eigen::JacobiSVD<Matrix> dec(block);
  const double cutoff = tol.rank_cutoff(largest_singular_value(z));
  return rank_from_singular_values(dec.singularValues(), cutoff) <=
         r - rank_low;
}

bool membership_grassmann(const AdaptedFrame& frame, const Matrix& z, int r,
                          const TolerancePolicy& tol) {
  check_r_range(frame.rows(), frame.cols(), r);
  check_point_on_variety(frame.rank, r);
  const Matrix block = normal_block(frame, z);
  const double cutoff = tol.rank_cutoff(largest_singular_value(z));
  Eigen::JacobiSVD<Matrix> dec(block);
  const Eigen::Index kernel_dim =
      block.cols() - rank_from_singular_values(dec.singularValues(), cutoff);
  return kernel_dim >= frame.cols() - r;
}

bool membership_grassmann(const Matrix& x, const Matrix& z, int r,
                          const TolerancePolicy& tol) {
  check_r_range(x.rows(), x.cols(), r);
  return membership_grassmann(adapted_frame(x, tol), z, r, tol);
}

Matrix grassmann_witness(const Matrix& x, const Matrix& z, int r,
                         const TolerancePolicy& tol) {
  check_r_range(x.rows(), x.cols(), r);
  const AdaptedFrame frame = adapted_frame(x, tol);
  check_point_on_variety(frame.rank, r);
  const Matrix block = normal_block(frame, z);
  const double cutoff = tol.rank_cutoff(largest_singular_value(z));
  Eigen::JacobiSVD<Matrix> dec(block, Eigen::ComputeFullV);
  const int rank = rank_from_singular_values(dec.singularValues(), cutoff);
  const Eigen::Index kernel_dim = block.cols() - rank;
  const Eigen::Index wanted = x.cols() - r;
  if (kernel_dim < wanted) {
    throw std::domain_error(
        "grassmann_witness: z is not in the tangent cone");
  }
  // Kernel directions of the block, mapped back into ker(x).
  return frame.v_perp * dec.matrixV().rightCols(wanted);
}

ConeDecomposition decompose(const AdaptedFrame& frame, const Matrix& z, int r,
                            const TolerancePolicy& tol) {
  const MembershipReport report = membership(frame, z, r, tol);
  if (!report.is_member) {
    std::ostringstream msg;
    msg << "decompose: z is not in the tangent cone (normal rank "
        << report.normal_rank << " > budget " << report.rank_budget
        << "; sigma =";
    for (Eigen::Index i = 0; i < report.normal_block_singular_values.size();
         ++i) {
      msg << " " << format_scalar(report.normal_block_singular_values(i));
    }
    msg << ")";
    throw std::domain_error(msg.str());
  }
  return ConeDecomposition{proj_tangent(frame, z), proj_normal(frame, z),
                           false};
}

ConeDecomposition decompose(const Matrix& x, const Matrix& z, int r,
                            const TolerancePolicy& tol) {
  check_r_range(x.rows(), x.cols(), r);
  return decompose(adapted_frame(x, tol), z, r, tol);
}

ConeDecomposition project_to_cone(const AdaptedFrame& frame, const Matrix& z,
                                  int r, const TolerancePolicy& tol) {
  check_r_range(frame.rows(), frame.cols(), r);
  check_point_on_variety(frame.rank, r);
  if (z.rows() != frame.rows() || z.cols() != frame.cols()) {
    throw std::invalid_argument("project_to_cone: z has the wrong shape");
  }
  check_finite(z, "project_to_cone");

  ConeDecomposition result;
  result.tangent_part = proj_tangent(frame, z);

  const int budget = r - frame.rank;
  const Matrix block = normal_block(frame, z);
  Eigen::JacobiSVD<Matrix> dec(block,
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sigma = dec.singularValues();
  if (budget >= sigma.size()) {
    result.normal_part = frame.u_perp * block * frame.v_perp.transpose();
    return result;
  }
  const Matrix truncated = dec.matrixU().leftCols(budget) *
                           sigma.head(budget).asDiagonal() *
                           dec.matrixV().leftCols(budget).transpose();
  result.normal_part = frame.u_perp * truncated * frame.v_perp.transpose();
  result.truncation_tie =
      boundary_tie(sigma, budget, tol.rank_cutoff(largest_singular_value(z)));
  return result;
}

ConeDecomposition project_to_cone(const Matrix& x, const Matrix& z, int r,
                                  const TolerancePolicy& tol) {
  check_r_range(x.rows(), x.cols(), r);
  return project_to_cone(adapted_frame(x, tol), z, r, tol);
}

Matrix sample_cone_element(const AdaptedFrame& frame, int r,
                           std::mt19937_64& rng, double scale) {
  check_r_range(frame.rows(), frame.cols(), r);
  check_point_on_variety(frame.rank, r);
  const Eigen::Index rank = frame.rank;
  const Eigen::Index m_comp = frame.rows() - rank;
  const Eigen::Index n_comp = frame.cols() - rank;
  const Eigen::Index budget = r - rank;

  const Matrix g11 = scale * gaussian(rank, rank, rng);
  const Matrix g12 = scale * gaussian(rank, n_comp, rng);
  const Matrix g21 = scale * gaussian(m_comp, rank, rng);
  const Matrix g22 =
      scale * (gaussian(m_comp, budget, rng) * gaussian(budget, n_comp, rng));

  return frame.u * g11 * frame.v.transpose() +
         frame.u * g12 * frame.v_perp.transpose() +
         frame.u_perp * g21 * frame.v.transpose() +
         frame.u_perp * g22 * frame.v_perp.transpose();
}

Matrix sample_cone_element(const Matrix& x, int r, std::mt19937_64& rng,
                           double scale, const TolerancePolicy& tol) {
  check_r_range(x.rows(), x.cols(), r);
  return sample_cone_element(adapted_frame(x, tol), r, rng, scale);
}

}  // namespace detvar
