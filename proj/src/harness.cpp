#include "detvar/harness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "detvar/matrix_io.hpp"

namespace detvar {

namespace {

constexpr double kQuotientTol = 1e-6;   // difference-quotient error at t = 2^-20
constexpr double kExactTol = 1e-12;     // closed-form fixture comparisons
constexpr double kOptimalitySlack = 1e-9;

struct FailureLog {
  TrialReport* report;
  double worst = 0.0;

  void fail(long long trial, const std::string& reason, double violation) {
    ++report->failures;
    worst = std::max(worst, violation);
    if (report->failures == 1) {
      report->details.emplace_back("first_failure",
                                   "trial " + std::to_string(trial) + ": " +
                                       reason);
    }
  }

  // Yes/no check; contributes to the failure count only.
  void check(bool ok, long long trial, const std::string& reason) {
    if (!ok) fail(trial, reason, 1.0);
  }

  // Quantitative check: the measured value always feeds worst_violation.
  void measure(double value, double bound, long long trial,
               const std::string& reason) {
    worst = std::max(worst, value);
    if (!(value <= bound)) fail(trial, reason, value);
  }
};

void check_dimensions(int m, int n, int r, int rank_low) {
  if (m < 1 || n < 1) {
    throw std::invalid_argument("harness: dimensions must be positive");
  }
  if (rank_low < 0 || rank_low > r || r >= std::min(m, n)) {
    throw std::invalid_argument(
        "harness: need 0 <= rank_low <= r < min(m, n)");
  }
}

Matrix normalized_or_zero(Matrix z) {
  const double norm = z.norm();
  if (norm > 0.0) z /= norm;
  return z;
}

// Budgeted normal-space element u_perp (F1 F2) v_perp^T.
Matrix random_normal_part(const AdaptedFrame& frame, int budget,
                          std::mt19937_64& rng) {
  const Eigen::Index m_comp = frame.rows() - frame.rank;
  const Eigen::Index n_comp = frame.cols() - frame.rank;
  const Matrix factor = gaussian_matrix(m_comp, budget, rng) *
                        gaussian_matrix(budget, n_comp, rng);
  return frame.u_perp * factor * frame.v_perp.transpose();
}

// Runs the three membership oracles on the same data and requires a
// unanimous verdict; returns it.
bool unanimous_verdict(const AdaptedFrame& frame, const Matrix& z, int r,
                       std::mt19937_64& rng, FailureLog& log, long long trial,
                       const TolerancePolicy& tol = {}) {
  const MembershipReport direct = membership(frame, z, r, tol);
  const Matrix p = frame.u_perp * random_invertible(frame.u_perp.cols(), rng);
  const Matrix q = frame.v_perp * random_invertible(frame.v_perp.cols(), rng);
  const bool kernel = membership_kernel_frames(p, q, z, r, frame.rank, tol);
  const bool grassmann = membership_grassmann(frame, z, r, tol);
  if (kernel != direct.is_member || grassmann != direct.is_member) {
    log.fail(trial, "membership oracles disagree", 1.0);
  }
  return direct.is_member;
}

std::string format_int(long long v) { return std::to_string(v); }

}  // namespace

std::string to_machine(const TrialReport& report) {
  std::ostringstream out;
  out << "check=" << report.name << " trials=" << report.trials
      << " failures=" << report.failures
      << " worst_violation=" << format_scalar(report.worst_violation)
      << " seed=" << report.seed;
  for (const auto& [key, value] : report.details) {
    out << " " << key << "=" << value;
  }
  return out.str();
}

Matrix ArcSpec::value(double t) const {
  if (left_poly.empty() || right_poly.empty()) {
    throw std::invalid_argument("ArcSpec: empty coefficient list");
  }
  Matrix l = left_poly.back();
  for (auto it = left_poly.rbegin() + 1; it != left_poly.rend(); ++it) {
    l = *it + t * l;
  }
  Matrix r = right_poly.back();
  for (auto it = right_poly.rbegin() + 1; it != right_poly.rend(); ++it) {
    r = *it + t * r;
  }
  return l * r.transpose();
}

Matrix ArcSpec::derivative_at_zero() const {
  if (left_poly.empty() || right_poly.empty()) {
    throw std::invalid_argument("ArcSpec: empty coefficient list");
  }
  Matrix result = Matrix::Zero(left_poly[0].rows(), right_poly[0].rows());
  if (left_poly.size() > 1) {
    result += left_poly[1] * right_poly[0].transpose();
  }
  if (right_poly.size() > 1) {
    result += left_poly[0] * right_poly[1].transpose();
  }
  return result;
}

Matrix ArcSpec::central_difference(double h) const {
  return (value(h) - value(-h)) / (2.0 * h);
}

Matrix SequenceWitness::difference_quotient(std::size_t i) const {
  return (points.at(i) - limit_point) / times.at(i);
}

LimitEstimate estimate_limit(const SequenceWitness& witness) {
  const std::size_t count = witness.points.size();
  if (count < 3 || witness.times.size() != count) {
    throw std::invalid_argument(
        "estimate_limit: need at least three points with matching times");
  }
  const auto extrapolate = [&](std::size_t a, std::size_t b) {
    const double ta = witness.times[a];
    const double tb = witness.times[b];
    return ((ta * witness.difference_quotient(b) -
             tb * witness.difference_quotient(a)) /
            (ta - tb))
        .eval();
  };
  const Matrix previous = extrapolate(count - 3, count - 2);
  const Matrix last = extrapolate(count - 2, count - 1);
  return LimitEstimate{last, (last - previous).norm()};
}

std::uint64_t trial_seed(std::uint64_t seed, long long trial) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL *
                               (static_cast<std::uint64_t>(trial) + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols,
                       std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      g(i, j) = normal(rng);
    }
  }
  return g;
}

Matrix random_rank_point(int m, int n, int rank, std::mt19937_64& rng) {
  if (rank == 0) return Matrix::Zero(m, n);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Matrix x = gaussian_matrix(m, rank, rng) *
                     gaussian_matrix(n, rank, rng).transpose();
    Eigen::JacobiSVD<Matrix> dec(x);
    const Vector& sigma = dec.singularValues();
    const double smallest = sigma(rank - 1);
    if (smallest > 0.0 && sigma(0) / smallest <= 100.0) {
      return x / smallest;
    }
  }
  throw std::runtime_error("random_rank_point: repeated degenerate draws");
}

Matrix random_invertible(Eigen::Index k, std::mt19937_64& rng) {
  if (k == 0) return Matrix(0, 0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Matrix g = gaussian_matrix(k, k, rng);
    Eigen::JacobiSVD<Matrix> dec(g);
    if (dec.singularValues()(k - 1) >= 0.1) return g;
  }
  throw std::runtime_error("random_invertible: repeated degenerate draws");
}

TrialReport counterexample_fixture() {
  TrialReport report;
  report.name = "counterexample";
  report.seed = 0;
  FailureLog log{&report};

  constexpr int kRank = 3;      // variety bound r
  constexpr int kRankLow = 2;   // rank of the base point
  constexpr int kCount = 100;

  Matrix x = Matrix::Zero(4, 4);
  x(0, 0) = 1.0;
  x(1, 1) = 1.0;

  Matrix z = Matrix::Zero(4, 4);
  z(1, 3) = 1.0;
  z(2, 2) = 1.0;
  z(3, 1) = 1.0;

  // The base point is axis-aligned, so the canonical frame is exact.
  const Matrix identity = Matrix::Identity(4, 4);
  const AdaptedFrame frame = frame_from_bases(
      identity.leftCols(2), identity.rightCols(2), identity.leftCols(2),
      identity.rightCols(2));

  // The SVD-derived frame must give the same projection operators.
  const AdaptedFrame svd_frame = adapted_frame(x);
  log.check(svd_frame.rank == kRankLow, 0, "rank of the base point");
  {
    const Matrix probe = Matrix::Identity(4, 4);
    const double frame_gap =
        (proj_normal(frame, probe) - proj_normal(svd_frame, probe)).norm();
    log.measure(frame_gap, kExactTol, 0, "frame-independent projections");
  }

  // Limit membership: the normal block is [[1,0],[0,0]], rank 1 = budget.
  const MembershipReport limit_report = membership(frame, z, kRank);
  log.check(limit_report.is_member, 0, "limit membership");
  log.check(limit_report.normal_rank == 1 && limit_report.rank_budget == 1, 0,
            "limit normal rank");
  {
    Matrix expected_block(2, 2);
    expected_block << 1.0, 0.0, 0.0, 0.0;
    const Matrix block = frame.u_perp.transpose() * z * frame.v_perp;
    log.measure((block - expected_block).norm(), kExactTol, 0,
                "limit normal block entries");
    const Vector& sigma = limit_report.normal_block_singular_values;
    log.measure(std::max(std::abs(sigma(0) - 1.0), std::abs(sigma(1))),
                kExactTol, 0, "limit normal block singular values");
  }
  {
    const Matrix p = identity.rightCols(2);
    const Matrix q = identity.rightCols(2);
    log.check(membership_kernel_frames(p, q, z, kRank, kRankLow), 0,
              "kernel-frame verdict on the limit");
    log.check(membership_grassmann(frame, z, kRank), 0,
              "subspace verdict on the limit");
  }

  const SubspacePair normal_pair{frame.u_perp, frame.v_perp};
  SequenceWitness witness;
  witness.limit_point = x;

  for (int i = 1; i <= kCount; ++i) {
    ++report.trials;
    const double inv = 1.0 / i;
    Matrix xi = x;
    xi(1, 3) = inv;
    xi(2, 2) = inv;
    xi(3, 1) = inv;
    xi(3, 3) = inv * inv;

    // X_i has two proportional columns, hence exact rank 3.
    log.check(numerical_rank(xi) == kRank, i, "rank of X_i");

    // Normal projection keeps the trailing diagonal block; its rank exceeds
    // the budget for every i.
    Matrix expected_normal = Matrix::Zero(4, 4);
    expected_normal(2, 2) = inv;
    expected_normal(3, 3) = inv * inv;
    const Matrix normal = proj_normal(frame, xi);
    log.measure((normal - expected_normal).norm(), kExactTol, i,
                "normal projection entries");
    log.check(numerical_rank(normal) == 2, i,
              "normal projection rank exceeds the budget");

    // Scaled differences converge to z: the gap is exactly 1/i.
    const double gap = (static_cast<double>(i) * (xi - x) - z).norm();
    log.measure(std::abs(gap - inv), kExactTol, i,
                "scaled difference gap equals 1/i");

    // Repaired decomposition through the orthographic retraction.
    const Matrix tangent_step = proj_tangent(frame, xi - x);
    const Matrix li = orthographic_retract(x, frame, tangent_step);
    const Matrix repaired = xi - li;
    Matrix expected_repaired = Matrix::Zero(4, 4);
    expected_repaired(2, 2) = inv;
    log.measure((repaired - expected_repaired).norm(), kExactTol, i,
                "X_i - L_i closed form");
    log.check(numerical_rank(repaired) <= kRank - kRankLow, i,
              "rank of X_i - L_i within the budget");

    // Same quantity through the block algebra.
    const BlockCoordinates blocks = block_coordinates(frame, xi);
    const Matrix schur = schur_complement(blocks);
    Matrix expected_schur = Matrix::Zero(2, 2);
    expected_schur(0, 0) = inv;
    log.measure((schur - expected_schur).norm(), kExactTol, i,
                "Schur complement closed form");
    const Matrix schur_ambient =
        frame.u_perp * schur * frame.v_perp.transpose();
    log.measure((repaired - schur_ambient).norm(), kExactTol, i,
                "block identity for X_i - L_i");

    // Three-term split of the normal projection at scale t_i = 1/i.
    const Matrix first_term = (li - x - tangent_step) / inv;
    const Matrix second_term = repaired / inv;
    const Matrix split_gap =
        proj_normal(frame, (xi - x) / inv) - first_term - second_term;
    log.measure(split_gap.norm(), kExactTol, i, "three-term decomposition");

    // Rank additivity of the repaired split.
    const SubspacePair li_pair{orthonormal_range_basis(li),
                               orthonormal_range_basis(li.transpose())};
    log.check(direct_sum_rank_check(li_pair, li, normal_pair, repaired), i,
              "rank additivity of L_i and X_i - L_i");

    witness.points.push_back(xi);
    witness.times.push_back(inv);
  }

  // The recorded sequence, fed through the limit estimator, reproduces the
  // membership verdict of the exact limit.
  {
    std::reverse(witness.points.begin(), witness.points.end());
    std::reverse(witness.times.begin(), witness.times.end());
    const LimitEstimate estimate = estimate_limit(witness);
    log.measure((estimate.limit - z).norm(), kExactTol, kCount,
                "extrapolated limit");
    TolerancePolicy widened;
    widened.absolute_floor =
        std::max(widened.absolute_floor, 10.0 * estimate.residual);
    log.check(membership(frame, estimate.limit, kRank, widened).is_member,
              kCount, "membership of the extrapolated limit");
  }

  report.worst_violation = log.worst;
  report.details.emplace_back("normal_rank", "2");
  report.details.emplace_back("budget", "1");
  report.details.emplace_back("limit_member", "1");
  return report;
}

TrialReport verify_inclusion_chain(int m, int n, int r, int rank_low,
                                   long long trials, std::uint64_t seed) {
  check_dimensions(m, n, r, rank_low);
  TrialReport report;
  report.name = "inclusion_chain";
  report.seed = seed;
  FailureLog log{&report};
  const int budget = r - rank_low;
  double worst_quotient = 0.0;

  for (long long trial = 0; trial < trials; ++trial) {
    ++report.trials;
    std::mt19937_64 rng(trial_seed(seed, trial));
    try {
      const Matrix x = random_rank_point(m, n, rank_low, rng);
      const AdaptedFrame frame = adapted_frame(x);
      if (frame.rank != rank_low) {
        log.fail(trial, "frame rank mismatch", 1.0);
        continue;
      }

      // First inclusion, realized: tangent plus budgeted normal element.
      const Matrix w1 = proj_tangent(frame, gaussian_matrix(m, n, rng)) +
                        random_normal_part(frame, budget, rng);
      if (!unanimous_verdict(frame, w1, r, rng, log, trial)) {
        log.fail(trial, "tangent + budgeted normal sample rejected", 1.0);
      }

      const ConeDecomposition split = decompose(frame, w1, r);
      const double reconstruct_gap =
          (split.tangent_part + split.normal_part - w1).norm() /
          std::max(1.0, w1.norm());
      log.measure(reconstruct_gap, 1e-12, trial, "decompose reconstruction");

      // Second inclusion: tangent plus arbitrary rank-budget matrix.
      const Matrix tangent = proj_tangent(frame, gaussian_matrix(m, n, rng));
      const Matrix low_rank = gaussian_matrix(m, budget, rng) *
                              gaussian_matrix(n, budget, rng).transpose();
      const Matrix w2 = tangent + low_rank;
      if (!unanimous_verdict(frame, w2, r, rng, log, trial)) {
        log.fail(trial, "tangent + low-rank sample rejected", 1.0);
      }

      // Third inclusion, constructive: X_j = R_X(t_j Z1) + t_j Z2 stays on
      // the variety and its difference quotients converge to Z1 + Z2.
      const Matrix z1 = normalized_or_zero(tangent);
      const Matrix z2 = normalized_or_zero(low_rank);
      const Matrix w = z1 + z2;
      Matrix last_quotient;
      bool on_variety = true;
      for (int j = 1; j <= 20; ++j) {
        const double t = std::ldexp(1.0, -j);
        const Matrix xj =
            orthographic_retract(x, frame, t * z1) + t * z2;
        if (numerical_rank(xj) > r) {
          log.fail(trial, "sequence point left the variety", 1.0);
          on_variety = false;
          break;
        }
        last_quotient = (xj - x) / t;
      }
      if (on_variety) {
        const double quotient_gap = (last_quotient - w).norm();
        worst_quotient = std::max(worst_quotient, quotient_gap);
        log.measure(quotient_gap, kQuotientTol, trial,
                    "difference quotient at t = 2^-20");
      }
      if (!unanimous_verdict(frame, w, r, rng, log, trial)) {
        log.fail(trial, "sequence limit rejected", 1.0);
      }
    } catch (const std::exception& error) {
      log.fail(trial, std::string("exception: ") + error.what(), 1.0);
    }
  }

  report.worst_violation = log.worst;
  report.details.emplace_back("m", format_int(m));
  report.details.emplace_back("n", format_int(n));
  report.details.emplace_back("r", format_int(r));
  report.details.emplace_back("rank_low", format_int(rank_low));
  report.details.emplace_back("worst_quotient_error",
                              format_scalar(worst_quotient));
  return report;
}

TrialReport sequence_limit_check(int m, int n, int r, int rank_low,
                                 long long trials, std::uint64_t seed) {
  check_dimensions(m, n, r, rank_low);
  TrialReport report;
  report.name = "sequence_limit";
  report.seed = seed;
  FailureLog log{&report};
  const int budget = r - rank_low;
  long long regenerated = 0;

  for (long long trial = 0; trial < trials; ++trial) {
    ++report.trials;
    std::mt19937_64 rng(trial_seed(seed, trial));
    try {
      const Matrix x = random_rank_point(m, n, rank_low, rng);
      const AdaptedFrame frame = adapted_frame(x);
      if (frame.rank != rank_low) {
        log.fail(trial, "frame rank mismatch", 1.0);
        continue;
      }

      bool converged = false;
      SequenceWitness witness;
      for (int attempt = 0; attempt < 5 && !converged; ++attempt) {
        if (attempt > 0) ++regenerated;
        const Matrix z1 = normalized_or_zero(
            proj_tangent(frame, gaussian_matrix(m, n, rng)));
        const Matrix normal_part =
            normalized_or_zero(random_normal_part(frame, budget, rng));

        witness = SequenceWitness{};
        witness.limit_point = x;
        bool on_variety = true;
        for (int j = 4; j <= 12; ++j) {
          const double t = std::ldexp(1.0, -j);
          const Matrix xj =
              orthographic_retract(x, frame, t * z1) + t * normal_part;
          if (numerical_rank(xj) > r) {
            on_variety = false;
            break;
          }
          witness.points.push_back(xj);
          witness.times.push_back(t);
        }
        if (!on_variety) continue;

        // Difference quotients must be Cauchy over the recorded tail.
        const std::size_t count = witness.points.size();
        const double tail_gap = (witness.difference_quotient(count - 1) -
                                 witness.difference_quotient(count - 2))
                                    .norm();
        const double prev_gap = (witness.difference_quotient(count - 2) -
                                 witness.difference_quotient(count - 3))
                                    .norm();
        converged = tail_gap <= 0.75 * prev_gap + 1e-13;
      }
      if (!converged) {
        log.fail(trial, "failed to generate a convergent sequence", 1.0);
        continue;
      }

      const LimitEstimate estimate = estimate_limit(witness);
      TolerancePolicy widened;
      widened.absolute_floor =
          std::max(widened.absolute_floor, 10.0 * estimate.residual);
      if (!unanimous_verdict(frame, estimate.limit, r, rng, log, trial,
                             widened)) {
        log.fail(trial, "estimated limit rejected", 1.0);
      }
    } catch (const std::exception& error) {
      log.fail(trial, std::string("exception: ") + error.what(), 1.0);
    }
  }

  report.worst_violation = log.worst;
  report.details.emplace_back("m", format_int(m));
  report.details.emplace_back("n", format_int(n));
  report.details.emplace_back("r", format_int(r));
  report.details.emplace_back("rank_low", format_int(rank_low));
  report.details.emplace_back("regenerated", format_int(regenerated));
  return report;
}

TrialReport arc_tangent_check(int m, int n, int r, int rank_low, int degree,
                              long long trials, std::uint64_t seed) {
  check_dimensions(m, n, r, rank_low);
  if (degree < 1) {
    throw std::invalid_argument("arc_tangent_check: degree must be >= 1");
  }
  TrialReport report;
  report.name = "arc_tangent";
  report.seed = seed;
  FailureLog log{&report};

  for (long long trial = 0; trial < trials; ++trial) {
    ++report.trials;
    std::mt19937_64 rng(trial_seed(seed, trial));
    try {
      ArcSpec arc;
      arc.step = 1e-2;
      Matrix origin;
      AdaptedFrame frame;
      bool generated = false;
      for (int attempt = 0; attempt < 5 && !generated; ++attempt) {
        arc.left_poly.clear();
        arc.right_poly.clear();
        Matrix l0 = Matrix::Zero(m, r);
        l0.leftCols(rank_low) = gaussian_matrix(m, rank_low, rng);
        arc.left_poly.push_back(l0);
        arc.right_poly.push_back(gaussian_matrix(n, r, rng));
        for (int k = 1; k <= degree; ++k) {
          arc.left_poly.push_back(gaussian_matrix(m, r, rng));
          arc.right_poly.push_back(gaussian_matrix(n, r, rng));
        }
        origin = arc.value(0.0);
        frame = adapted_frame(origin);
        generated = frame.rank == rank_low;
      }
      if (!generated) {
        log.fail(trial, "could not draw an arc with the requested origin rank",
                 1.0);
        continue;
      }

      const Matrix exact = arc.derivative_at_zero();
      const double scale = std::max(1.0, exact.norm());

      // Second-order finite differences: the error divides by ~4 when h
      // halves, unless it is already at round-off level.
      double previous_error =
          (arc.central_difference(arc.step) - exact).norm();
      for (int level = 1; level <= 2; ++level) {
        const double h = arc.step / std::pow(2.0, level);
        const double error = (arc.central_difference(h) - exact).norm();
        if (previous_error > 1e-12 * scale) {
          log.measure(std::max(0.0, error - previous_error / 2.5) / scale,
                      0.0, trial, "finite-difference order");
        }
        previous_error = error;
      }

      if (!unanimous_verdict(frame, exact, r, rng, log, trial)) {
        log.fail(trial, "arc velocity rejected", 1.0);
      }
    } catch (const std::exception& error) {
      log.fail(trial, std::string("exception: ") + error.what(), 1.0);
    }
  }

  report.worst_violation = log.worst;
  report.details.emplace_back("m", format_int(m));
  report.details.emplace_back("n", format_int(n));
  report.details.emplace_back("r", format_int(r));
  report.details.emplace_back("rank_low", format_int(rank_low));
  report.details.emplace_back("degree", format_int(degree));
  return report;
}

TrialReport projection_optimality_check(int m, int n, int r, long long trials,
                                        std::uint64_t seed) {
  check_dimensions(m, n, r, 0);
  TrialReport report;
  report.name = "projection_optimality";
  report.seed = seed;
  FailureLog log{&report};
  constexpr int kSamples = 1000;

  for (long long trial = 0; trial < trials; ++trial) {
    ++report.trials;
    std::mt19937_64 rng(trial_seed(seed, trial));
    try {
      const int rank_low = static_cast<int>(trial % (r + 1));
      const Matrix x = random_rank_point(m, n, rank_low, rng);
      const AdaptedFrame frame = adapted_frame(x);
      if (frame.rank != rank_low) {
        log.fail(trial, "frame rank mismatch", 1.0);
        continue;
      }

      const Matrix z = gaussian_matrix(m, n, rng);
      const ConeDecomposition projection = project_to_cone(frame, z, r);
      const Matrix nearest = projection.tangent_part + projection.normal_part;
      const double best = (z - nearest).norm();

      log.check(unanimous_verdict(frame, nearest, r, rng, log, trial), trial,
                "projection output fails membership");

      if (rank_low == 0) {
        // At the origin the cone is the variety itself and the distance has
        // the closed truncation form.
        Eigen::JacobiSVD<Matrix> dec(z);
        const Vector& sigma = dec.singularValues();
        double tail = 0.0;
        for (Eigen::Index k = r; k < sigma.size(); ++k) {
          tail += sigma(k) * sigma(k);
        }
        const double closed_form = std::sqrt(tail);
        const double gap =
            std::abs(best - closed_form) / std::max(1.0, closed_form);
        log.measure(gap, 1e-10, trial, "closed-form distance at the origin");
      }

      std::uniform_real_distribution<double> exponent(-1.5, 0.5);
      const double base_scale =
          z.norm() / std::sqrt(static_cast<double>(m) * n);
      for (int k = 0; k < kSamples; ++k) {
        Matrix candidate;
        if (k == 0) {
          candidate = nearest;
        } else if (k == 1) {
          candidate = Matrix::Zero(m, n);
        } else if (k == 2) {
          candidate = projection.tangent_part;
        } else {
          candidate = sample_cone_element(
              frame, r, rng, base_scale * std::pow(10.0, exponent(rng)));
        }
        const double excess = best - (z - candidate).norm();
        log.measure(std::max(0.0, excess), kOptimalitySlack, trial,
                    "sampled point beats the projection");
      }
    } catch (const std::exception& error) {
      log.fail(trial, std::string("exception: ") + error.what(), 1.0);
    }
  }

  report.worst_violation = log.worst;
  report.details.emplace_back("m", format_int(m));
  report.details.emplace_back("n", format_int(n));
  report.details.emplace_back("r", format_int(r));
  report.details.emplace_back("samples_per_trial", format_int(kSamples));
  return report;
}

}  // namespace detvar
