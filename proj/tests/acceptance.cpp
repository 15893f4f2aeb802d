// Acceptance suite: one line per criterion, exit 0 iff everything passes.
// Each criterion pins its tolerances and instance sizes in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "detvar/completion.hpp"
#include "detvar/harness.hpp"

namespace {

using detvar::AdaptedFrame;
using detvar::Matrix;
using detvar::TrialReport;
using detvar::Vector;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
};

double seconds_since(
    const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

Matrix exact_rank_matrix(int m, int n, int k, std::mt19937_64& rng) {
  if (k == 0) return Matrix::Zero(m, n);
  const auto orthonormal = [&rng](Eigen::Index rows, Eigen::Index cols) {
    Eigen::HouseholderQR<Matrix> qr(detvar::gaussian_matrix(rows, cols, rng));
    return Matrix(qr.householderQ() * Matrix::Identity(rows, cols));
  };
  std::uniform_real_distribution<double> dist(0.5, 2.0);
  Vector sigma(k);
  for (int i = 0; i < k; ++i) sigma(i) = dist(rng);
  return orthonormal(m, k) * sigma.asDiagonal() *
         orthonormal(n, k).transpose();
}

// 1. The 4x4 fixture, exact, in under a second.
Outcome criterion_counterexample() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const TrialReport report = detvar::counterexample_fixture();
  const double elapsed = seconds_since(start);
  out.require(report.failures == 0, "fixture checks failed");
  out.require(report.worst_violation <= 1e-12, "fixture tolerance exceeded");
  out.require(elapsed < 1.0, "fixture runtime exceeded 1 s");
  out.detail << "worst=" << report.worst_violation << " time=" << elapsed
             << "s";
  return out;
}

// 2. Three membership oracles, 10^4 random triples, shapes up to 8x7.
Outcome criterion_oracle_equivalence() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  long long disagreements = 0;
  long long members = 0;
  constexpr long long kTrials = 10000;
  for (long long trial = 0; trial < kTrials; ++trial) {
    std::mt19937_64 rng(detvar::trial_seed(2, trial));
    const int m = 2 + static_cast<int>(rng() % 7);
    const int n = 2 + static_cast<int>(rng() % 6);
    const int r = static_cast<int>(rng() % std::min(m, n));
    const int rank_low = static_cast<int>(rng() % (r + 1));
    const Matrix x = detvar::random_rank_point(m, n, rank_low, rng);
    const AdaptedFrame frame = detvar::adapted_frame(x);
    if (frame.rank != rank_low) {
      ++disagreements;
      continue;
    }

    Matrix z;
    switch (trial % 4) {
      case 0:
        z = detvar::gaussian_matrix(m, n, rng);
        break;
      case 1:
        z = detvar::sample_cone_element(frame, r, rng, 1.0);
        break;
      case 2: {
        const int excess = r - rank_low + 1;
        z = detvar::proj_tangent(frame, detvar::gaussian_matrix(m, n, rng)) +
            detvar::gaussian_matrix(m, excess, rng) *
                detvar::gaussian_matrix(n, excess, rng).transpose();
        break;
      }
      default:
        z = 1e6 * detvar::sample_cone_element(frame, r, rng, 1.0);
        break;
    }

    const bool direct = detvar::membership(frame, z, r).is_member;
    members += direct ? 1 : 0;
    const Matrix p =
        frame.u_perp * detvar::random_invertible(m - rank_low, rng);
    const Matrix q =
        frame.v_perp * detvar::random_invertible(n - rank_low, rng);
    const bool kernel = detvar::membership_kernel_frames(p, q, z, r, rank_low);
    const bool grassmann = detvar::membership_grassmann(frame, z, r);
    if (kernel != direct || grassmann != direct) ++disagreements;
  }
  const double elapsed = seconds_since(start);
  out.require(disagreements == 0, "oracle disagreements");
  out.require(elapsed < 30.0, "oracle equivalence runtime exceeded 30 s");
  out.detail << "trials=10000 disagreements=" << disagreements
             << " members=" << members << " time=" << elapsed << "s";
  return out;
}

// 3. Inclusion chain with the explicit sequence construction.
Outcome criterion_inclusion_chain() {
  Outcome out;
  const struct {
    int m, n, r, rank_low;
  } shapes[] = {{4, 4, 3, 2}, {5, 7, 4, 1}, {6, 6, 5, 5}};
  for (const auto& s : shapes) {
    const TrialReport report =
        detvar::verify_inclusion_chain(s.m, s.n, s.r, s.rank_low, 1000, 0xC0DE);
    std::ostringstream label;
    label << "(" << s.m << "," << s.n << "," << s.r << "," << s.rank_low
          << ")";
    out.require(report.failures == 0, label.str() + " failures");
    double worst_quotient = 0.0;
    for (const auto& [key, value] : report.details) {
      if (key == "worst_quotient_error") worst_quotient = std::stod(value);
    }
    out.require(worst_quotient < 1e-6,
                label.str() + " quotient error at t = 2^-20");
    out.detail << label.str() << " quotient=" << worst_quotient << " ";
  }
  return out;
}

// 4. Projection identities on 10^3 random instances.
Outcome criterion_projection_formulas() {
  Outcome out;
  double worst_complementarity = 0.0;
  double worst_orthogonality = 0.0;
  long long rank_mismatches = 0;
  for (long long trial = 0; trial < 1000; ++trial) {
    std::mt19937_64 rng(detvar::trial_seed(4, trial));
    const int m = 2 + static_cast<int>(rng() % 7);
    const int n = 2 + static_cast<int>(rng() % 6);
    const int rank_low = static_cast<int>(rng() % std::min(m, n));
    const Matrix x = detvar::random_rank_point(m, n, rank_low, rng);
    const AdaptedFrame frame = detvar::adapted_frame(x);

    const Matrix z = detvar::gaussian_matrix(m, n, rng);
    const Matrix w = detvar::gaussian_matrix(m, n, rng);
    const Matrix tz = detvar::proj_tangent(frame, z);
    const Matrix nz = detvar::proj_normal(frame, z);

    worst_complementarity = std::max(
        worst_complementarity, (tz + nz - z).norm() / std::max(1.0, z.norm()));
    worst_orthogonality =
        std::max(worst_orthogonality,
                 std::abs(detvar::frobenius_inner(
                     tz, detvar::proj_normal(frame, w))) /
                     std::max(1.0, z.norm() * w.norm()));
    const Matrix block = frame.u_perp.transpose() * z * frame.v_perp;
    if (detvar::numerical_rank(nz) != detvar::numerical_rank(block)) {
      ++rank_mismatches;
    }
  }
  out.require(worst_complementarity <= 1e-10, "complementarity");
  out.require(worst_orthogonality <= 1e-10, "orthogonality");
  out.require(rank_mismatches == 0, "normal-projection rank identity");
  out.detail << "complementarity=" << worst_complementarity
             << " orthogonality=" << worst_orthogonality
             << " rank_mismatches=" << rank_mismatches;
  return out;
}

// 5. Retraction: centering, normal residual, first order, Schur rank,
// three-term decomposition.
Outcome criterion_retraction() {
  Outcome out;
  long long centering_failures = 0;
  double worst_residual_alignment = 0.0;
  long long ratio_failures = 0;
  long long schur_violations = 0;
  double worst_decomposition = 0.0;

  for (long long trial = 0; trial < 1000; ++trial) {
    std::mt19937_64 rng(detvar::trial_seed(5, trial));
    const int m = 4 + static_cast<int>(rng() % 3);
    const int n = 4 + static_cast<int>(rng() % 3);
    const int r = 3;
    const int rank_low = 1 + static_cast<int>(rng() % 2);
    const Matrix x = detvar::random_rank_point(m, n, rank_low, rng);
    const AdaptedFrame frame = detvar::adapted_frame(x);

    if (detvar::orthographic_retract(x, frame, Matrix::Zero(m, n)) != x) {
      ++centering_failures;
    }

    Matrix y = detvar::proj_tangent(frame, detvar::gaussian_matrix(m, n, rng));
    y /= y.norm();

    double previous_ratio = -1.0;
    for (double t : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const Matrix step = t * y;
      const Matrix retracted = detvar::orthographic_retract(x, frame, step);
      const Matrix residual = retracted - x - step;
      // Directional purity is checked whenever the residual is resolvable
      // above the round-off floor of the surrounding products.
      const double reference =
          std::max(residual.norm(), 1e-5 * (x + step).norm());
      worst_residual_alignment =
          std::max(worst_residual_alignment,
                   detvar::proj_tangent(frame, residual).norm() / reference);
      const double ratio = residual.norm() / step.norm();
      if (previous_ratio >= 0.0 && previous_ratio > 1e-12 &&
          ratio > previous_ratio / 3.0) {
        ++ratio_failures;
      }
      previous_ratio = ratio;
    }

    // A rank-<= r point with invertible leading block.
    const Matrix on_variety = detvar::gaussian_matrix(m, r, rng) *
                              detvar::gaussian_matrix(n, r, rng).transpose();
    const auto blocks = detvar::block_coordinates(frame, on_variety);
    Eigen::JacobiSVD<Matrix> a_svd(blocks.a);
    if (a_svd.singularValues()(rank_low - 1) > 1e-6) {
      const Matrix schur = detvar::schur_complement(blocks);
      if (detvar::numerical_rank(schur) > r - rank_low) ++schur_violations;
    }

    // Three-term decomposition at a sequence point.
    const double t = 1e-3;
    const Matrix n0 = frame.u_perp *
                      detvar::gaussian_matrix(m - rank_low, r - rank_low, rng) *
                      detvar::gaussian_matrix(r - rank_low, n - rank_low, rng) *
                      frame.v_perp.transpose();
    const Matrix xi =
        detvar::orthographic_retract(x, frame, t * y) + t * n0;
    const Matrix tangent_step = detvar::proj_tangent(frame, xi - x);
    const Matrix li = detvar::orthographic_retract(x, frame, tangent_step);
    const Matrix total = detvar::proj_normal(frame, (xi - x) / t);
    const auto xi_blocks = detvar::block_coordinates(frame, xi);
    const Matrix coupling =
        xi_blocks.d * xi_blocks.a.partialPivLu().solve(xi_blocks.c);
    const double scale = std::max(1.0, total.norm());
    worst_decomposition = std::max(
        worst_decomposition,
        ((li - x - tangent_step) / t -
         frame.u_perp * (coupling / t) * frame.v_perp.transpose())
                .norm() /
            scale);
    worst_decomposition = std::max(
        worst_decomposition,
        ((xi - li) / t - frame.u_perp * ((xi_blocks.e - coupling) / t) *
                             frame.v_perp.transpose())
                .norm() /
            scale);
    worst_decomposition =
        std::max(worst_decomposition,
                 ((li - x - tangent_step) / t + (xi - li) / t - total).norm() /
                     scale);
  }

  out.require(centering_failures == 0, "retraction centering");
  out.require(worst_residual_alignment <= 1e-9, "residual not normal");
  out.require(ratio_failures == 0, "first-order ratio decay");
  out.require(schur_violations == 0, "Schur complement rank");
  out.require(worst_decomposition <= 1e-9, "three-term decomposition");
  out.detail << "residual_alignment=" << worst_residual_alignment
             << " decomposition=" << worst_decomposition;
  return out;
}

// 6. Rank additivity on transversal pairs plus the fixture pairs.
Outcome criterion_rank_additivity() {
  Outcome out;
  long long failures = 0;
  for (long long trial = 0; trial < 1000; ++trial) {
    std::mt19937_64 rng(detvar::trial_seed(6, trial));
    const int m = 4 + static_cast<int>(rng() % 3);
    const int n = 4 + static_cast<int>(rng() % 3);
    const int k1 = 1 + static_cast<int>(rng() % 2);
    const int k2 = 1 + static_cast<int>(rng() % (m - k1));
    const int l1 = 1 + static_cast<int>(rng() % 2);
    const int l2 = 1 + static_cast<int>(rng() % (n - l1));

    const auto basis = [&rng](int rows, int cols) {
      Eigen::HouseholderQR<Matrix> qr(
          detvar::gaussian_matrix(rows, cols, rng));
      return Matrix(qr.householderQ() * Matrix::Identity(rows, cols));
    };
    const detvar::SubspacePair pair1{basis(m, k1), basis(n, l1)};
    const detvar::SubspacePair pair2{basis(m, k2), basis(n, l2)};
    const Matrix a1 = pair1.left_basis *
                      detvar::gaussian_matrix(k1, l1, rng) *
                      pair1.right_basis.transpose();
    const Matrix a2 = pair2.left_basis *
                      detvar::gaussian_matrix(k2, l2, rng) *
                      pair2.right_basis.transpose();
    try {
      if (!detvar::direct_sum_rank_check(pair1, a1, pair2, a2)) ++failures;
    } catch (const std::domain_error&) {
      // A draw violating transversality is discarded, not counted.
    }
  }

  // Fixture pairs from the counterexample sequence.
  Matrix x = Matrix::Zero(4, 4);
  x(0, 0) = 1.0;
  x(1, 1) = 1.0;
  const Matrix identity = Matrix::Identity(4, 4);
  const AdaptedFrame frame = detvar::frame_from_bases(
      identity.leftCols(2), identity.rightCols(2), identity.leftCols(2),
      identity.rightCols(2));
  for (int i = 1; i <= 100; ++i) {
    Matrix xi = x;
    xi(1, 3) = 1.0 / i;
    xi(2, 2) = 1.0 / i;
    xi(3, 1) = 1.0 / i;
    xi(3, 3) = 1.0 / (static_cast<double>(i) * i);
    const Matrix li = detvar::orthographic_retract(
        x, frame, detvar::proj_tangent(frame, xi - x));
    const detvar::SubspacePair li_pair{
        detvar::orthonormal_range_basis(li),
        detvar::orthonormal_range_basis(li.transpose())};
    const detvar::SubspacePair normal_pair{frame.u_perp, frame.v_perp};
    if (!detvar::direct_sum_rank_check(li_pair, li, normal_pair,
                                       Matrix(xi - li))) {
      ++failures;
    }
  }
  out.require(failures == 0, "rank additivity violations");
  out.detail << "failures=" << failures;
  return out;
}

// 7. At the origin the cone is the variety: membership iff rank <= r.
Outcome criterion_cone_at_origin() {
  Outcome out;
  long long mismatches = 0;
  long long cases = 0;
  std::mt19937_64 rng(7);
  for (int m = 1; m <= 6; ++m) {
    for (int n = 1; n <= 6; ++n) {
      const int bound = std::min(m, n);
      for (int r = 0; r < bound; ++r) {
        for (int k = 0; k <= bound; ++k) {
          for (int repeat = 0; repeat < 3; ++repeat) {
            const Matrix z = exact_rank_matrix(m, n, k, rng);
            const bool member =
                detvar::membership(Matrix::Zero(m, n), z, r).is_member;
            ++cases;
            if (member != (k <= r)) ++mismatches;
          }
        }
      }
    }
  }
  out.require(mismatches == 0, "origin membership mismatches");
  out.detail << "cases=" << cases << " mismatches=" << mismatches;
  return out;
}

// 8. Sampled nearest-point property, 200 instances x 10^3 samples.
Outcome criterion_projection_optimality() {
  Outcome out;
  const TrialReport first = detvar::projection_optimality_check(4, 4, 3, 100, 8);
  const TrialReport second =
      detvar::projection_optimality_check(5, 7, 4, 100, 9);
  out.require(first.failures == 0, "optimality failures at (4,4,3)");
  out.require(second.failures == 0, "optimality failures at (5,7,4)");
  out.detail << "worst=" << std::max(first.worst_violation,
                                     second.worst_violation);
  return out;
}

// 9. Completion demo: 20x20 rank 3, 60% observed, < 1e-6 in <= 500 steps.
Outcome criterion_completion() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20);
  detvar::CompletionProblem problem;
  problem.target = detvar::gaussian_matrix(20, 3, rng) *
                   detvar::gaussian_matrix(20, 3, rng).transpose();
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  problem.mask = Matrix(20, 20);
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      problem.mask(i, j) = uniform(rng) < 0.6 ? 1.0 : 0.0;
    }
  }
  problem.rank_bound = 3;
  problem.step_size = 1.0 / 0.6;  // inverse observation rate
  problem.max_iters = 500;
  problem.stop_tol = 0.0;
  problem.check_directions = true;  // membership + rank of every iterate

  const Matrix x0 = detvar::truncate_rank(
      (problem.mask.array() * problem.target.array()).matrix() / 0.6, 3);
  const auto result = detvar::solve_completion(problem, x0);
  const double elapsed = seconds_since(start);

  out.require(result.iterations <= 500, "iteration budget");
  out.require(result.residual_history.back() < 1e-6,
              "final residual above 1e-6");
  out.require(detvar::numerical_rank(result.solution) <= 3,
              "solution rank above the bound");
  out.require(elapsed < 10.0, "completion runtime exceeded 10 s");
  out.detail << "residual=" << result.residual_history.back()
             << " iters=" << result.iterations << " time=" << elapsed << "s";
  return out;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Outcome (*run)();
  };
  const Entry entries[] = {
      {"1 counterexample fixture", criterion_counterexample},
      {"2 oracle equivalence", criterion_oracle_equivalence},
      {"3 inclusion chain", criterion_inclusion_chain},
      {"4 projection formulas", criterion_projection_formulas},
      {"5 retraction properties", criterion_retraction},
      {"6 rank additivity", criterion_rank_additivity},
      {"7 cone at the origin", criterion_cone_at_origin},
      {"8 projection optimality", criterion_projection_optimality},
      {"9 completion demo", criterion_completion},
  };

  bool all_pass = true;
  for (const Entry& entry : entries) {
    const Outcome outcome = entry.run();
    all_pass = all_pass && outcome.pass;
    std::printf("[%s] %s%s%s\n", outcome.pass ? "PASS" : "FAIL", entry.name,
                outcome.detail.str().empty() ? "" : ": ",
                outcome.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%s\n", all_pass ? "acceptance: all criteria passed"
                               : "acceptance: FAILURES present");
  return all_pass ? 0 : 1;
}
