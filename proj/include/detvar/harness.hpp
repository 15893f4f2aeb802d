#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "detvar/cone.hpp"
#include "detvar/retraction.hpp"

namespace detvar {

/// Outcome of a randomized or fixture check: trial counts, failure count,
/// the worst violation observed (0 when everything is exact), and the seed
/// that reproduces the run. `details` carries check-specific key=value pairs.
struct TrialReport {
  std::string name;
  long long trials = 0;
  long long failures = 0;
  double worst_violation = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> details;

  bool passed() const { return failures == 0; }
};

std::string to_machine(const TrialReport& report);

/// Factored polynomial arc t -> L(t) R(t)^T; the factored form keeps every
/// point of the arc at rank <= r (the common column count).
struct ArcSpec {
  std::vector<Matrix> left_poly;   // coefficients of L, each m x r
  std::vector<Matrix> right_poly;  // coefficients of R, each n x r
  double step = 1e-2;              // base step for finite differences

  Matrix value(double t) const;
  Matrix derivative_at_zero() const;       // product rule at t = 0
  Matrix central_difference(double h) const;
};

/// A sequence of variety points X_i -> X with scales t_i, recording the
/// data of a tangency certificate.
struct SequenceWitness {
  std::vector<Matrix> points;
  std::vector<double> times;  // positive, decreasing
  Matrix limit_point;

  Matrix difference_quotient(std::size_t i) const;
};

struct LimitEstimate {
  Matrix limit;
  double residual;  // discrepancy between the last two extrapolations
};

/// Estimates lim (X_i - X)/t_i from the last three difference quotients by
/// Richardson extrapolation (exact for quotients affine in t_i).
LimitEstimate estimate_limit(const SequenceWitness& witness);

/// Deterministic per-trial seed derivation, stable across runs.
std::uint64_t trial_seed(std::uint64_t seed, long long trial);

/// Matrix with i.i.d. standard normal entries, filled row by row.
Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols,
                       std::mt19937_64& rng);

/// Random point of exact rank `rank`, drawn as a product of Gaussian factors
/// and rescaled so its smallest nonzero singular value is 1. Draws are
/// rejected while the condition number exceeds 100, so downstream block
/// inversions stay well away from the singular set.
Matrix random_rank_point(int m, int n, int rank, std::mt19937_64& rng);

/// Square Gaussian matrix resampled until sigma_min >= 0.1 (empty allowed).
Matrix random_invertible(Eigen::Index k, std::mt19937_64& rng);

/// Fixed 4x4 fixture: a rank-2 point X and a sequence X_i of rank-3 matrices
/// converging to X whose normal projections all have rank 2, above the
/// budget r - rank(X) = 1, while the limit of i (X_i - X) still belongs to
/// the tangent cone and the repaired split X_i - L_i (via the orthographic
/// retraction) stays within the budget. Checks every identity in closed
/// form for i = 1..100.
TrialReport counterexample_fixture();

/// Randomized certificate of the three cone inclusions: realized
/// tangent-plus-budgeted-normal samples and tangent-plus-arbitrary-low-rank
/// samples must pass membership, decompositions must reconstruct, and the
/// explicit sequence X_i = R_X(t_i Z1) + t_i Z2 must stay on the variety
/// with difference quotients converging to Z1 + Z2 (error < 1e-6 at
/// t = 2^-20).
TrialReport verify_inclusion_chain(int m, int n, int r, int rank_low,
                                   long long trials, std::uint64_t seed);

/// Randomized convergent sequences on the variety: estimates the limit of
/// the difference quotients by tail extrapolation and asserts membership
/// with the rank floor widened to 10x the extrapolation residual.
TrialReport sequence_limit_check(int m, int n, int r, int rank_low,
                                 long long trials, std::uint64_t seed);

/// Random factored polynomial arcs through a rank-`rank_low` point: the
/// analytic derivative at 0 must match central finite differences at
/// second order and must belong to the tangent cone.
TrialReport arc_tangent_check(int m, int n, int r, int rank_low, int degree,
                              long long trials, std::uint64_t seed);

/// Sampled nearest-point certificate for project_to_cone, with the
/// closed-form truncation distance checked whenever the base point is 0.
TrialReport projection_optimality_check(int m, int n, int r, long long trials,
                                        std::uint64_t seed);

}  // namespace detvar
