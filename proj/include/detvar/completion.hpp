#pragma once

#include <vector>

#include "detvar/cone.hpp"

namespace detvar {

/// Matrix completion instance: recover a rank-<= rank_bound matrix matching
/// `target` on the entries where `mask` is 1. Entries of mask must be 0 or 1
/// and at least one entry must be observed.
struct CompletionProblem {
  Matrix target;
  Matrix mask;
  int rank_bound = 0;
  double step_size = 1.0;
  int max_iters = 500;
  double stop_tol = 1e-12;     // relative change of the residual
  bool check_directions = false;  // assert cone membership of each step
};

struct CompletionResult {
  Matrix solution;
  std::vector<double> residual_history;  // relative observed-entry residual
  int iterations = 0;
  bool converged = false;
};

/// Projected gradient descent over the rank-<= rank_bound variety: the
/// negative gradient is projected onto the tangent cone at the iterate, an
/// Armijo backtracking step (factor 1/2, constant 1e-4) is taken, and the
/// result is retracted by rank truncation. Every iterate keeps rank <=
/// rank_bound; the objective is nonincreasing.
CompletionResult solve_completion(const CompletionProblem& problem,
                                  const Matrix& x0,
                                  const TolerancePolicy& tol = {});

}  // namespace detvar
