#include "detvar/completion.hpp"

#include <cmath>
#include <stdexcept>

namespace detvar {

namespace {

constexpr double kArmijoConstant = 1e-4;
constexpr int kMaxBacktracks = 60;

void validate(const CompletionProblem& problem) {
  check_finite(problem.target, "solve_completion: target");
  check_finite(problem.mask, "solve_completion: mask");
  if (problem.mask.rows() != problem.target.rows() ||
      problem.mask.cols() != problem.target.cols()) {
    throw std::invalid_argument(
        "solve_completion: mask and target shapes differ");
  }
  double observed = 0.0;
  for (Eigen::Index i = 0; i < problem.mask.rows(); ++i) {
    for (Eigen::Index j = 0; j < problem.mask.cols(); ++j) {
      const double v = problem.mask(i, j);
      if (v != 0.0 && v != 1.0) {
        throw std::invalid_argument(
            "solve_completion: mask entries must be 0 or 1");
      }
      observed += v;
    }
  }
  if (observed == 0.0) {
    throw std::invalid_argument("solve_completion: no observed entries");
  }
  const auto limit = std::min(problem.target.rows(), problem.target.cols());
  if (problem.rank_bound < 0 || problem.rank_bound >= limit) {
    throw std::invalid_argument(
        "solve_completion: need 0 <= rank_bound < min(m, n)");
  }
  if (problem.step_size <= 0.0 || problem.max_iters < 1 ||
      problem.stop_tol < 0.0) {
    throw std::invalid_argument("solve_completion: invalid solver settings");
  }
}

double objective(const CompletionProblem& problem, const Matrix& x) {
  return 0.5 * (problem.mask.array() * (x - problem.target).array())
                   .matrix()
                   .squaredNorm();
}

}  // namespace

CompletionResult solve_completion(const CompletionProblem& problem,
                                  const Matrix& x0,
                                  const TolerancePolicy& tol) {
  validate(problem);
  if (x0.rows() != problem.target.rows() ||
      x0.cols() != problem.target.cols()) {
    throw std::invalid_argument("solve_completion: x0 has the wrong shape");
  }
  if (numerical_rank(x0, tol) > problem.rank_bound) {
    throw std::invalid_argument(
        "solve_completion: x0 exceeds the rank bound");
  }

  const double observed_norm =
      (problem.mask.array() * problem.target.array()).matrix().norm();
  const double residual_scale = observed_norm > 0.0 ? observed_norm : 1.0;

  CompletionResult result;
  Matrix x = x0;
  double value = objective(problem, x);
  result.residual_history.push_back(std::sqrt(2.0 * value) / residual_scale);

  for (int iter = 0; iter < problem.max_iters; ++iter) {
    const Matrix gradient =
        (problem.mask.array() * (x - problem.target).array()).matrix();
    const ConeDecomposition direction_split =
        project_to_cone(x, -gradient, problem.rank_bound, tol);
    const Matrix direction =
        direction_split.tangent_part + direction_split.normal_part;
    const double direction_sq = direction.squaredNorm();
    if (problem.check_directions) {
      if (!membership(x, direction, problem.rank_bound, tol).is_member) {
        throw std::logic_error(
            "solve_completion: search direction left the tangent cone");
      }
      if (numerical_rank(x, tol) > problem.rank_bound) {
        throw std::logic_error("solve_completion: iterate left the variety");
      }
    }
    // Stationary up to round-off: the projected gradient is at noise level.
    if (std::sqrt(direction_sq) <= 1e-14 * residual_scale) {
      result.converged = true;
      break;
    }

    double step = problem.step_size;
    Matrix candidate;
    double candidate_value = value;
    bool accepted = false;
    for (int backtrack = 0; backtrack < kMaxBacktracks; ++backtrack) {
      candidate = truncate_rank(x + step * direction, problem.rank_bound);
      candidate_value = objective(problem, candidate);
      if (candidate_value <= value - kArmijoConstant * step * direction_sq) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no further decrease available at this scale

    const double change = std::abs(value - candidate_value) /
                          std::max(value, 1e-300);
    x = candidate;
    value = candidate_value;
    result.residual_history.push_back(std::sqrt(2.0 * value) /
                                      residual_scale);
    ++result.iterations;
    if (change < problem.stop_tol) {
      result.converged = true;
      break;
    }
  }

  result.solution = x;
  return result;
}

}  // namespace detvar
