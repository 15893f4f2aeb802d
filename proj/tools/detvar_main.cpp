// Command-line front end: membership tests, cone projection, retraction,
// verification suites, and the completion demo, over plain matrix files.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "detvar/completion.hpp"
#include "detvar/harness.hpp"
#include "detvar/matrix_io.hpp"

namespace {

using detvar::Matrix;
using detvar::TolerancePolicy;

enum ExitCode { kPass = 0, kFail = 1, kUsage = 2 };

struct GlobalOptions {
  std::string format = "text";
  TolerancePolicy tol;
  std::uint64_t seed = 0;

  bool machine() const { return format == "machine"; }
};

std::uint64_t seed_from_environment() {
  const char* raw = std::getenv("DETVAR_SEED");
  if (raw == nullptr) return 0;
  try {
    return std::stoull(raw);
  } catch (const std::exception&) {
    return 0;
  }
}

// Every report starts with the active tolerance policy so runs can be
// audited and reproduced.
void print_header(const GlobalOptions& options, const std::string& command) {
  if (options.machine()) {
    std::printf("header command=%s rel_rank_tol=%s abs_floor=%s seed=%llu\n",
                command.c_str(),
                detvar::format_scalar(options.tol.relative_rank_threshold)
                    .c_str(),
                detvar::format_scalar(options.tol.absolute_floor).c_str(),
                static_cast<unsigned long long>(options.seed));
  } else {
    std::printf("# detvar %s | rel_rank_tol=%s abs_floor=%s seed=%llu\n",
                command.c_str(),
                detvar::format_scalar(options.tol.relative_rank_threshold)
                    .c_str(),
                detvar::format_scalar(options.tol.absolute_floor).c_str(),
                static_cast<unsigned long long>(options.seed));
  }
}

void print_report(const GlobalOptions& options,
                  const detvar::TrialReport& report) {
  if (options.machine()) {
    std::printf("%s\n", detvar::to_machine(report).c_str());
    return;
  }
  std::printf("check: %s\n", report.name.c_str());
  std::printf("  trials: %lld  failures: %lld\n", report.trials,
              report.failures);
  std::printf("  worst violation: %s\n",
              detvar::format_scalar(report.worst_violation).c_str());
  std::printf("  seed: %llu\n",
              static_cast<unsigned long long>(report.seed));
  for (const auto& [key, value] : report.details) {
    std::printf("  %s: %s\n", key.c_str(), value.c_str());
  }
  std::printf("  result: %s\n", report.passed() ? "PASS" : "FAIL");
}

void print_membership(const GlobalOptions& options,
                      const detvar::MembershipReport& report) {
  if (options.machine()) {
    std::printf("%s\n", detvar::to_machine(report).c_str());
    return;
  }
  std::printf("member: %s\n", report.is_member ? "yes" : "no");
  std::printf("  r: %d  rank(X): %d  budget: %d\n", report.r, report.rank_low,
              report.rank_budget);
  std::printf("  normal rank: %d\n", report.normal_rank);
  std::printf("  normal singular values:");
  for (Eigen::Index i = 0; i < report.normal_block_singular_values.size();
       ++i) {
    std::printf(" %s",
                detvar::format_scalar(report.normal_block_singular_values(i))
                    .c_str());
  }
  std::printf("\n  tie: %s\n", report.tie ? "yes" : "no");
}

int run_membership(const GlobalOptions& options, const std::string& x_path,
                   const std::string& z_path, int r) {
  const Matrix x = detvar::read_matrix(x_path);
  const Matrix z = detvar::read_matrix(z_path);
  print_header(options, "membership");
  const auto report = detvar::membership(x, z, r, options.tol);
  print_membership(options, report);
  return report.is_member ? kPass : kFail;
}

int run_project(const GlobalOptions& options, const std::string& x_path,
                const std::string& z_path, int r,
                const std::string& tangent_out,
                const std::string& normal_out) {
  const Matrix x = detvar::read_matrix(x_path);
  const Matrix z = detvar::read_matrix(z_path);
  print_header(options, "project");
  const auto projection = detvar::project_to_cone(x, z, r, options.tol);
  detvar::write_matrix(tangent_out, projection.tangent_part);
  detvar::write_matrix(normal_out, projection.normal_part);
  const double distance =
      (z - projection.tangent_part - projection.normal_part).norm();
  if (options.machine()) {
    std::printf("projection distance=%s tie=%d\n",
                detvar::format_scalar(distance).c_str(),
                projection.truncation_tie ? 1 : 0);
  } else {
    std::printf("distance to the cone: %s\n",
                detvar::format_scalar(distance).c_str());
    std::printf("truncation tie: %s\n",
                projection.truncation_tie ? "yes" : "no");
  }
  return kPass;
}

int run_retract(const GlobalOptions& options, const std::string& x_path,
                const std::string& y_path, const std::string& out_path) {
  const Matrix x = detvar::read_matrix(x_path);
  const Matrix y = detvar::read_matrix(y_path);
  print_header(options, "retract");
  const auto frame = detvar::adapted_frame(x, options.tol);
  const Matrix retracted =
      detvar::orthographic_retract(x, frame, y, options.tol);
  detvar::write_matrix(out_path, retracted);
  if (options.machine()) {
    std::printf("retract rank=%d residual=%s\n",
                detvar::numerical_rank(retracted, options.tol),
                detvar::format_scalar((retracted - x - y).norm()).c_str());
  } else {
    std::printf("rank of the retracted point: %d\n",
                detvar::numerical_rank(retracted, options.tol));
    std::printf("normal residual norm: %s\n",
                detvar::format_scalar((retracted - x - y).norm()).c_str());
  }
  return kPass;
}

int run_verify(const GlobalOptions& options, int m, int n, int r, int rank_low,
               long long trials) {
  print_header(options, "verify");
  const auto chain =
      detvar::verify_inclusion_chain(m, n, r, rank_low, trials, options.seed);
  print_report(options, chain);
  const auto limits =
      detvar::sequence_limit_check(m, n, r, rank_low, trials, options.seed);
  print_report(options, limits);
  const auto optimality = detvar::projection_optimality_check(
      m, n, r, std::min<long long>(trials, 200), options.seed);
  print_report(options, optimality);
  return chain.passed() && limits.passed() && optimality.passed() ? kPass
                                                                  : kFail;
}

int run_counterexample(const GlobalOptions& options) {
  print_header(options, "counterexample");
  const auto report = detvar::counterexample_fixture();
  print_report(options, report);
  return report.passed() ? kPass : kFail;
}

int run_arcs(const GlobalOptions& options, int m, int n, int r, int rank_low,
             int degree, long long trials) {
  print_header(options, "arcs");
  const auto report = detvar::arc_tangent_check(m, n, r, rank_low, degree,
                                                trials, options.seed);
  print_report(options, report);
  return report.passed() ? kPass : kFail;
}

int run_solve(const GlobalOptions& options, const std::string& target_path,
              const std::string& mask_path, int r, double step, int max_iters,
              double stop_tol, const std::string& x0_path,
              const std::string& out_path) {
  detvar::CompletionProblem problem;
  problem.target = detvar::read_matrix(target_path);
  problem.mask = detvar::read_matrix(mask_path);
  problem.rank_bound = r;
  problem.step_size = step;
  problem.max_iters = max_iters;
  problem.stop_tol = stop_tol;

  print_header(options, "solve");
  Matrix x0;
  if (x0_path.empty()) {
    double observed = problem.mask.sum();
    const double fraction =
        observed / static_cast<double>(problem.mask.size());
    x0 = detvar::truncate_rank(
        (problem.mask.array() * problem.target.array()).matrix() / fraction,
        r);
  } else {
    x0 = detvar::read_matrix(x0_path);
  }

  const auto result = detvar::solve_completion(problem, x0, options.tol);
  if (!out_path.empty()) {
    detvar::write_matrix(out_path, result.solution);
  }
  if (options.machine()) {
    std::printf("solve iterations=%d converged=%d residual=%s\n",
                result.iterations, result.converged ? 1 : 0,
                detvar::format_scalar(result.residual_history.back()).c_str());
  } else {
    std::printf("iterations: %d\n", result.iterations);
    std::printf("initial residual: %s\n",
                detvar::format_scalar(result.residual_history.front()).c_str());
    std::printf("final residual: %s\n",
                detvar::format_scalar(result.residual_history.back()).c_str());
    std::printf("converged: %s\n", result.converged ? "yes" : "no");
  }
  return result.converged ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry of bounded-rank matrix varieties: tangent-cone "
               "membership, projections, orthographic retraction, and "
               "verification suites"};
  app.require_subcommand(1);

  GlobalOptions options;
  options.seed = seed_from_environment();
  app.add_option("--format", options.format, "Output format: text or machine")
      ->check(CLI::IsMember({"text", "machine"}))
      ->capture_default_str();
  app.add_option("--rel-tol", options.tol.relative_rank_threshold,
                 "Relative rank threshold")
      ->check(CLI::Range(1e-16, 0.999))
      ->capture_default_str();
  app.add_option("--abs-floor", options.tol.absolute_floor,
                 "Absolute singular-value floor")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  std::string x_path, z_path, y_path, out_path, tangent_out, normal_out;
  std::string target_path, mask_path, x0_path;
  int r = 1;
  int m = 4, n = 4, rank_low = 0, degree = 2, max_iters = 500;
  long long trials = 100;
  double step = 1.0, stop_tol = 1e-12;

  auto* membership = app.add_subcommand(
      "membership", "Tangent-cone membership of Z at the point X");
  membership->add_option("--X", x_path, "Base point file")->required();
  membership->add_option("--Z", z_path, "Direction file")->required();
  membership->add_option("--r", r, "Rank bound of the variety")->required();

  auto* project = app.add_subcommand(
      "project", "Metric projection of Z onto the tangent cone at X");
  project->add_option("--X", x_path, "Base point file")->required();
  project->add_option("--Z", z_path, "Direction file")->required();
  project->add_option("--r", r, "Rank bound of the variety")->required();
  project->add_option("--tangent-out", tangent_out, "Tangent part output")
      ->required();
  project->add_option("--normal-out", normal_out, "Normal part output")
      ->required();

  auto* retract = app.add_subcommand(
      "retract", "Orthographic retraction of the tangent vector Y at X");
  retract->add_option("--X", x_path, "Base point file")->required();
  retract->add_option("--Y", y_path, "Tangent vector file")->required();
  retract->add_option("--out", out_path, "Output file")->required();

  auto* verify = app.add_subcommand(
      "verify", "Randomized inclusion-chain, sequence-limit, and projection "
                "optimality suites");
  verify->add_option("--m", m, "Rows")->required();
  verify->add_option("--n", n, "Columns")->required();
  verify->add_option("--r", r, "Rank bound of the variety")->required();
  verify->add_option("--rlow", rank_low, "Rank of the base points")
      ->required();
  verify->add_option("--trials", trials, "Trials per suite")
      ->capture_default_str();
  verify->add_option("--seed", options.seed, "Random seed");

  auto* counterexample = app.add_subcommand(
      "counterexample",
      "Exact 4x4 fixture where normal projections overshoot the rank budget");

  auto* arcs = app.add_subcommand(
      "arcs", "Random factored polynomial arcs: derivative vs finite "
              "differences and cone membership");
  arcs->add_option("--m", m, "Rows")->required();
  arcs->add_option("--n", n, "Columns")->required();
  arcs->add_option("--r", r, "Rank bound of the variety")->required();
  arcs->add_option("--rlow", rank_low, "Rank of the arc origin")->required();
  arcs->add_option("--degree", degree, "Polynomial degree of the factors")
      ->capture_default_str();
  arcs->add_option("--trials", trials, "Number of arcs")
      ->capture_default_str();
  arcs->add_option("--seed", options.seed, "Random seed");

  auto* solve = app.add_subcommand(
      "solve", "Rank-constrained completion by projected gradient descent");
  solve->add_option("--target", target_path, "Target matrix file")
      ->required();
  solve->add_option("--mask", mask_path, "0/1 mask file")->required();
  solve->add_option("--r", r, "Rank bound")->required();
  solve->add_option("--step", step, "Initial step size")
      ->capture_default_str();
  solve->add_option("--max-iters", max_iters, "Iteration budget")
      ->capture_default_str();
  solve->add_option("--stop-tol", stop_tol, "Relative residual-change stop")
      ->capture_default_str();
  solve->add_option("--x0", x0_path, "Optional initial point file");
  solve->add_option("--out", out_path, "Solution output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return kUsage;
  }

  try {
    if (*membership) return run_membership(options, x_path, z_path, r);
    if (*project) {
      return run_project(options, x_path, z_path, r, tangent_out, normal_out);
    }
    if (*retract) return run_retract(options, x_path, y_path, out_path);
    if (*verify) return run_verify(options, m, n, r, rank_low, trials);
    if (*counterexample) return run_counterexample(options);
    if (*arcs) return run_arcs(options, m, n, r, rank_low, degree, trials);
    if (*solve) {
      return run_solve(options, target_path, mask_path, r, step, max_iters,
                       stop_tol, x0_path, out_path);
    }
  } catch (const detvar::ParseError& error) {
    std::cerr << "parse error: " << error.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& error) {
    std::cerr << "invalid input: " << error.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& error) {
    std::cerr << "computation failed: " << error.what() << "\n";
    return kFail;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kFail;
  }
  return kUsage;
}
