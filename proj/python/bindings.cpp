#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "detvar/completion.hpp"
#include "detvar/harness.hpp"

namespace py = pybind11;

namespace {

detvar::TolerancePolicy make_policy(double rel, double floor) {
  detvar::TolerancePolicy tol;
  tol.relative_rank_threshold = rel;
  tol.absolute_floor = floor;
  return tol;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Geometry of bounded-rank matrix varieties: fixed-rank projections, "
      "tangent-cone membership and projection, the orthographic retraction, "
      "verification suites, and a completion demo.";

  py::class_<detvar::TolerancePolicy>(m, "TolerancePolicy")
      .def(py::init(&make_policy), py::arg("relative_rank_threshold") = 1e-10,
           py::arg("absolute_floor") = 1e-14)
      .def_readwrite("relative_rank_threshold",
                     &detvar::TolerancePolicy::relative_rank_threshold)
      .def_readwrite("absolute_floor", &detvar::TolerancePolicy::absolute_floor)
      .def("rank_cutoff", &detvar::TolerancePolicy::rank_cutoff,
           py::arg("sigma_max"));

  py::class_<detvar::SvdFactorization>(m, "SvdFactorization")
      .def_readonly("left", &detvar::SvdFactorization::left)
      .def_readonly("singular_values",
                    &detvar::SvdFactorization::singular_values)
      .def_readonly("right", &detvar::SvdFactorization::right)
      .def("reconstruct", &detvar::SvdFactorization::reconstruct);

  py::class_<detvar::AdaptedFrame>(m, "AdaptedFrame")
      .def_readonly("u", &detvar::AdaptedFrame::u)
      .def_readonly("u_perp", &detvar::AdaptedFrame::u_perp)
      .def_readonly("v", &detvar::AdaptedFrame::v)
      .def_readonly("v_perp", &detvar::AdaptedFrame::v_perp)
      .def_readonly("rank", &detvar::AdaptedFrame::rank);

  py::class_<detvar::MembershipReport>(m, "MembershipReport")
      .def_readonly("is_member", &detvar::MembershipReport::is_member)
      .def_readonly("normal_block_singular_values",
                    &detvar::MembershipReport::normal_block_singular_values)
      .def_readonly("normal_rank", &detvar::MembershipReport::normal_rank)
      .def_readonly("rank_budget", &detvar::MembershipReport::rank_budget)
      .def_readonly("r", &detvar::MembershipReport::r)
      .def_readonly("rank_low", &detvar::MembershipReport::rank_low)
      .def_readonly("tie", &detvar::MembershipReport::tie)
      .def_readonly("reference_scale",
                    &detvar::MembershipReport::reference_scale)
      .def("__repr__", [](const detvar::MembershipReport& r) {
        return "<MembershipReport " + detvar::to_machine(r) + ">";
      });

  py::class_<detvar::ConeDecomposition>(m, "ConeDecomposition")
      .def_readonly("tangent_part", &detvar::ConeDecomposition::tangent_part)
      .def_readonly("normal_part", &detvar::ConeDecomposition::normal_part)
      .def_readonly("truncation_tie",
                    &detvar::ConeDecomposition::truncation_tie);

  py::class_<detvar::BlockCoordinates>(m, "BlockCoordinates")
      .def_readonly("a", &detvar::BlockCoordinates::a)
      .def_readonly("c", &detvar::BlockCoordinates::c)
      .def_readonly("d", &detvar::BlockCoordinates::d)
      .def_readonly("e", &detvar::BlockCoordinates::e);

  py::class_<detvar::TrialReport>(m, "TrialReport")
      .def_readonly("name", &detvar::TrialReport::name)
      .def_readonly("trials", &detvar::TrialReport::trials)
      .def_readonly("failures", &detvar::TrialReport::failures)
      .def_readonly("worst_violation", &detvar::TrialReport::worst_violation)
      .def_readonly("seed", &detvar::TrialReport::seed)
      .def_readonly("details", &detvar::TrialReport::details)
      .def("passed", &detvar::TrialReport::passed)
      .def("__repr__", [](const detvar::TrialReport& r) {
        return "<TrialReport " + detvar::to_machine(r) + ">";
      });

  py::class_<detvar::CompletionResult>(m, "CompletionResult")
      .def_readonly("solution", &detvar::CompletionResult::solution)
      .def_readonly("residual_history",
                    &detvar::CompletionResult::residual_history)
      .def_readonly("iterations", &detvar::CompletionResult::iterations)
      .def_readonly("converged", &detvar::CompletionResult::converged);

  // Dense linear algebra.
  m.def("frobenius_inner", &detvar::frobenius_inner, py::arg("x"),
        py::arg("y"));
  m.def("svd", &detvar::svd, py::arg("x"));
  m.def("numerical_rank", &detvar::numerical_rank, py::arg("x"),
        py::arg("tol") = detvar::TolerancePolicy{});
  m.def("truncate_rank", &detvar::truncate_rank, py::arg("x"), py::arg("k"));
  m.def("orthonormal_range_basis", &detvar::orthonormal_range_basis,
        py::arg("x"), py::arg("tol") = detvar::TolerancePolicy{});
  m.def("orthogonal_complement", &detvar::orthogonal_complement, py::arg("u"));

  // Fixed-rank geometry.
  m.def("adapted_frame", &detvar::adapted_frame, py::arg("x"),
        py::arg("tol") = detvar::TolerancePolicy{});
  m.def("proj_tangent", &detvar::proj_tangent, py::arg("frame"), py::arg("z"));
  m.def("proj_normal", &detvar::proj_normal, py::arg("frame"), py::arg("z"));
  m.def("tangent_dim", &detvar::tangent_dim, py::arg("m"), py::arg("n"),
        py::arg("rank_low"));
  m.def(
      "contains_tensor_product",
      [](const detvar::Matrix& left, const detvar::Matrix& right,
         const detvar::Matrix& z, double rel_tol) {
        return detvar::contains_tensor_product({left, right}, z, rel_tol);
      },
      py::arg("left_basis"), py::arg("right_basis"), py::arg("z"),
      py::arg("rel_tol") = 1e-10);

  // Tangent cone.
  m.def(
      "membership",
      [](const detvar::Matrix& x, const detvar::Matrix& z, int r,
         const detvar::TolerancePolicy& tol) {
        return detvar::membership(x, z, r, tol);
      },
      py::arg("x"), py::arg("z"), py::arg("r"),
      py::arg("tol") = detvar::TolerancePolicy{});
  m.def("membership_kernel_frames", &detvar::membership_kernel_frames,
        py::arg("p"), py::arg("q"), py::arg("z"), py::arg("r"),
        py::arg("rank_low"), py::arg("tol") = detvar::TolerancePolicy{});
  m.def(
      "membership_grassmann",
      [](const detvar::Matrix& x, const detvar::Matrix& z, int r,
         const detvar::TolerancePolicy& tol) {
        return detvar::membership_grassmann(x, z, r, tol);
      },
      py::arg("x"), py::arg("z"), py::arg("r"),
      py::arg("tol") = detvar::TolerancePolicy{});
  m.def("grassmann_witness", &detvar::grassmann_witness, py::arg("x"),
        py::arg("z"), py::arg("r"), py::arg("tol") = detvar::TolerancePolicy{});
  m.def(
      "decompose",
      [](const detvar::Matrix& x, const detvar::Matrix& z, int r,
         const detvar::TolerancePolicy& tol) {
        return detvar::decompose(x, z, r, tol);
      },
      py::arg("x"), py::arg("z"), py::arg("r"),
      py::arg("tol") = detvar::TolerancePolicy{});
  m.def(
      "project_to_cone",
      [](const detvar::Matrix& x, const detvar::Matrix& z, int r,
         const detvar::TolerancePolicy& tol) {
        return detvar::project_to_cone(x, z, r, tol);
      },
      py::arg("x"), py::arg("z"), py::arg("r"),
      py::arg("tol") = detvar::TolerancePolicy{});
  m.def(
      "sample_cone_element",
      [](const detvar::Matrix& x, int r, std::uint64_t seed, double scale,
         const detvar::TolerancePolicy& tol) {
        std::mt19937_64 rng(seed);
        return detvar::sample_cone_element(x, r, rng, scale, tol);
      },
      py::arg("x"), py::arg("r"), py::arg("seed"), py::arg("scale") = 1.0,
      py::arg("tol") = detvar::TolerancePolicy{});

  // Retraction and block algebra.
  m.def("block_coordinates", &detvar::block_coordinates, py::arg("frame"),
        py::arg("y"));
  m.def("schur_complement", &detvar::schur_complement, py::arg("blocks"),
        py::arg("tol") = detvar::TolerancePolicy{});
  m.def(
      "orthographic_retract",
      [](const detvar::Matrix& x, const detvar::Matrix& y_tangent,
         const detvar::TolerancePolicy& tol) {
        return detvar::orthographic_retract(x, detvar::adapted_frame(x, tol),
                                            y_tangent, tol);
      },
      py::arg("x"), py::arg("y_tangent"),
      py::arg("tol") = detvar::TolerancePolicy{});
  m.def(
      "direct_sum_rank_check",
      [](const detvar::Matrix& u1, const detvar::Matrix& v1,
         const detvar::Matrix& a1, const detvar::Matrix& u2,
         const detvar::Matrix& v2, const detvar::Matrix& a2,
         const detvar::TolerancePolicy& tol) {
        return detvar::direct_sum_rank_check({u1, v1}, a1, {u2, v2}, a2, tol);
      },
      py::arg("left_basis_1"), py::arg("right_basis_1"), py::arg("a1"),
      py::arg("left_basis_2"), py::arg("right_basis_2"), py::arg("a2"),
      py::arg("tol") = detvar::TolerancePolicy{});

  // Verification suites.
  m.def("counterexample_fixture", &detvar::counterexample_fixture);
  m.def("verify_inclusion_chain", &detvar::verify_inclusion_chain,
        py::arg("m"), py::arg("n"), py::arg("r"), py::arg("rank_low"),
        py::arg("trials"), py::arg("seed"));
  m.def("sequence_limit_check", &detvar::sequence_limit_check, py::arg("m"),
        py::arg("n"), py::arg("r"), py::arg("rank_low"), py::arg("trials"),
        py::arg("seed"));
  m.def("arc_tangent_check", &detvar::arc_tangent_check, py::arg("m"),
        py::arg("n"), py::arg("r"), py::arg("rank_low"), py::arg("degree"),
        py::arg("trials"), py::arg("seed"));
  m.def("projection_optimality_check", &detvar::projection_optimality_check,
        py::arg("m"), py::arg("n"), py::arg("r"), py::arg("trials"),
        py::arg("seed"));

  // Completion demo.
  m.def(
      "solve_completion",
      [](const detvar::Matrix& target, const detvar::Matrix& mask, int r,
         const detvar::Matrix& x0, double step_size, int max_iters,
         double stop_tol, bool check_directions,
         const detvar::TolerancePolicy& tol) {
        detvar::CompletionProblem problem;
        problem.target = target;
        problem.mask = mask;
        problem.rank_bound = r;
        problem.step_size = step_size;
        problem.max_iters = max_iters;
        problem.stop_tol = stop_tol;
        problem.check_directions = check_directions;
        return detvar::solve_completion(problem, x0, tol);
      },
      py::arg("target"), py::arg("mask"), py::arg("r"), py::arg("x0"),
      py::arg("step_size") = 1.0, py::arg("max_iters") = 500,
      py::arg("stop_tol") = 1e-12, py::arg("check_directions") = false,
      py::arg("tol") = detvar::TolerancePolicy{});

  m.attr("__version__") = "0.1.0";
}
