#include <cmath>
#include <random>

#include "doctest.h"
#include "lqsweep/errors.hpp"
#include "lqsweep/sweep.hpp"
#include "support.hpp"

using lqsweep::Grid;
using lqsweep::Matrix;

namespace {

lqsweep::BlockTrajectory direct_blocks(const lqsweep::LqProblem& p, int steps) {
  return lqsweep::fundamental_direct(p, Grid(p.t0, p.tau, steps));
}

double sup_distance(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, (a[i] - b[i]).max_abs());
  return worst;
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("missing-data system for the hyperbolic problem") {
  const auto traj = direct_blocks(lqtest::p1(), 2000);
  const auto sys = lqsweep::build_sweep_system(lqtest::p1(), traj.at_tau());
  REQUIRE(sys.d.rows() == 2);

  // closed form: [[tanh 1, 1 - sech 1], [1 - sech 1, -tanh 1]], rhs (0, 1)
  CHECK(sys.d(0, 0) == doctest::Approx(lqtest::kTanh1).epsilon(1e-12));
  CHECK(sys.d(0, 1) == doctest::Approx(1.0 - lqtest::kSech1).epsilon(1e-12));
  CHECK(sys.d(1, 0) == doctest::Approx(1.0 - lqtest::kSech1).epsilon(1e-12));
  CHECK(sys.d(1, 1) == doctest::Approx(-lqtest::kTanh1).epsilon(1e-12));
  CHECK(sys.rhs(0, 0) == 0.0);
  CHECK(sys.rhs(1, 0) == 1.0);
  CHECK(lqsweep::sweep_symmetry_residual(sys) < 1e-12);

  const auto md = lqsweep::solve_missing_data(sys);
  CHECK(md.x0(0, 0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(md.nu(0, 0) == doctest::Approx(lqtest::p1_nu()).epsilon(1e-10));
}

TEST_CASE("missing-data system for the two-row problem") {
  const auto p = lqtest::p2();
  const auto traj = direct_blocks(p, 2000);
  const auto sys = lqsweep::build_sweep_system(p, traj.at_tau());
  REQUIRE(sys.d.rows() == 3);

  // closed form: [[0, 1, e^{-1}], [1, 0, 0], [e^{-1}, 0, -(1-e^{-2})/2]]
  CHECK(std::abs(sys.d(0, 0)) < 1e-12);
  CHECK(sys.d(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sys.d(0, 2) == doctest::Approx(lqtest::kExpM1).epsilon(1e-12));
  CHECK(sys.d(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(sys.d(1, 1)) < 1e-14);
  CHECK(std::abs(sys.d(1, 2)) < 1e-14);
  CHECK(sys.d(2, 0) == doctest::Approx(lqtest::kExpM1).epsilon(1e-12));
  CHECK(std::abs(sys.d(2, 1)) < 1e-14);
  CHECK(sys.d(2, 2) == doctest::Approx(-lqtest::kHalf1ME2).epsilon(1e-12));
  CHECK(sys.rhs(1, 0) == 1.0);
  CHECK(sys.rhs(2, 0) == 1.0);

  const auto md = lqsweep::solve_missing_data(sys);
  CHECK(md.x0(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(md.nu(0, 0) == doctest::Approx(lqtest::p2_nu1()).epsilon(1e-9));
  CHECK(md.nu(1, 0) == doctest::Approx(lqtest::p2_nu2()).epsilon(1e-9));
}

TEST_CASE("costate initialization") {
  const Matrix nu{{2.0}, {-3.0}};
  const auto p = lqtest::p2();
  const Matrix l0 = lqsweep::costate_initial(nu, p);
  // Phi1 = [1; 0]: lambda0 = -Phi1' nu = -nu_1
  CHECK(l0(0, 0) == -2.0);
}

TEST_CASE("open-loop trajectory hits the closed forms") {
  const auto p = lqtest::p1();
  const auto traj = direct_blocks(p, 2000);
  const auto md =
      lqsweep::solve_missing_data(lqsweep::build_sweep_system(p, traj.at_tau()));
  const auto sol = lqsweep::open_loop(p, traj, md);

  CHECK(sol.x.front()(0, 0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(sol.x.back()(0, 0) == doctest::Approx(-0.5).epsilon(1e-9));
  // u(0) = -lambda(0) = nu
  CHECK(sol.u.front()(0, 0) == doctest::Approx(lqtest::p1_nu()).epsilon(1e-9));
  CHECK(sol.cost == doctest::Approx(lqtest::p1_cost()).epsilon(1e-6));

  CHECK(sol.diagnostics.bc_residual < 1e-9);
  CHECK(sol.diagnostics.symplectic_max < 1e-12);
  CHECK(sol.diagnostics.dynamics_residual < 1e-5);
  CHECK(sol.diagnostics.duality_gap < 1e-6);

  // P2: u(t) = nu1 e^t, x exact exponential blend, cost tanh(1/2)
  const auto p2 = lqtest::p2();
  const auto traj2 = direct_blocks(p2, 2000);
  const auto md2 = lqsweep::solve_missing_data(
      lqsweep::build_sweep_system(p2, traj2.at_tau()));
  const auto sol2 = lqsweep::open_loop(p2, traj2, md2);
  CHECK(sol2.cost == doctest::Approx(lqtest::kTanhHalf).epsilon(1e-6));
  double u_err = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double t = traj2.grid.node(i);
    u_err = std::max(u_err, std::abs(sol2.u[i](0, 0) -
                                     lqtest::p2_nu1() * std::exp(t)));
  }
  CHECK(u_err < 1e-8);

  // P3: zero data, zero trajectory, zero cost
  const auto p3 = lqtest::p3();
  const auto traj3 = direct_blocks(p3, 500);
  const auto md3 = lqsweep::solve_missing_data(
      lqsweep::build_sweep_system(p3, traj3.at_tau()));
  const auto sol3 = lqsweep::open_loop(p3, traj3, md3);
  CHECK(std::abs(sol3.cost) < 1e-15);
  CHECK(sup_distance(sol3.x, std::vector<Matrix>(501, Matrix(1, 1))) < 1e-12);
}

TEST_CASE("feedback law reproduces the open-loop control") {
  const auto p = lqtest::p1();
  const auto traj = direct_blocks(p, 400);
  const auto md =
      lqsweep::solve_missing_data(lqsweep::build_sweep_system(p, traj.at_tau()));
  const auto sol = lqsweep::open_loop(p, traj, md);
  // evaluate the feedback expression on the open-loop states
  double worst = 0.0;
  for (int i = 0; i <= 400; i += 40) {
    const Matrix u_fb =
        lqsweep::feedback_control(p, traj.blocks[i], sol.x[i], md.nu);
    worst = std::max(worst, (u_fb - sol.u[i]).max_abs());
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("closed-loop integration tracks the open-loop trajectory") {
  std::mt19937_64 rng(555u);
  for (const auto& p :
       {lqtest::p1(), lqtest::p2(), lqtest::random_problem(rng, false)}) {
    const auto traj = direct_blocks(p, 1000);
    const auto md = lqsweep::solve_missing_data(
        lqsweep::build_sweep_system(p, traj.at_tau()));
    const auto open = lqsweep::open_loop(p, traj, md);
    const auto closed = lqsweep::closed_loop(p, md, traj);
    CHECK(sup_distance(open.x, closed.x) < 1e-7);
    CHECK(sup_distance(open.u, closed.u) < 1e-7);
    CHECK(closed.cost == doctest::Approx(open.cost).epsilon(1e-7));
    CHECK(closed.diagnostics.bc_residual < 1e-6);
  }
}

TEST_CASE("augmented solve agrees with the sweep") {
  std::mt19937_64 rng(808u);
  for (const auto& p :
       {lqtest::p1(), lqtest::p2(), lqtest::p3(),
        lqtest::random_problem(rng, false), lqtest::random_problem(rng, true)}) {
    const auto traj = direct_blocks(p, 1000);
    const auto sys = lqsweep::build_sweep_system(p, traj.at_tau());
    const auto md_sweep = lqsweep::solve_missing_data(sys);
    const auto md_aug = lqsweep::augmented_solve(p, traj.at_tau());
    CHECK((md_sweep.x0 - md_aug.x0).max_abs() < 1e-9);
    CHECK((md_sweep.nu - md_aug.nu).max_abs() < 1e-9);
  }
}

TEST_CASE("quadrature of a constant integrand") {
  const auto p = lqtest::p1();
  const Grid grid(0.0, 1.0, 10);
  const std::vector<Matrix> ones(11, Matrix{{1.0}});
  const std::vector<Matrix> zeros(11, Matrix(1, 1));
  // x'Rx/2 = 1/2 over a unit interval
  CHECK(lqsweep::evaluate_cost(p, ones, zeros, grid) == doctest::Approx(0.5));
  CHECK(lqsweep::evaluate_cost(p, zeros, ones, grid) == doctest::Approx(0.5));
  CHECK_THROWS_AS(lqsweep::evaluate_cost(p, ones, zeros, Grid(0.0, 1.0, 5)),
                  lqsweep::ShapeError);
}

TEST_CASE("boundary residual") {
  const auto p = lqtest::p1();
  CHECK(lqsweep::boundary_residual(p, Matrix{{0.5}}, Matrix{{-0.5}}) < 1e-15);
  CHECK(lqsweep::boundary_residual(p, Matrix{{0.5}}, Matrix{{0.5}}) ==
        doctest::Approx(1.0));
}

TEST_CASE("duality identity holds on random instances") {
  std::mt19937_64 rng(4242u);
  for (int trial = 0; trial < 8; ++trial) {
    const auto p = lqtest::random_problem(rng, trial % 2 == 0);
    lqsweep::PipelineOptions opts;
    opts.steps = 2000;
    const auto res = lqsweep::solve_pipeline(p, opts);
    CHECK(res.solution.diagnostics.duality_gap < 1e-6);
  }
}

TEST_CASE("pipeline diagnostics for the canonical problem") {
  lqsweep::PipelineOptions opts;  // sweep, direct, 2000 steps
  const auto res = lqsweep::solve_pipeline(lqtest::p1(), opts);
  CHECK(res.solution.cost == doctest::Approx(lqtest::p1_cost()).epsilon(1e-6));
  CHECK(res.solution.diagnostics.d_symmetry < 1e-12);
  CHECK(res.solution.diagnostics.symplectic_max < 1e-12);
  CHECK(res.solution.diagnostics.bc_residual < 1e-9);
  CHECK(res.solution.diagnostics.duality_gap < 1e-6);
  CHECK(res.system.d.rows() == 2);
  CHECK(res.trajectory.blocks.size() == 2001);

  // the three fundamental representations agree end to end on P2
  double costs[3];
  int idx = 0;
  for (const auto f : {lqsweep::Fundamental::Direct,
                       lqsweep::Fundamental::ZakharItkin,
                       lqsweep::Fundamental::Stationary}) {
    lqsweep::PipelineOptions o;
    o.fundamental = f;
    o.steps = 1000;
    costs[idx++] = lqsweep::solve_pipeline(lqtest::p2(), o).solution.cost;
  }
  CHECK(costs[0] == doctest::Approx(lqtest::kTanhHalf).epsilon(1e-6));
  CHECK(costs[1] == doctest::Approx(costs[0]).epsilon(1e-9));
  CHECK(costs[2] == doctest::Approx(costs[0]).epsilon(1e-9));
}

TEST_CASE("feedback method through the pipeline") {
  lqsweep::PipelineOptions opts;
  opts.method = lqsweep::Method::Feedback;
  opts.steps = 1000;
  const auto res = lqsweep::solve_pipeline(lqtest::p2(), opts);
  CHECK(res.solution.cost == doctest::Approx(lqtest::kTanhHalf).epsilon(1e-6));
  CHECK(res.solution.diagnostics.bc_residual < 1e-6);
}

TEST_CASE("a cost-free level shift leaves x0 undetermined") {
  auto p = lqtest::p1();
  p.R = lqsweep::TimeMatrix::constant(Matrix{{0.0}});
  const auto traj = direct_blocks(p, 200);
  const auto sys = lqsweep::build_sweep_system(p, traj.at_tau());
  CHECK_THROWS_AS(lqsweep::solve_missing_data(sys), lqsweep::SingularMatrix);

  lqsweep::PipelineOptions opts;
  opts.steps = 200;
  CHECK_THROWS_WITH_AS(lqsweep::solve_pipeline(p, opts),
                       doctest::Contains("rank"), lqsweep::SingularMatrix);

  const std::string hint = lqsweep::singular_d_hint(p);
  CHECK(hint.find("rank") != std::string::npos);
  CHECK(hint.find("identically zero") != std::string::npos);
}

}  // TEST_SUITE
