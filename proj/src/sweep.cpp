#include "lqsweep/sweep.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include "lqsweep/numerics.hpp"
#include "lqsweep/zakhar_itkin.hpp"

namespace lqsweep {

SweepSystem build_sweep_system(const LqProblem& p, const FundamentalBlocks& b) {
  const int n = p.n;
  const int k = p.k;
  Matrix m;
  try {
    m = mat_solve(b.phi22, Matrix::identity(n));
  } catch (const SingularMatrix& e) {
    throw SingularMatrix(std::string("PHI22 at tau is not invertible "
                                     "(conjugate-point-type failure): ") +
                         e.what());
  }
  const Matrix phi1t = p.Phi1.transpose();
  const Matrix phi2t = p.Phi2.transpose();
  const Matrix m_phi21 = m * b.phi21;

  SweepSystem s;
  s.n = n;
  s.k = k;
  s.d = Matrix(n + k, n + k);
  s.d.set_block(0, 0, -m_phi21);
  s.d.set_block(0, n, phi1t - m * phi2t);
  s.d.set_block(n, 0, p.Phi1 - p.Phi2 * (b.phi11 - b.phi12 * m_phi21));
  s.d.set_block(n, n, p.Phi2 * (b.phi12 * (m * phi2t)));
  s.rhs = Matrix(n + k, 1);
  s.rhs.set_block(n, 0, p.q);
  return s;
}

double sweep_symmetry_residual(const SweepSystem& s) {
  return (s.d - s.d.transpose()).norm_fro() / (1.0 + s.d.norm_fro());
}

MissingData solve_missing_data(const SweepSystem& s) {
  const double sym = sweep_symmetry_residual(s);
  if (sym > 1e-4)
    std::cerr << "warning: missing-data system symmetry residual " << sym
              << " exceeds 1e-4; check the problem data\n";
  const Matrix z = mat_solve(s.d, s.rhs);
  return {z.block(0, 0, s.n, 1), z.block(s.n, 0, s.k, 1)};
}

Matrix costate_initial(const Matrix& nu, const LqProblem& p) {
  return -(p.Phi1.transpose() * nu);
}

namespace {

Matrix control_from_costate(const LqProblem& p, double t, const Matrix& lambda) {
  const Matrix g = p.G.eval(t);
  return -mat_solve(p.C.eval(t), g.transpose() * lambda);
}

// Max-abs finite-difference defect of the dynamics over interior nodes.
double dynamics_residual(const LqProblem& p, const std::vector<Matrix>& x,
                         const std::vector<Matrix>& u, const Grid& grid) {
  double worst = 0.0;
  const double h = grid.h();
  for (int i = 1; i < grid.steps; ++i) {
    const double t = grid.node(i);
    const Matrix xdot = (1.0 / (2.0 * h)) * (x[i + 1] - x[i - 1]);
    const Matrix defect = xdot - p.F.eval(t) * x[i] - p.G.eval(t) * u[i];
    worst = std::max(worst, defect.max_abs());
  }
  return worst;
}

void fill_diagnostics(const LqProblem& p, const BlockTrajectory& traj,
                      Solution& sol) {
  double symp = 0.0;
  for (const auto& b : traj.blocks)
    symp = std::max(symp, symplectic_residual(b));
  sol.diagnostics.symplectic_max = symp;
  sol.diagnostics.bc_residual = boundary_residual(p, sol.x0, sol.x.back());
  sol.diagnostics.dynamics_residual = dynamics_residual(p, sol.x, sol.u, sol.grid);
  double nu_q = 0.0;
  for (int i = 0; i < p.k; ++i) nu_q += sol.nu(i, 0) * p.q(i, 0);
  sol.diagnostics.duality_gap = std::fabs(sol.cost + 0.5 * nu_q);
  sol.diagnostics.d_symmetry = std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

Solution open_loop(const LqProblem& p, const BlockTrajectory& traj,
                   const MissingData& md) {
  Solution sol{traj.grid, {}, {}, {}, md.x0, md.nu, 0.0, {}};
  const Matrix lambda0 = costate_initial(md.nu, p);
  sol.x.reserve(traj.blocks.size());
  sol.u.reserve(traj.blocks.size());
  sol.lambda.reserve(traj.blocks.size());
  for (const auto& b : traj.blocks) {
    Matrix xi = b.phi11 * md.x0 + b.phi12 * lambda0;
    Matrix li = b.phi21 * md.x0 + b.phi22 * lambda0;
    sol.u.push_back(control_from_costate(p, b.t, li));
    sol.x.push_back(std::move(xi));
    sol.lambda.push_back(std::move(li));
  }
  sol.cost = evaluate_cost(p, sol.x, sol.u, sol.grid);
  fill_diagnostics(p, traj, sol);
  return sol;
}

namespace {

// lambda(t, x) of the feedback form; shared by feedback_control and the
// closed-loop reconstruction.
Matrix feedback_costate(const FundamentalBlocks& b, const Matrix& x,
                        const Matrix& lambda0) {
  Matrix rhs = hstack(x, b.phi12);
  Matrix z;
  try {
    z = mat_solve(b.phi11, rhs);
  } catch (const SingularMatrix& e) {
    throw SingularMatrix(std::string("PHI11 near-singular (focal point) at t=") +
                         std::to_string(b.t) + ": " + e.what());
  }
  const int n = x.rows();
  const Matrix y = z.block(0, 0, n, 1);             // PHI11^{-1} x
  const Matrix w = z.block(0, 1, n, n);             // PHI11^{-1} PHI12
  return b.phi21 * y + (b.phi22 - b.phi21 * w) * lambda0;
}

}  // namespace

Matrix feedback_control(const LqProblem& p, const FundamentalBlocks& b,
                        const Matrix& x, const Matrix& nu) {
  const Matrix lambda0 = costate_initial(nu, p);
  return control_from_costate(p, b.t, feedback_costate(b, x, lambda0));
}

Solution closed_loop(const LqProblem& p, const MissingData& md,
                     const BlockTrajectory& traj) {
  const int n = p.n;
  const Matrix lambda0 = costate_initial(md.nu, p);

  // state [PHI | xcol]: the blocks are co-integrated so each stage evaluates
  // the feedback law against stage-consistent PHI(t, t0)
  Matrix y0(2 * n, 2 * n + 1);
  y0.set_block(0, 0, Matrix::identity(2 * n));
  y0.set_block(0, 2 * n, md.x0);
  auto rhs = [&](double t, const Matrix& y) {
    const Matrix phi = y.block(0, 0, 2 * n, 2 * n);
    const Matrix x = y.block(0, 2 * n, n, 1);
    const FundamentalBlocks b = blocks_from_matrix(t, phi);
    const Matrix u = control_from_costate(p, t, feedback_costate(b, x, lambda0));
    Matrix dy(2 * n, 2 * n + 1);
    dy.set_block(0, 0, assemble_h(p, t) * phi);
    dy.set_block(0, 2 * n, p.F.eval(t) * x + p.G.eval(t) * u);
    return dy;
  };
  const std::vector<Matrix> states = rk4_integrate(rhs, y0, traj.grid);

  Solution sol{traj.grid, {}, {}, {}, md.x0, md.nu, 0.0, {}};
  BlockTrajectory integrated{traj.grid, {}};
  for (int i = 0; i <= traj.grid.steps; ++i) {
    const Matrix phi = states[i].block(0, 0, 2 * n, 2 * n);
    const FundamentalBlocks b = blocks_from_matrix(traj.grid.node(i), phi);
    const Matrix x = states[i].block(0, 2 * n, n, 1);
    const Matrix li = feedback_costate(b, x, lambda0);
    sol.u.push_back(control_from_costate(p, b.t, li));
    sol.x.push_back(x);
    sol.lambda.push_back(li);
    integrated.blocks.push_back(b);
  }
  sol.cost = evaluate_cost(p, sol.x, sol.u, sol.grid);
  fill_diagnostics(p, integrated, sol);
  return sol;
}

MissingData augmented_solve(const LqProblem& p, const FundamentalBlocks& b) {
  const int n = p.n;
  const int k = p.k;
  const int dim = 4 * n + k;
  const Matrix eye = Matrix::identity(n);
  Matrix a(dim, dim);
  Matrix rhs(dim, 1);
  // unknowns z = [x0; lambda0; x_tau; lambda_tau; nu]
  a.set_block(0, 0, b.phi11);
  a.set_block(0, n, b.phi12);
  a.set_block(0, 2 * n, -eye);
  a.set_block(n, 0, b.phi21);
  a.set_block(n, n, b.phi22);
  a.set_block(n, 3 * n, -eye);
  a.set_block(2 * n, n, eye);
  a.set_block(2 * n, 4 * n, p.Phi1.transpose());
  a.set_block(3 * n, 3 * n, eye);
  a.set_block(3 * n, 4 * n, p.Phi2.transpose());
  a.set_block(4 * n, 0, p.Phi1);
  a.set_block(4 * n, 2 * n, -p.Phi2);
  rhs.set_block(4 * n, 0, p.q);
  const Matrix z = mat_solve(a, rhs);
  return {z.block(0, 0, n, 1), z.block(4 * n, 0, k, 1)};
}

double evaluate_cost(const LqProblem& p, const std::vector<Matrix>& x,
                     const std::vector<Matrix>& u, const Grid& grid) {
  if (static_cast<int>(x.size()) != grid.steps + 1 || x.size() != u.size())
    throw ShapeError("evaluate_cost: sequences must align with the grid");
  double acc = 0.0;
  for (int i = 0; i <= grid.steps; ++i) {
    const double t = grid.node(i);
    const Matrix xr = x[i].transpose() * (p.R.eval(t) * x[i]);
    const Matrix uc = u[i].transpose() * (p.C.eval(t) * u[i]);
    const double integrand = 0.5 * (xr(0, 0) + uc(0, 0));
    acc += (i == 0 || i == grid.steps) ? 0.5 * integrand : integrand;
  }
  return acc * grid.h();
}

double boundary_residual(const LqProblem& p, const Matrix& x0,
                         const Matrix& x_tau) {
  return (p.Phi1 * x0 - p.Phi2 * x_tau - p.q).norm_fro();
}

std::string singular_d_hint(const LqProblem& p) {
  std::ostringstream os;
  os << "the missing-data system is rank-deficient";
  double r_max = 0.0;
  for (int i = 0; i <= 10; ++i)
    r_max = std::max(r_max, p.R.eval(p.t0 + (p.tau - p.t0) * i / 10.0).max_abs());
  if (r_max == 0.0)
    os << "; R(t) is identically zero on the interval, so the cost does not"
          " penalize the state and the boundary rows alone must pin x0";
  try {
    const double margin = sym_eigvals(controllability_gramian(p, 200)).front();
    os << "; controllability margin " << margin;
  } catch (const SolverError&) {
    os << "; controllability margin unavailable";
  }
  const Matrix coeff = hstack(p.Phi1, -p.Phi2);
  os << "; boundary coefficient rank " << rank_estimate(coeff) << " of " << p.k
     << " rows";
  return os.str();
}

PipelineResult solve_pipeline(const LqProblem& p, const PipelineOptions& opts) {
  const Grid grid(p.t0, p.tau, opts.steps);
  BlockTrajectory traj{grid, {}};
  switch (opts.fundamental) {
    case Fundamental::Direct:
      traj = fundamental_direct(p, grid);
      break;
    case Fundamental::ZakharItkin: {
      const std::vector<PsiWvState> states = integrate_psi_w_v(p, grid);
      traj.blocks.reserve(states.size());
      for (const auto& s : states) traj.blocks.push_back(blocks_from_factors(s));
      break;
    }
    case Fundamental::Stationary:
      traj.blocks.reserve(grid.steps + 1);
      for (int i = 0; i <= grid.steps; ++i)
        traj.blocks.push_back(stationary_blocks(p, grid.node(i)));
      break;
  }

  PipelineResult result{Solution{grid, {}, {}, {}, {}, {}, 0.0, {}},
                        build_sweep_system(p, traj.at_tau()), std::move(traj)};
  const double d_sym = sweep_symmetry_residual(result.system);

  MissingData md;
  if (opts.method == Method::Augmented) {
    md = augmented_solve(p, result.trajectory.at_tau());
  } else {
    try {
      md = solve_missing_data(result.system);
    } catch (const SingularMatrix& e) {
      throw SingularMatrix(std::string(e.what()) + "; " + singular_d_hint(p));
    }
  }

  result.solution = (opts.method == Method::Feedback)
                        ? closed_loop(p, md, result.trajectory)
                        : open_loop(p, result.trajectory, md);
  result.solution.diagnostics.d_symmetry = d_sym;
  return result;
}

}  // namespace lqsweep
