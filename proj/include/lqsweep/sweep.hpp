#pragma once

#include <string>
#include <vector>

#include "lqsweep/hamiltonian.hpp"
#include "lqsweep/matrix.hpp"
#include "lqsweep/problem.hpp"

namespace lqsweep {

// Symmetric missing-data system D [x0; nu] = [0; q] built from the
// fundamental blocks at tau.
struct SweepSystem {
  Matrix d;    // (n+k) x (n+k)
  Matrix rhs;  // (n+k) x 1, upper n entries zero
  int n = 0;
  int k = 0;
};

struct MissingData {
  Matrix x0;  // n x 1
  Matrix nu;  // k x 1
};

struct Diagnostics {
  double d_symmetry = 0.0;
  double symplectic_max = 0.0;
  double bc_residual = 0.0;
  double dynamics_residual = 0.0;
  double duality_gap = 0.0;
};

struct Solution {
  Grid grid;
  std::vector<Matrix> x;       // n x 1 per node
  std::vector<Matrix> u;       // m x 1 per node
  std::vector<Matrix> lambda;  // n x 1 per node
  Matrix x0;
  Matrix nu;
  double cost = 0.0;
  Diagnostics diagnostics;
};

// With M = PHI22^{-1}:
//   row block 1 (n):  [-M PHI21              | Phi1' - M Phi2']        = 0
//   row block 2 (k):  [Phi1 - Phi2 (PHI11 - PHI12 M PHI21) | Phi2 PHI12 M Phi2'] = q
// Symmetry of D is the central structural property and is asserted by tests,
// not exploited by the solver.
SweepSystem build_sweep_system(const LqProblem& p, const FundamentalBlocks& b);

// ||D - D'||_F / (1 + ||D||_F)
double sweep_symmetry_residual(const SweepSystem& s);

// Dense solve of the missing-data system; a warning goes to stderr when the
// symmetry residual exceeds 1e-4.  SingularMatrix means the problem does not
// pin (x0, nu) uniquely; there is no least-squares fallback.
MissingData solve_missing_data(const SweepSystem& s);

// lambda(t0) = -Phi1' nu
Matrix costate_initial(const Matrix& nu, const LqProblem& p);

// x(t) = PHI11 x0 + PHI12 lambda0, lambda(t) = PHI21 x0 + PHI22 lambda0,
// u(t) = -C^{-1} G' lambda(t), cost and diagnostics filled (d_symmetry is
// left NaN; the pipeline knows the sweep system and sets it).
Solution open_loop(const LqProblem& p, const BlockTrajectory& traj,
                   const MissingData& md);

// u(t, x) = -C^{-1} G' [ PHI21 PHI11^{-1} x
//                        + (PHI22 - PHI21 PHI11^{-1} PHI12) lambda0 ],
// lambda0 = -Phi1' nu.  Throws SingularMatrix at a focal point of PHI11.
Matrix feedback_control(const LqProblem& p, const FundamentalBlocks& b,
                        const Matrix& x, const Matrix& nu);

// Integrates the closed-loop dynamics xdot = F x + G u(t, x) with the
// feedback law above, co-integrating the fundamental matrix so the control
// uses stage-consistent blocks.
Solution closed_loop(const LqProblem& p, const MissingData& md,
                     const BlockTrajectory& traj);

// Dimension-raising cross-check: solves the joint (4n+k) system in
// (x0, lambda0, x_tau, lambda_tau, nu) in one dense solve.
MissingData augmented_solve(const LqProblem& p, const FundamentalBlocks& b);

// Trapezoid quadrature of (1/2)(x'R x + u'C u) over the grid.
double evaluate_cost(const LqProblem& p, const std::vector<Matrix>& x,
                     const std::vector<Matrix>& u, const Grid& grid);

// ||Phi1 x0 - Phi2 x_tau - q||_2
double boundary_residual(const LqProblem& p, const Matrix& x0,
                         const Matrix& x_tau);

// Human-readable context for a singular missing-data system: whether R is
// identically zero, the controllability margin, and the boundary ranks.
std::string singular_d_hint(const LqProblem& p);

enum class Method { Sweep, Augmented, Feedback };
enum class Fundamental { Direct, ZakharItkin, Stationary };

struct PipelineOptions {
  Method method = Method::Sweep;
  Fundamental fundamental = Fundamental::Direct;
  int steps = 2000;
};

struct PipelineResult {
  Solution solution;  // diagnostics fully populated, d_symmetry included
  SweepSystem system;
  BlockTrajectory trajectory;
};

// The full solve: integrate the fundamental blocks (chosen representation),
// restore D and the missing data, synthesize the trajectory.
PipelineResult solve_pipeline(const LqProblem& p, const PipelineOptions& opts);

}  // namespace lqsweep
