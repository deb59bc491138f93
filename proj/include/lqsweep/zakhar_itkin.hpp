#pragma once

#include <vector>

#include "lqsweep/hamiltonian.hpp"
#include "lqsweep/matrix.hpp"
#include "lqsweep/problem.hpp"

namespace lqsweep {

// State of the reduced factorization: three n x n flows instead of one
// 2n x 2n fundamental matrix (3n^2 vs 4n^2 integrated entries).
//
// Checked-in sign convention (normative: blocks_from_factors must reproduce
// fundamental_direct; the printed source formulas are inconsistent and are
// not followed literally):
//   psidot = (F - W R) psi,            psi(t0) = E
//   Wdot   = F W + W F' - W R W + G C^{-1} G',   W(t0) = 0
//   Vdot   = psi' R psi,               V(t0) = 0
// and the block reconstruction
//   PHI22 = (psi')^{-1}          PHI12 = -W (psi')^{-1}
//   PHI21 = -(psi')^{-1} V       PHI11 = psi + W (psi')^{-1} V.
// Closed-form checks: with F=0, G=R=C=1 this gives psi=sech t, W=tanh t,
// V=tanh t and blocks (cosh, -sinh, -sinh, cosh); with F=-1, R=0 it gives
// psi=e^{-t}, W=(1-e^{-2t})/2, V=0 and blocks (e^{-t}, -sinh t, 0, e^{t}).
struct PsiWvState {
  double t = 0.0;
  Matrix psi, w, v;
};

// Number of scalar entries each representation advances through the ODE
// integrator; the reduced factorization carries 3n^2, the direct fundamental
// matrix 4n^2.
constexpr long long factored_state_entries(int n) { return 3LL * n * n; }
constexpr long long direct_state_entries(int n) { return 4LL * n * n; }

// Co-integrates the three coupled flows on the grid with rk4_integrate over
// one stacked 3n x n state.  W blow-up (a Riccati-type escape) surfaces as
// NonFiniteState with the first bad node time.
std::vector<PsiWvState> integrate_psi_w_v(const LqProblem& p, const Grid& grid);

// Rebuilds the four fundamental blocks from one factorization state.
// Throws SingularMatrix when psi is near-singular (condition > 1e12); the
// direct integration remains available as a fallback.
FundamentalBlocks blocks_from_factors(const PsiWvState& s);

// Closed-form blocks for constant-coefficient problems with R = 0:
//   PHI11 = e^{F(t-t0)}, PHI21 = 0, PHI22 = e^{-F'(t-t0)},
//   PHI12 = W1 e^{-F'(t-t0)} - e^{F(t-t0)} W1,
// where W1 solves F W1 + W1 F' = G C^{-1} G'.  Throws PreconditionViolated
// for time-varying inputs or R != 0, SingularMatrix on a resonant spectrum.
FundamentalBlocks stationary_blocks(const LqProblem& p, double t);

}  // namespace lqsweep
