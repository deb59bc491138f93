#pragma once

#include <vector>

#include "lqsweep/matrix.hpp"
#include "lqsweep/problem.hpp"

namespace lqsweep {

// The four n x n blocks of the 2n x 2n fundamental matrix at one time.
struct FundamentalBlocks {
  double t = 0.0;
  Matrix phi11, phi12, phi21, phi22;
};

// Blocks at every node of a grid spanning [t0, tau].
struct BlockTrajectory {
  Grid grid;
  std::vector<FundamentalBlocks> blocks;  // grid.steps + 1 entries

  const FundamentalBlocks& at_tau() const { return blocks.back(); }
};

// H(t) = [[F, -G C^{-1} G'], [-R, -F']]; the coefficient matrix of the
// combined state/costate dynamics.  J H is symmetric for symmetric R, C.
Matrix assemble_h(const LqProblem& p, double t);

// J = [[0, E], [-E, 0]] of size 2n.
Matrix j_matrix(int n);

// ||J H - (J H)'|| / (1 + ||H||) in the entrywise max norm.
double hamiltonian_residual(const Matrix& h);

// Integrates PHIdot = H(t) PHI, PHI(t0) = E, with RK4 on the given grid and
// splits each node into blocks.
BlockTrajectory fundamental_direct(const LqProblem& p, const Grid& grid);

// Worst Frobenius-norm violation of the four block identities equivalent to
// PHI J PHI' = J:
//   PHI22 PHI11' - PHI21 PHI12' = E        PHI11 PHI22' - PHI12 PHI21' = E
//   PHI22 PHI21' = PHI21 PHI22'            PHI11 PHI12' = PHI12 PHI11'
double symplectic_residual(const FundamentalBlocks& b);

// Convenience: 2n x 2n matrix from blocks and back.
Matrix blocks_to_matrix(const FundamentalBlocks& b);
FundamentalBlocks blocks_from_matrix(double t, const Matrix& phi);

}  // namespace lqsweep
