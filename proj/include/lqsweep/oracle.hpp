#pragma once

#include <vector>

#include "lqsweep/matrix.hpp"
#include "lqsweep/problem.hpp"

namespace lqsweep {

// Direct-transcription result.  This translation unit is deliberately
// independent of the fundamental-matrix machinery: it sees only the matrix,
// numerics, and problem headers, a direction the tests check against the
// sources.  The comparison helper lives in oracle_compare.hpp.
struct OracleSolution {
  Grid grid;
  std::vector<Matrix> x;  // n x 1 per node
  std::vector<Matrix> u;  // m x 1 per node
  double cost = 0.0;
  double kkt_residual = 0.0;
};

// Discretizes on N panels with trapezoidal collocation and trapezoid cost,
// then solves the equality-constrained QP through its dense KKT system
//   [Q A'; A 0] [z; mu] = [0; b].
// Caps N (n + m) at 2e4; PreconditionViolated above it or for N < 10.
OracleSolution oracle_solve(const LqProblem& p, int N);

}  // namespace lqsweep
