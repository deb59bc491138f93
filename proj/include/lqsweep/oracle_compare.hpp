#pragma once

#include "lqsweep/oracle.hpp"
#include "lqsweep/sweep.hpp"

namespace lqsweep {

struct CompareReport {
  double cost_rel_diff = 0.0;  // |J_sweep - J_oracle| / max(1, |J_oracle|)
  double x_sup_diff = 0.0;
  double u_sup_diff = 0.0;
};

// Entrywise sup distances between a solver trajectory and the oracle, with
// the oracle linearly interpolated onto the solution grid.
CompareReport compare(const Solution& sol, const OracleSolution& osol);

}  // namespace lqsweep
