#include "lqsweep/oracle_compare.hpp"

#include <algorithm>
#include <cmath>

namespace lqsweep {

namespace {

// Oracle state at time t, linear in the panel containing t.  When both grids
// coincide node-for-node the caller passes the node index instead so equal
// inputs report exactly zero distance.
Matrix interp(const std::vector<Matrix>& vals, const Grid& g, double t) {
  double s = (t - g.t_start) / g.h();
  int i = static_cast<int>(std::floor(s));
  i = std::clamp(i, 0, g.steps - 1);
  const double th = std::clamp(s - i, 0.0, 1.0);
  return (1.0 - th) * vals[i] + th * vals[i + 1];
}

}  // namespace

CompareReport compare(const Solution& sol, const OracleSolution& osol) {
  CompareReport rep;
  rep.cost_rel_diff =
      std::abs(sol.cost - osol.cost) / std::max(1.0, std::abs(osol.cost));

  const bool same_grid = sol.grid.steps == osol.grid.steps &&
                         sol.grid.t_start == osol.grid.t_start &&
                         sol.grid.t_end == osol.grid.t_end;
  for (int i = 0; i <= sol.grid.steps; ++i) {
    const double t = sol.grid.node(i);
    const Matrix xo = same_grid ? osol.x[i] : interp(osol.x, osol.grid, t);
    const Matrix uo = same_grid ? osol.u[i] : interp(osol.u, osol.grid, t);
    rep.x_sup_diff = std::max(rep.x_sup_diff, (sol.x[i] - xo).max_abs());
    rep.u_sup_diff = std::max(rep.u_sup_diff, (sol.u[i] - uo).max_abs());
  }
  return rep;
}

}  // namespace lqsweep
