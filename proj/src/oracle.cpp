#include "lqsweep/oracle.hpp"

#include <cmath>
#include <string>

#include "lqsweep/kernels.hpp"
#include "lqsweep/numerics.hpp"

namespace lqsweep {

OracleSolution oracle_solve(const LqProblem& p, int N) {
  p.check_shapes();
  if (N < 10) throw PreconditionViolated("oracle: N must be at least 10");
  if (1LL * N * (p.n + p.m) > 20000)
    throw PreconditionViolated("oracle: N (n + m) exceeds the 2e4 dense-solve cap");

  const int n = p.n;
  const int m = p.m;
  const int k = p.k;
  const Grid grid(p.t0, p.tau, N);
  const double h = grid.h();

  const int nz = (N + 1) * (n + m);        // x_0..x_N then u_0..u_N
  const int nc = N * n + k;                // collocation + boundary rows
  const int dim = nz + nc;
  const auto xoff = [n](int i) { return i * n; };
  const auto uoff = [&](int i) { return (N + 1) * n + i * m; };

  Matrix kkt(dim, dim);
  Matrix rhs(dim, 1);

  // cost blocks: J = 1/2 z' Q z with trapezoid weights on R and C
  for (int i = 0; i <= N; ++i) {
    const double t = grid.node(i);
    const double w = (i == 0 || i == N) ? 0.5 * h : h;
    const Matrix rq = w * p.R.eval(t);
    const Matrix cq = w * p.C.eval(t);
    kkt.set_block(xoff(i), xoff(i), rq);
    kkt.set_block(uoff(i), uoff(i), cq);
  }

  // constraint rows, mirrored into the upper-right block for symmetry
  auto put = [&](int row, int col, const Matrix& b) {
    kkt.set_block(nz + row, col, b);
    kkt.set_block(col, nz + row, b.transpose());
  };
  const Matrix eye = Matrix::identity(n);
  for (int i = 0; i < N; ++i) {
    const double ti = grid.node(i);
    const double tn = grid.node(i + 1);
    put(i * n, xoff(i), -eye - (0.5 * h) * p.F.eval(ti));
    put(i * n, xoff(i + 1), eye - (0.5 * h) * p.F.eval(tn));
    put(i * n, uoff(i), (-0.5 * h) * p.G.eval(ti));
    put(i * n, uoff(i + 1), (-0.5 * h) * p.G.eval(tn));
  }
  put(N * n, xoff(0), p.Phi1);
  put(N * n, xoff(N), -p.Phi2);
  rhs.set_block(nz + N * n, 0, p.q);

  Matrix sol;
  try {
    sol = mat_solve(kkt, rhs);
  } catch (const SingularMatrix& e) {
    throw SingularMatrix(std::string("oracle: degenerate transcription QP: ") +
                         e.what());
  }

  // relative residual of the full KKT solve
  Matrix resid(dim, 1);
  kernels::gemm(dim, 1, dim, kkt.data(), dim, sol.data(), 1, resid.data(), 1);
  resid -= rhs;
  const double rel =
      resid.max_abs() / (1.0 + rhs.max_abs() + sol.max_abs());

  OracleSolution out{grid, {}, {}, 0.0, rel};
  out.x.reserve(N + 1);
  out.u.reserve(N + 1);
  for (int i = 0; i <= N; ++i) {
    out.x.push_back(sol.block(xoff(i), 0, n, 1));
    out.u.push_back(sol.block(uoff(i), 0, m, 1));
  }
  for (int i = 0; i <= N; ++i) {
    const double t = grid.node(i);
    const double w = (i == 0 || i == N) ? 0.5 * h : h;
    const Matrix xr = out.x[i].transpose() * (p.R.eval(t) * out.x[i]);
    const Matrix uc = out.u[i].transpose() * (p.C.eval(t) * out.u[i]);
    out.cost += w * 0.5 * (xr(0, 0) + uc(0, 0));
  }
  return out;
}

}  // namespace lqsweep
