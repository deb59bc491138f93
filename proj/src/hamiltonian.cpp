#include "lqsweep/hamiltonian.hpp"

#include "lqsweep/numerics.hpp"

namespace lqsweep {

Matrix assemble_h(const LqProblem& p, double t) {
  const int n = p.n;
  const Matrix f = p.F.eval(t);
  const Matrix g = p.G.eval(t);
  const Matrix r = p.R.eval(t);
  const Matrix c = p.C.eval(t);
  // S = G C^{-1} G' via one solve; C is SPD on validated problems
  const Matrix s = g * mat_solve(c, g.transpose());
  Matrix h(2 * n, 2 * n);
  h.set_block(0, 0, f);
  h.set_block(0, n, -s);
  h.set_block(n, 0, -r);
  h.set_block(n, n, -f.transpose());
  return h;
}

Matrix j_matrix(int n) {
  if (n < 1) throw ShapeError("j_matrix needs n >= 1");
  Matrix j(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    j(i, n + i) = 1.0;
    j(n + i, i) = -1.0;
  }
  return j;
}

double hamiltonian_residual(const Matrix& h) {
  if (!h.is_square() || h.rows() % 2 != 0)
    throw ShapeError("hamiltonian_residual needs an even square matrix");
  const Matrix jh = j_matrix(h.rows() / 2) * h;
  const Matrix gap = jh - jh.transpose();
  return gap.max_abs() / (1.0 + h.max_abs());
}

BlockTrajectory fundamental_direct(const LqProblem& p, const Grid& grid) {
  const int n = p.n;
  auto rhs = [&p](double t, const Matrix& y) { return assemble_h(p, t) * y; };
  const std::vector<Matrix> states =
      rk4_integrate(rhs, Matrix::identity(2 * n), grid);
  BlockTrajectory traj{grid, {}};
  traj.blocks.reserve(states.size());
  for (int i = 0; i <= grid.steps; ++i)
    traj.blocks.push_back(blocks_from_matrix(grid.node(i), states[i]));
  return traj;
}

double symplectic_residual(const FundamentalBlocks& b) {
  const int n = b.phi11.rows();
  const Matrix eye = Matrix::identity(n);
  const double r1 = (b.phi22 * b.phi11.transpose() -
                     b.phi21 * b.phi12.transpose() - eye).norm_fro();
  const double r2 = (b.phi22 * b.phi21.transpose() -
                     b.phi21 * b.phi22.transpose()).norm_fro();
  const double r3 = (b.phi11 * b.phi12.transpose() -
                     b.phi12 * b.phi11.transpose()).norm_fro();
  const double r4 = (b.phi11 * b.phi22.transpose() -
                     b.phi12 * b.phi21.transpose() - eye).norm_fro();
  return std::max(std::max(r1, r2), std::max(r3, r4));
}

Matrix blocks_to_matrix(const FundamentalBlocks& b) {
  const int n = b.phi11.rows();
  Matrix phi(2 * n, 2 * n);
  phi.set_block(0, 0, b.phi11);
  phi.set_block(0, n, b.phi12);
  phi.set_block(n, 0, b.phi21);
  phi.set_block(n, n, b.phi22);
  return phi;
}

FundamentalBlocks blocks_from_matrix(double t, const Matrix& phi) {
  if (!phi.is_square() || phi.rows() % 2 != 0)
    throw ShapeError("fundamental matrix must be 2n x 2n");
  const int n = phi.rows() / 2;
  return {t, phi.block(0, 0, n, n), phi.block(0, n, n, n),
          phi.block(n, 0, n, n), phi.block(n, n, n, n)};
}

}  // namespace lqsweep
