#include "lqsweep/zakhar_itkin.hpp"

#include "lqsweep/numerics.hpp"

namespace lqsweep {

std::vector<PsiWvState> integrate_psi_w_v(const LqProblem& p, const Grid& grid) {
  const int n = p.n;
  // stacked state [psi; W; V], 3n x n
  Matrix y0(3 * n, n);
  y0.set_block(0, 0, Matrix::identity(n));
  auto rhs = [&p, n](double t, const Matrix& y) {
    const Matrix psi = y.block(0, 0, n, n);
    const Matrix w = y.block(n, 0, n, n);
    const Matrix f = p.F.eval(t);
    const Matrix g = p.G.eval(t);
    const Matrix r = p.R.eval(t);
    const Matrix c = p.C.eval(t);
    const Matrix s = g * mat_solve(c, g.transpose());
    const Matrix wr = w * r;
    Matrix dy(3 * n, n);
    dy.set_block(0, 0, (f - wr) * psi);
    dy.set_block(n, 0, f * w + w * f.transpose() - wr * w + s);
    dy.set_block(2 * n, 0, psi.transpose() * (r * psi));
    return dy;
  };
  const std::vector<Matrix> states = rk4_integrate(rhs, y0, grid);
  std::vector<PsiWvState> out;
  out.reserve(states.size());
  for (int i = 0; i <= grid.steps; ++i)
    out.push_back({grid.node(i), states[i].block(0, 0, n, n),
                   states[i].block(n, 0, n, n), states[i].block(2 * n, 0, n, n)});
  return out;
}

FundamentalBlocks blocks_from_factors(const PsiWvState& s) {
  const int n = s.psi.rows();
  Matrix pt;  // (psi')^{-1}
  try {
    pt = mat_solve(s.psi.transpose(), Matrix::identity(n));
  } catch (const SingularMatrix& e) {
    throw SingularMatrix(std::string("factorization breakdown at t=") +
                         std::to_string(s.t) + ": " + e.what() +
                         "; the direct fundamental integration still applies");
  }
  FundamentalBlocks b;
  b.t = s.t;
  b.phi22 = pt;
  b.phi12 = -(s.w * pt);
  b.phi21 = -(pt * s.v);
  b.phi11 = s.psi - s.w * b.phi21;
  return b;
}

FundamentalBlocks stationary_blocks(const LqProblem& p, double t) {
  if (!p.F.is_constant() || !p.G.is_constant() || !p.C.is_constant())
    throw PreconditionViolated("stationary blocks need constant F, G, C");
  if (!p.R.is_constant() || p.R.constant_value().max_abs() != 0.0)
    throw PreconditionViolated("stationary blocks need R identically zero");
  const Matrix& f = p.F.constant_value();
  const Matrix& g = p.G.constant_value();
  const Matrix s = g * mat_solve(p.C.constant_value(), g.transpose());
  const Matrix w1 = lyapunov_solve(f, s);  // resonance -> SingularMatrix
  const double dt = t - p.t0;
  FundamentalBlocks b;
  b.t = t;
  b.phi11 = mat_expm(f * dt);
  b.phi22 = mat_expm(f.transpose() * (-dt));
  b.phi12 = w1 * b.phi22 - b.phi11 * w1;
  b.phi21 = Matrix(p.n, p.n);
  return b;
}

}  // namespace lqsweep
