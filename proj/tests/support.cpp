#include "support.hpp"

#include <cmath>

#include "lqsweep/errors.hpp"
#include "lqsweep/numerics.hpp"
#include "lqsweep/sweep.hpp"

namespace lqtest {

using lqsweep::LqProblem;
using lqsweep::Matrix;
using lqsweep::TimeMatrix;

LqProblem p1() {
  LqProblem p;
  p.n = p.m = p.k = 1;
  p.t0 = 0.0;
  p.tau = 1.0;
  p.F = TimeMatrix::constant(Matrix{{0.0}});
  p.G = TimeMatrix::constant(Matrix{{1.0}});
  p.R = TimeMatrix::constant(Matrix{{1.0}});
  p.C = TimeMatrix::constant(Matrix{{1.0}});
  p.Phi1 = Matrix{{1.0}};
  p.Phi2 = Matrix{{1.0}};
  p.q = Matrix{{1.0}};
  return p;
}

LqProblem p2() {
  LqProblem p;
  p.n = p.m = 1;
  p.k = 2;
  p.t0 = 0.0;
  p.tau = 1.0;
  p.F = TimeMatrix::constant(Matrix{{-1.0}});
  p.G = TimeMatrix::constant(Matrix{{1.0}});
  p.R = TimeMatrix::constant(Matrix{{0.0}});
  p.C = TimeMatrix::constant(Matrix{{1.0}});
  p.Phi1 = Matrix{{1.0}, {0.0}};
  p.Phi2 = Matrix{{0.0}, {-1.0}};
  p.q = Matrix{{1.0}, {1.0}};
  return p;
}

LqProblem p3() {
  LqProblem p = p1();
  p.q = Matrix{{0.0}};
  return p;
}

namespace {

Matrix rand_mat(std::mt19937_64& rng, int r, int c, double scale) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Matrix out(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) out(i, j) = dist(rng);
  return out;
}

// L L' / n + ridge E: symmetric, eigenvalues >= ridge
Matrix rand_spd(std::mt19937_64& rng, int n, double ridge) {
  const Matrix l = rand_mat(rng, n, n, 1.0);
  Matrix out = l * l.transpose();
  out *= 1.0 / n;
  out += ridge * Matrix::identity(n);
  return out;
}

}  // namespace

namespace {

LqProblem raw_random_problem(std::mt19937_64& rng, bool time_varying) {
  LqProblem p;
  p.n = std::uniform_int_distribution<int>(1, 4)(rng);
  p.m = std::uniform_int_distribution<int>(1, 3)(rng);
  p.k = std::uniform_int_distribution<int>(1, 2 * p.n)(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  p.t0 = 0.5 * (unit(rng) - 0.5);
  p.tau = p.t0 + 0.6 + 0.4 * unit(rng);

  // Scales keep ||H|| around 1-3 so the horizon stays clear of focal points
  // and the trapezoid cost quadrature stays well under the duality-gap
  // tolerances at 2000 panels.
  auto coeff = [&](int r, int c, bool spd, double ridge, double scale) {
    if (!time_varying) {
      return TimeMatrix::constant(spd ? rand_spd(rng, r, ridge)
                                      : rand_mat(rng, r, c, scale));
    }
    std::vector<double> times{p.t0, 0.5 * (p.t0 + p.tau), p.tau};
    std::vector<Matrix> values;
    for (int s = 0; s < 3; ++s)
      values.push_back(spd ? rand_spd(rng, r, ridge)
                           : rand_mat(rng, r, c, scale));
    return TimeMatrix::sampled(std::move(times), std::move(values),
                               lqsweep::Interp::Linear);
  };

  p.F = coeff(p.n, p.n, false, 0.0, 0.5);
  p.G = coeff(p.n, p.m, false, 0.0, 0.6);
  p.R = coeff(p.n, p.n, true, 0.05, 1.0);
  p.C = coeff(p.m, p.m, true, 0.4, 1.0);
  p.Phi1 = rand_mat(rng, p.k, p.n, 1.0);
  p.Phi2 = rand_mat(rng, p.k, p.n, 1.0);
  p.q = rand_mat(rng, p.k, 1, 1.0);
  return p;
}

}  // namespace

LqProblem random_problem(std::mt19937_64& rng, bool time_varying) {
  // Absolute diagnostic tolerances (duality gap, cross-method distances)
  // presume O(1) solutions, so normalize each draw: reject near-ill-posed
  // geometry (ill-conditioned missing-data matrix), then shrink q until the
  // probe solution is O(1).  Scaling q by s scales nu, x, u by s and the
  // cost by s^2 exactly, so the rescaled instance stays on the same
  // trajectory family.
  for (;;) {
    LqProblem p = raw_random_problem(rng, time_varying);
    lqsweep::PipelineOptions probe;
    probe.steps = 200;
    try {
      const lqsweep::PipelineResult res = lqsweep::solve_pipeline(p, probe);
      if (lqsweep::condition_estimate(res.system.d) > 1e4) continue;
      double s = 1.0;
      const double cost = res.solution.cost;
      const double nu = res.solution.nu.max_abs();
      if (cost > 0.3) s = std::min(s, std::sqrt(0.3 / cost));
      if (nu > 2.0) s = std::min(s, 2.0 / nu);
      if (s < 1.0) p.q *= s;
      return p;
    } catch (const lqsweep::SolverError&) {
      continue;  // singular or escaping draw: resample
    }
  }
}

LqProblem random_stationary_problem(std::mt19937_64& rng) {
  LqProblem p;
  p.n = std::uniform_int_distribution<int>(1, 4)(rng);
  p.m = std::uniform_int_distribution<int>(1, 3)(rng);
  p.k = std::uniform_int_distribution<int>(1, 2 * p.n)(rng);
  p.t0 = 0.0;
  p.tau = 1.0;

  // shift a random matrix left of the imaginary axis: eigenvalues of
  // A - (||A||_inf + 1) E have real part <= -1
  Matrix f = rand_mat(rng, p.n, p.n, 1.0);
  f -= (f.norm_inf() + 1.0) * Matrix::identity(p.n);
  p.F = TimeMatrix::constant(f);
  p.G = TimeMatrix::constant(rand_mat(rng, p.n, p.m, 1.0));
  p.R = TimeMatrix::constant(Matrix(p.n, p.n));
  p.C = TimeMatrix::constant(rand_spd(rng, p.m, 0.3));
  p.Phi1 = rand_mat(rng, p.k, p.n, 1.0);
  p.Phi2 = rand_mat(rng, p.k, p.n, 1.0);
  p.q = rand_mat(rng, p.k, 1, 1.0);
  return p;
}

}  // namespace lqtest
