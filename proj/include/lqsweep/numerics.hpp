#pragma once

#include <functional>
#include <vector>

#include "lqsweep/matrix.hpp"

namespace lqsweep {

// LU factorization with partial pivoting, kept around so the condition
// estimate and repeated solves reuse one factorization.
class LuFactors {
 public:
  explicit LuFactors(const Matrix& a);  // a square

  bool exactly_singular() const { return info_ != 0; }
  // Hager-style 1-norm condition estimate; 1e308 when exactly singular.
  double condition_estimate() const;
  double determinant() const;

  Matrix solve(const Matrix& b) const;             // A X = B
  Matrix solve_transposed(const Matrix& b) const;  // A' X = B

 private:
  int n_;
  int info_;
  double norm1_a_;
  Matrix lu_;
  std::vector<int> piv_;
};

// Solve A X = B.  Throws SingularMatrix on an exact zero pivot or when the
// condition estimate exceeds 1e12; there is no least-squares fallback.
Matrix mat_solve(const Matrix& a, const Matrix& b);

// 1-norm condition estimate of a square matrix; always >= 1, 1e308 stands in
// for an exactly singular input.
double condition_estimate(const Matrix& a);

double determinant(const Matrix& a);

// Matrix exponential by scaling and squaring around a degree-13 Pade kernel.
Matrix mat_expm(const Matrix& a);

// Classical fixed-step fourth-order Runge-Kutta for a matrix-valued state.
// Returns the states at all grid nodes (steps + 1 entries).  Throws
// NonFiniteState naming the first bad node time.
using OdeRhs = std::function<Matrix(double, const Matrix&)>;
std::vector<Matrix> rk4_integrate(const OdeRhs& rhs, const Matrix& y0,
                                  const Grid& grid);

// Solve F W + W F' = S by vectorizing to an n^2 x n^2 system (row-major
// convention: vec(F W + W F') = (F (x) I + I (x) F) vec(W)).  S must be
// symmetric; a resonant spectrum surfaces as SingularMatrix through the
// conditioning guard.  Intended for n <= 50.
Matrix lyapunov_solve(const Matrix& f, const Matrix& s);

// Quadrature companion of lyapunov_solve for Hurwitz F:
//   W = -int_0^horizon e^{F t} S e^{F' t} dt   (trapezoid, `steps` panels).
// Throws NotHurwitz unless ||e^{F horizon}|| < 1e-8.
Matrix lyapunov_integral(const Matrix& f, const Matrix& s, double horizon,
                         int steps);

// Eigenvalues of a symmetric matrix by cyclic Jacobi, ascending.
std::vector<double> sym_eigvals(const Matrix& a);

// Rank by Gaussian elimination with complete pivoting; entries below
// 1e-10 * max|a| count as zero.
int rank_estimate(const Matrix& a);

}  // namespace lqsweep
