#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lqsweep/matrix.hpp"
#include "lqsweep/time_matrix.hpp"

namespace lqsweep {

// One LQ problem instance: dynamics xdot = F(t)x + G(t)u on [t0, tau],
// coupled boundary rows Phi1 x(t0) - Phi2 x(tau) = q, and quadratic cost
// (1/2) integral of x'R(t)x + u'C(t)u.
struct LqProblem {
  int n = 0;
  int m = 0;
  int k = 0;
  double t0 = 0.0;
  double tau = 1.0;
  TimeMatrix F = TimeMatrix::constant(Matrix{{0.0}});
  TimeMatrix G = TimeMatrix::constant(Matrix{{0.0}});
  TimeMatrix R = TimeMatrix::constant(Matrix{{0.0}});
  TimeMatrix C = TimeMatrix::constant(Matrix{{1.0}});
  Matrix Phi1;  // k x n
  Matrix Phi2;  // k x n
  Matrix q;     // k x 1

  // Shape and coverage checks; throws ShapeError.
  void check_shapes() const;
};

enum class Severity { Error, Warning };

struct Finding {
  Severity severity;
  std::string message;
};

struct ValidationReport {
  bool ok = true;  // true iff no error-severity findings
  std::vector<Finding> findings;
  int bc_rank = 0;
  int bc_rank_augmented = 0;
  std::optional<double> gramian_min_eig;

  void add(Severity s, std::string message);
};

// Checks shapes, R/C symmetry and definiteness at `samples` equispaced
// times, boundary-row consistency (coefficient rank vs augmented rank), and
// reports the controllability margin.  Never throws: findings carry it all.
ValidationReport validate(const LqProblem& p, int samples = 21);

// W_c = int_{t0}^{tau} Psi(tau,s) G(s) G'(s) Psi'(tau,s) ds via co-integrated
// transition matrices and trapezoid quadrature on the shared RK4 grid.
Matrix controllability_gramian(const LqProblem& p, int steps);

// JSON problem document (schema in the README).
LqProblem parse_problem(const std::string& text);
std::string serialize_problem(const LqProblem& p);
LqProblem load_problem(const std::string& path);

}  // namespace lqsweep
