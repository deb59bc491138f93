#pragma once

#include <random>

#include "lqsweep/problem.hpp"

// Canonical desk-scale problems with closed-form solutions, used across the
// unit suites and the acceptance run, plus a deterministic random-problem
// generator for the property checks.
namespace lqtest {

// frozen hyperbolic/exponential constants the closed forms reduce to
inline constexpr double kCosh1 = 1.5430806348152437;
inline constexpr double kSinh1 = 1.1752011936438014;
inline constexpr double kTanh1 = 0.7615941559557649;
inline constexpr double kSech1 = 0.6480542736638855;
inline constexpr double kExpM1 = 0.36787944117144233;    // e^{-1}
inline constexpr double kHalf1ME2 = 0.43233235838169365;  // (1 - e^{-2})/2
inline constexpr double kTanhHalf = 0.46211715726000974;  // tanh(1/2)

// P1: scalar, F=0, G=R=C=1 on [0,1], boundary row x(0) - x(1) = 1.
lqsweep::LqProblem p1();
// P2: scalar minimum-energy transfer, F=-1, R=0, rows x(0)=1 and x(1)=1.
lqsweep::LqProblem p2();
// P3: P1 with q = 0; the zero trajectory is optimal.
lqsweep::LqProblem p3();

// closed-form P1 endpoint data: x0 = 1/2, nu below, J = -nu/2
inline double p1_nu() { return -kTanh1 / (2.0 * (1.0 - kSech1)); }
inline double p1_cost() { return -0.5 * p1_nu(); }

// closed-form P2 data: x0 = 1, u(t) = nu1 e^t, J = tanh(1/2)
inline double p2_nu1() { return 1.0 - kTanhHalf; }
inline double p2_nu2() { return -1.0 - kTanhHalf; }

// Random well-posed instance: n in 1..4, k <= 2n, R PSD, C PD, generic
// full-rank boundary rows.  time_varying switches every coefficient to a
// three-sample linear interpolant whose middle sample sits at the midpoint,
// so even step counts keep the integrand smooth inside every panel.
lqsweep::LqProblem random_problem(std::mt19937_64& rng, bool time_varying);

// Same but constant-coefficient with R = 0 and a spectral-shifted Hurwitz F
// (used by the stationary-path checks).
lqsweep::LqProblem random_stationary_problem(std::mt19937_64& rng);

}  // namespace lqtest
