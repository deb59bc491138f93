#include <cmath>

#include "doctest.h"
#include "lqsweep/hamiltonian.hpp"
#include "support.hpp"

using lqsweep::FundamentalBlocks;
using lqsweep::Grid;
using lqsweep::Matrix;

TEST_SUITE("hamiltonian") {

TEST_CASE("assembled system matrix") {
  // F=0, G=R=C=1: H = [[0, -1], [-1, 0]]
  const Matrix h = lqsweep::assemble_h(lqtest::p1(), 0.5);
  CHECK((h - Matrix{{0.0, -1.0}, {-1.0, 0.0}}).max_abs() == 0.0);

  // F=-1, R=0: H = [[-1, -1], [0, 1]]
  const Matrix h2 = lqsweep::assemble_h(lqtest::p2(), 0.5);
  CHECK((h2 - Matrix{{-1.0, -1.0}, {0.0, 1.0}}).max_abs() == 0.0);
}

TEST_CASE("structure matrix and the symmetry residual") {
  const Matrix j = lqsweep::j_matrix(2);
  CHECK((j * j + Matrix::identity(4)).max_abs() == 0.0);
  CHECK((j + j.transpose()).max_abs() == 0.0);

  // a genuine system matrix has an exactly symmetric J H
  CHECK(lqsweep::hamiltonian_residual(lqsweep::assemble_h(lqtest::p1(), 0.0)) ==
        0.0);
  // the identity is maximally non-Hamiltonian at this size: residual 1
  CHECK(lqsweep::hamiltonian_residual(Matrix::identity(2)) ==
        doctest::Approx(1.0));
}

TEST_CASE("transition blocks for the hyperbolic flow") {
  // P1: the flow of [[0,-1],[-1,0]] is [[cosh, -sinh], [-sinh, cosh]]
  const auto traj =
      lqsweep::fundamental_direct(lqtest::p1(), Grid(0.0, 1.0, 2000));
  REQUIRE(traj.blocks.size() == 2001);
  const FundamentalBlocks& b0 = traj.blocks.front();
  CHECK((b0.phi11 - Matrix::identity(1)).max_abs() == 0.0);
  CHECK(b0.phi12.max_abs() == 0.0);

  const FundamentalBlocks& bt = traj.at_tau();
  CHECK(bt.t == 1.0);
  CHECK(bt.phi11(0, 0) == doctest::Approx(lqtest::kCosh1).epsilon(1e-12));
  CHECK(bt.phi12(0, 0) == doctest::Approx(-lqtest::kSinh1).epsilon(1e-12));
  CHECK(bt.phi21(0, 0) == doctest::Approx(-lqtest::kSinh1).epsilon(1e-12));
  CHECK(bt.phi22(0, 0) == doctest::Approx(lqtest::kCosh1).epsilon(1e-12));
}

TEST_CASE("transition blocks for the uncoupled flow") {
  // P2 (R=0): PHI11 = e^{-t}, PHI12 = -sinh t, PHI21 = 0, PHI22 = e^{t}
  const auto traj =
      lqsweep::fundamental_direct(lqtest::p2(), Grid(0.0, 1.0, 2000));
  const FundamentalBlocks& bt = traj.at_tau();
  CHECK(bt.phi11(0, 0) == doctest::Approx(lqtest::kExpM1).epsilon(1e-12));
  CHECK(bt.phi12(0, 0) == doctest::Approx(-lqtest::kSinh1).epsilon(1e-12));
  CHECK(std::abs(bt.phi21(0, 0)) < 1e-14);
  CHECK(bt.phi22(0, 0) == doctest::Approx(1.0 / lqtest::kExpM1).epsilon(1e-12));
}

TEST_CASE("integrated flow stays symplectic") {
  std::mt19937_64 rng(2024u);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = lqtest::random_problem(rng, trial % 2 == 1);
    const auto traj = lqsweep::fundamental_direct(p, Grid(p.t0, p.tau, 400));
    double worst = 0.0;
    for (const auto& b : traj.blocks)
      worst = std::max(worst, lqsweep::symplectic_residual(b));
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("symplectic residual detects a broken block") {
  const auto traj =
      lqsweep::fundamental_direct(lqtest::p1(), Grid(0.0, 1.0, 100));
  FundamentalBlocks b = traj.at_tau();
  CHECK(lqsweep::symplectic_residual(b) < 1e-10);
  b.phi11(0, 0) += 0.1;
  CHECK(lqsweep::symplectic_residual(b) > 0.01);
}

TEST_CASE("block packing round trip") {
  const auto traj =
      lqsweep::fundamental_direct(lqtest::p2(), Grid(0.0, 1.0, 50));
  const FundamentalBlocks& b = traj.at_tau();
  const Matrix full = lqsweep::blocks_to_matrix(b);
  CHECK(full.rows() == 2);
  CHECK(full(0, 0) == b.phi11(0, 0));
  CHECK(full(0, 1) == b.phi12(0, 0));
  const FundamentalBlocks back = lqsweep::blocks_from_matrix(b.t, full);
  CHECK((back.phi22 - b.phi22).max_abs() == 0.0);
  CHECK(back.t == b.t);
}

}  // TEST_SUITE
