#include "doctest.h"
#include "lqsweep/errors.hpp"
#include "lqsweep/time_matrix.hpp"

using lqsweep::Interp;
using lqsweep::Matrix;
using lqsweep::TimeMatrix;

TEST_SUITE("time_matrix") {

TEST_CASE("constant") {
  const TimeMatrix c = TimeMatrix::constant(Matrix{{2.0, 0.0}, {0.0, 3.0}});
  CHECK(c.is_constant());
  CHECK(c.rows() == 2);
  CHECK(c.eval(-100.0)(1, 1) == 3.0);
  CHECK(c.eval(1e9)(0, 0) == 2.0);
  CHECK(c.covers(-5.0, 5.0));
}

TEST_CASE("linear interpolation") {
  const TimeMatrix f = TimeMatrix::sampled(
      {0.0, 1.0, 3.0}, {Matrix{{0.0}}, Matrix{{2.0}}, Matrix{{-2.0}}},
      Interp::Linear);
  CHECK_FALSE(f.is_constant());
  // exact at the sample nodes
  CHECK(f.eval(0.0)(0, 0) == 0.0);
  CHECK(f.eval(1.0)(0, 0) == 2.0);
  CHECK(f.eval(3.0)(0, 0) == -2.0);
  // linear between them
  CHECK(f.eval(0.5)(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f.eval(2.0)(0, 0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(f.eval(2.5)(0, 0) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("previous-sample interpolation") {
  const TimeMatrix f = TimeMatrix::sampled(
      {0.0, 1.0, 2.0}, {Matrix{{5.0}}, Matrix{{7.0}}, Matrix{{9.0}}},
      Interp::Previous);
  CHECK(f.eval(0.0)(0, 0) == 5.0);
  CHECK(f.eval(0.999)(0, 0) == 5.0);
  CHECK(f.eval(1.0)(0, 0) == 7.0);   // right-continuous at samples
  CHECK(f.eval(1.5)(0, 0) == 7.0);
  CHECK(f.eval(2.0)(0, 0) == 9.0);
}

TEST_CASE("domain and slack") {
  const TimeMatrix f = TimeMatrix::sampled(
      {0.0, 1.0}, {Matrix{{1.0}}, Matrix{{2.0}}}, Interp::Linear);
  CHECK(f.covers(0.0, 1.0));
  CHECK_FALSE(f.covers(0.0, 1.5));
  // endpoint roundoff within the slack is clamped, not rejected
  CHECK(f.eval(1.0 + 1e-13)(0, 0) == 2.0);
  CHECK(f.eval(-1e-13)(0, 0) == 1.0);
  CHECK_THROWS_AS(f.eval(1.1), lqsweep::OutOfRange);
  CHECK_THROWS_AS(f.eval(-0.1), lqsweep::OutOfRange);
}

TEST_CASE("construction rejects malformed samples") {
  CHECK_THROWS_WITH_AS(
      TimeMatrix::sampled({0.0, 0.0}, {Matrix{{1.0}}, Matrix{{2.0}}},
                          Interp::Linear),
      doctest::Contains("times not increasing"), lqsweep::ShapeError);
  CHECK_THROWS_AS(TimeMatrix::sampled({0.0, 1.0}, {Matrix{{1.0}}},
                                      Interp::Linear),
                  lqsweep::ShapeError);
  CHECK_THROWS_AS(
      TimeMatrix::sampled({0.0, 1.0}, {Matrix{{1.0}}, Matrix(2, 2)},
                          Interp::Linear),
      lqsweep::ShapeError);
}

}  // TEST_SUITE
