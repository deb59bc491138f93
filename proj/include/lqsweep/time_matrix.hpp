#pragma once

#include <vector>

#include "lqsweep/matrix.hpp"

namespace lqsweep {

enum class Interp { Linear, Previous };

// Matrix-valued function of time: either a constant or a sampled grid with
// linear or piecewise-constant (previous-sample) interpolation.  Sampled
// coverage must include the problem interval; eval throws OutOfRange beyond
// it (with a tiny slack for grid-endpoint roundoff).
class TimeMatrix {
 public:
  static TimeMatrix constant(Matrix value);
  static TimeMatrix sampled(std::vector<double> times, std::vector<Matrix> values,
                            Interp interp);

  bool is_constant() const { return constant_; }
  Interp interp() const { return interp_; }
  int rows() const { return values_.front().rows(); }
  int cols() const { return values_.front().cols(); }

  const Matrix& constant_value() const;           // Constant kind only
  const std::vector<double>& times() const { return times_; }
  const std::vector<Matrix>& values() const { return values_; }

  Matrix eval(double t) const;
  bool covers(double a, double b) const;

 private:
  TimeMatrix() = default;

  bool constant_ = true;
  Interp interp_ = Interp::Linear;
  std::vector<double> times_;   // empty for Constant
  std::vector<Matrix> values_;  // single entry for Constant
};

inline Matrix eval_time_matrix(const TimeMatrix& tm, double t) { return tm.eval(t); }

}  // namespace lqsweep
