#include "lqsweep/time_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lqsweep {

TimeMatrix TimeMatrix::constant(Matrix value) {
  if (value.empty()) throw ShapeError("constant TimeMatrix needs a value");
  TimeMatrix tm;
  tm.constant_ = true;
  tm.values_.push_back(std::move(value));
  return tm;
}

TimeMatrix TimeMatrix::sampled(std::vector<double> times,
                               std::vector<Matrix> values, Interp interp) {
  if (times.empty() || times.size() != values.size())
    throw ShapeError("sampled TimeMatrix needs matching times and values");
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    if (!(times[i] < times[i + 1]))
      throw ShapeError("sampled TimeMatrix times not increasing");
  for (const auto& v : values)
    if (v.rows() != values.front().rows() || v.cols() != values.front().cols())
      throw ShapeError("sampled TimeMatrix values have mixed shapes");
  TimeMatrix tm;
  tm.constant_ = false;
  tm.interp_ = interp;
  tm.times_ = std::move(times);
  tm.values_ = std::move(values);
  return tm;
}

const Matrix& TimeMatrix::constant_value() const {
  if (!constant_) throw ShapeError("constant_value on a sampled TimeMatrix");
  return values_.front();
}

bool TimeMatrix::covers(double a, double b) const {
  if (constant_) return true;
  return times_.front() <= a && b <= times_.back();
}

Matrix TimeMatrix::eval(double t) const {
  if (constant_) return values_.front();
  const double lo = times_.front();
  const double hi = times_.back();
  // slack absorbs last-node roundoff from grid arithmetic, nothing more
  const double slack = 1e-12 * (1.0 + std::max(std::fabs(lo), std::fabs(hi)));
  if (t < lo - slack || t > hi + slack)
    throw OutOfRange("TimeMatrix: t=" + std::to_string(t) +
                     " outside sampled range [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  t = std::clamp(t, lo, hi);
  // first sample with time > t, so idx points at the latest time <= t
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t idx = (it == times_.begin()) ? 0 : (it - times_.begin() - 1);
  if (interp_ == Interp::Previous) return values_[idx];
  if (idx + 1 >= times_.size()) return values_.back();
  const double span = times_[idx + 1] - times_[idx];
  const double theta = (t - times_[idx]) / span;
  if (theta == 0.0) return values_[idx];
  return (1.0 - theta) * values_[idx] + theta * values_[idx + 1];
}

}  // namespace lqsweep
