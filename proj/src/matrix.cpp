#include "lqsweep/matrix.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "lqsweep/kernels.hpp"

namespace lqsweep {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ShapeError(what);
}

}  // namespace

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  require(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
  data_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

Matrix::Matrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  require(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
  require(data_.size() == static_cast<std::size_t>(rows) * cols,
          "entry count does not match dimensions");
  if (!is_finite()) throw ShapeError("matrix entries must be finite");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  require(rows.size() > 0 && rows.begin()->size() > 0,
          "matrix dimensions must be positive");
  rows_ = static_cast<int>(rows.size());
  cols_ = static_cast<int>(rows.begin()->size());
  data_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    require(static_cast<int>(r.size()) == cols_, "ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  if (!is_finite()) throw ShapeError("matrix entries must be finite");
}

Matrix Matrix::identity(int n) {
  Matrix e(n, n);
  for (int i = 0; i < n; ++i) e(i, i) = 1.0;
  return e;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
  require(r0 >= 0 && c0 >= 0 && nr >= 1 && nc >= 1 && r0 + nr <= rows_ &&
              c0 + nc <= cols_,
          "block out of bounds");
  Matrix b(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(int r0, int c0, const Matrix& b) {
  require(r0 >= 0 && c0 >= 0 && r0 + b.rows() <= rows_ && c0 + b.cols() <= cols_,
          "block out of bounds");
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

bool Matrix::is_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

double Matrix::norm_fro() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double Matrix::norm_1() const {
  double best = 0.0;
  for (int j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (int i = 0; i < rows_; ++i) s += std::fabs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double Matrix::norm_inf() const {
  double best = 0.0;
  for (int i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (int j = 0; j < cols_; ++j) s += std::fabs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double Matrix::max_abs() const {
  double best = 0.0;
  for (double v : data_) best = std::max(best, std::fabs(v));
  return best;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "shape mismatch in +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "shape mismatch in -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

Matrix operator-(Matrix a) { return a *= -1.0; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("shape mismatch in matrix product");
  Matrix c(a.rows(), b.cols());
  kernels::gemm(a.rows(), b.cols(), a.cols(), a.data(), a.cols(), b.data(),
                b.cols(), c.data(), c.cols());
  return c;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ShapeError("hstack row mismatch");
  Matrix c(a.rows(), a.cols() + b.cols());
  c.set_block(0, 0, a);
  c.set_block(0, a.cols(), b);
  return c;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw ShapeError("vstack column mismatch");
  Matrix c(a.rows() + b.rows(), a.cols());
  c.set_block(0, 0, a);
  c.set_block(a.rows(), 0, b);
  return c;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      for (int p = 0; p < b.rows(); ++p)
        for (int q = 0; q < b.cols(); ++q)
          c(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return c;
}

Matrix vec_rm(const Matrix& a) {
  Matrix v(a.rows() * a.cols(), 1);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) v(i * a.cols() + j, 0) = a(i, j);
  return v;
}

Matrix unvec_rm(const Matrix& v, int rows, int cols) {
  if (v.cols() != 1 || v.rows() != rows * cols)
    throw ShapeError("unvec_rm shape mismatch");
  Matrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = v(i * cols + j, 0);
  return a;
}

Grid::Grid(double t_start_, double t_end_, int steps_)
    : t_start(t_start_), t_end(t_end_), steps(steps_) {
  if (!(t_start < t_end) || !std::isfinite(t_start) || !std::isfinite(t_end))
    throw ShapeError("grid needs t_start < t_end");
  if (steps < 1) throw ShapeError("grid needs at least one step");
}

}  // namespace lqsweep
