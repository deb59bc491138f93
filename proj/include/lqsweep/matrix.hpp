#pragma once

#include <initializer_list>
#include <vector>

#include "lqsweep/errors.hpp"

namespace lqsweep {

// Dense real matrix, row-major storage.  Matrices built from user data are
// validated (shape positive, entries finite); results of arithmetic are not
// re-checked entry by entry, the integrators re-validate at their node
// boundaries instead.
class Matrix {
 public:
  Matrix() = default;  // empty sentinel, 0 x 0; not a valid operand
  Matrix(int rows, int cols);  // zero-filled
  Matrix(int rows, int cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }
  bool is_square() const { return rows_ == cols_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  Matrix transpose() const;
  Matrix block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const Matrix& b);

  bool is_finite() const;

  double norm_fro() const;
  double norm_1() const;    // max column sum
  double norm_inf() const;  // max row sum
  double max_abs() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);  // gemm, parallel above a size threshold

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

// Row-major flattening of a into an (a.rows*a.cols) x 1 column.
Matrix vec_rm(const Matrix& a);
// Inverse of vec_rm for a matrix of known shape.
Matrix unvec_rm(const Matrix& v, int rows, int cols);

// Uniform time grid over [t_start, t_end]; node(steps) is exactly t_end.
struct Grid {
  Grid(double t_start, double t_end, int steps);

  double t_start;
  double t_end;
  int steps;

  double h() const { return (t_end - t_start) / steps; }
  double node(int i) const { return i == steps ? t_end : t_start + i * h(); }
};

}  // namespace lqsweep
