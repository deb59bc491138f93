#pragma once

// Low-level dense kernels.  The default entry points in lqsweep::kernels use
// OpenMP above a work threshold; lqsweep::kernels::serial holds the plain
// reference loops the tests and the benchmark compare against.  Both paths
// perform the same floating-point operations in the same order per output
// entry, so results agree bit for bit regardless of thread count.

namespace lqsweep::kernels {

// Work threshold (multiply-adds) below which the parallel entry points stay
// on the calling thread; tiny operands dominate this library's inner loops.
inline constexpr long long kOmpMinWork = 1 << 15;

// c (m x n) -= a (m x kk) * b (kk x n); row-major with leading dimensions.
void gemm_sub(int m, int n, int kk, const double* a, int lda, const double* b,
              int ldb, double* c, int ldc);

// c (m x n) = a (m x kk) * b (kk x n), overwriting c.
void gemm(int m, int n, int kk, const double* a, int lda, const double* b,
          int ldb, double* c, int ldc);

// In-place LU with partial pivoting, PA = LU; piv[k] is the row exchanged
// with row k at step k.  Returns 0 on success or 1 + (first column with an
// exact zero pivot); factorization past that column is not usable.
int lu_factor(int n, double* a, int lda, int* piv);

// Solve op(A) X = B in place given the factors; B is n x nrhs row-major.
void lu_solve(int n, const double* lu, int lda, const int* piv, double* b,
              int nrhs, int ldb);
void lu_solve_transposed(int n, const double* lu, int lda, const int* piv,
                         double* b, int nrhs, int ldb);

namespace serial {

void gemm_sub(int m, int n, int kk, const double* a, int lda, const double* b,
              int ldb, double* c, int ldc);
void gemm(int m, int n, int kk, const double* a, int lda, const double* b,
          int ldb, double* c, int ldc);
int lu_factor(int n, double* a, int lda, int* piv);
void lu_solve(int n, const double* lu, int lda, const int* piv, double* b,
              int nrhs, int ldb);
void lu_solve_transposed(int n, const double* lu, int lda, const int* piv,
                         double* b, int nrhs, int ldb);

}  // namespace serial

}  // namespace lqsweep::kernels
