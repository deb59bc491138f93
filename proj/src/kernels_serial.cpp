#include "lqsweep/kernels.hpp"

#include <algorithm>
#include <cmath>

// Reference kernels: unblocked, single-threaded, no dispatch.  These define
// the numerical behaviour the parallel entry points must reproduce exactly.

namespace lqsweep::kernels::serial {

void gemm(int m, int n, int kk, const double* a, int lda, const double* b,
          int ldb, double* c, int ldc) {
  for (int i = 0; i < m; ++i) {
    const double* ai = a + static_cast<std::size_t>(i) * lda;
    double* ci = c + static_cast<std::size_t>(i) * ldc;
    for (int j = 0; j < n; ++j) ci[j] = 0.0;
    for (int p = 0; p < kk; ++p) {
      const double aip = ai[p];
      const double* bp = b + static_cast<std::size_t>(p) * ldb;
      for (int j = 0; j < n; ++j) ci[j] += aip * bp[j];
    }
  }
}

void gemm_sub(int m, int n, int kk, const double* a, int lda, const double* b,
              int ldb, double* c, int ldc) {
  for (int i = 0; i < m; ++i) {
    const double* ai = a + static_cast<std::size_t>(i) * lda;
    double* ci = c + static_cast<std::size_t>(i) * ldc;
    for (int p = 0; p < kk; ++p) {
      const double aip = ai[p];
      const double* bp = b + static_cast<std::size_t>(p) * ldb;
      for (int j = 0; j < n; ++j) ci[j] -= aip * bp[j];
    }
  }
}

// Right-looking unblocked LU with partial pivoting.  On an exact zero pivot
// the column is left unscaled, info records the first such column, and the
// factorization keeps going so callers can still inspect the pattern.
int lu_factor(int n, double* a, int lda, int* piv) {
  int info = 0;
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::fabs(a[static_cast<std::size_t>(k) * lda + k]);
    for (int i = k + 1; i < n; ++i) {
      const double v = std::fabs(a[static_cast<std::size_t>(i) * lda + k]);
      if (v > best) {
        best = v;
        p = i;
      }
    }
    piv[k] = p;
    if (p != k) {
      double* pk = a + static_cast<std::size_t>(k) * lda;
      double* pp = a + static_cast<std::size_t>(p) * lda;
      for (int j = 0; j < n; ++j) std::swap(pk[j], pp[j]);
    }
    const double pivval = a[static_cast<std::size_t>(k) * lda + k];
    if (pivval == 0.0) {
      if (info == 0) info = k + 1;
      continue;
    }
    for (int i = k + 1; i < n; ++i) {
      double* ai = a + static_cast<std::size_t>(i) * lda;
      ai[k] /= pivval;
      const double lik = ai[k];
      const double* ak = a + static_cast<std::size_t>(k) * lda;
      for (int j = k + 1; j < n; ++j) ai[j] -= lik * ak[j];
    }
  }
  return info;
}

void lu_solve(int n, const double* lu, int lda, const int* piv, double* b,
              int nrhs, int ldb) {
  for (int k = 0; k < n; ++k) {
    if (piv[k] != k) {
      double* bk = b + static_cast<std::size_t>(k) * ldb;
      double* bp = b + static_cast<std::size_t>(piv[k]) * ldb;
      for (int j = 0; j < nrhs; ++j) std::swap(bk[j], bp[j]);
    }
  }
  // L y = Pb, unit lower triangle
  for (int i = 1; i < n; ++i) {
    const double* lui = lu + static_cast<std::size_t>(i) * lda;
    double* bi = b + static_cast<std::size_t>(i) * ldb;
    for (int p = 0; p < i; ++p) {
      const double lip = lui[p];
      const double* bp = b + static_cast<std::size_t>(p) * ldb;
      for (int j = 0; j < nrhs; ++j) bi[j] -= lip * bp[j];
    }
  }
  // U x = y
  for (int i = n - 1; i >= 0; --i) {
    const double* lui = lu + static_cast<std::size_t>(i) * lda;
    double* bi = b + static_cast<std::size_t>(i) * ldb;
    for (int p = i + 1; p < n; ++p) {
      const double uip = lui[p];
      const double* bp = b + static_cast<std::size_t>(p) * ldb;
      for (int j = 0; j < nrhs; ++j) bi[j] -= uip * bp[j];
    }
    const double uii = lui[i];
    for (int j = 0; j < nrhs; ++j) bi[j] /= uii;
  }
}

// Solve A' X = B from PA = LU: U' t = B (lower, forward), L' w = t (upper,
// unit, backward), X = P⁻¹ w (swaps replayed in reverse).
void lu_solve_transposed(int n, const double* lu, int lda, const int* piv,
                         double* b, int nrhs, int ldb) {
  for (int i = 0; i < n; ++i) {
    double* bi = b + static_cast<std::size_t>(i) * ldb;
    for (int p = 0; p < i; ++p) {
      const double upi = lu[static_cast<std::size_t>(p) * lda + i];
      const double* bp = b + static_cast<std::size_t>(p) * ldb;
      for (int j = 0; j < nrhs; ++j) bi[j] -= upi * bp[j];
    }
    const double uii = lu[static_cast<std::size_t>(i) * lda + i];
    for (int j = 0; j < nrhs; ++j) bi[j] /= uii;
  }
  for (int i = n - 2; i >= 0; --i) {
    double* bi = b + static_cast<std::size_t>(i) * ldb;
    for (int p = i + 1; p < n; ++p) {
      const double lpi = lu[static_cast<std::size_t>(p) * lda + i];
      const double* bp = b + static_cast<std::size_t>(p) * ldb;
      for (int j = 0; j < nrhs; ++j) bi[j] -= lpi * bp[j];
    }
  }
  for (int k = n - 1; k >= 0; --k) {
    if (piv[k] != k) {
      double* bk = b + static_cast<std::size_t>(k) * ldb;
      double* bp = b + static_cast<std::size_t>(piv[k]) * ldb;
      for (int j = 0; j < nrhs; ++j) std::swap(bk[j], bp[j]);
    }
  }
}

}  // namespace lqsweep::kernels::serial
