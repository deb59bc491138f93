#include "lqsweep/kernels.hpp"

#include <algorithm>
#include <cmath>

// Parallel entry points.  Loop bodies are kept textually identical to the
// serial reference so both sides execute the same operation sequence per
// output entry; OpenMP only distributes independent rows.

namespace lqsweep::kernels {

namespace {

inline void swap_rows(double* a, int lda, int r, int s, int n) {
  if (r == s) return;
  double* pr = a + static_cast<std::size_t>(r) * lda;
  double* ps = a + static_cast<std::size_t>(s) * lda;
  for (int j = 0; j < n; ++j) std::swap(pr[j], ps[j]);
}

}  // namespace

void gemm(int m, int n, int kk, const double* a, int lda, const double* b,
          int ldb, double* c, int ldc) {
  const long long work = 1LL * m * n * kk;
#pragma omp parallel for schedule(static) if (work >= kOmpMinWork)
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
  const long long work = 1LL * m * n * kk;
#pragma omp parallel for schedule(static) if (work >= kOmpMinWork)
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

// Right-looking blocked LU.  Panel steps apply their rank-1 updates to the
// panel immediately and defer the rest to one gemm per block, which applies
// them in the same ascending-pivot order as the unblocked reference; pivot
// choices and results match serial::lu_factor bit for bit.
int lu_factor(int n, double* a, int lda, int* piv) {
  constexpr int kBlock = 96;
  if (n < 2 * kBlock) return serial::lu_factor(n, a, lda, piv);

  int info = 0;
  for (int j0 = 0; j0 < n; j0 += kBlock) {
    const int jb = std::min(kBlock, n - j0);
    const int jend = j0 + jb;

    for (int k = j0; k < jend; ++k) {
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
      swap_rows(a, lda, k, p, n);
      const double pivval = a[static_cast<std::size_t>(k) * lda + k];
      if (pivval == 0.0) {
        if (info == 0) info = k + 1;
        continue;
      }
      for (int i = k + 1; i < n; ++i) {
        double* ai = a + static_cast<std::size_t>(i) * lda;
        ai[k] /= pivval;
        const double lik = ai[k];
        const double* akr = a + static_cast<std::size_t>(k) * lda;
        for (int j = k + 1; j < jend; ++j) ai[j] -= lik * akr[j];
      }
    }

    if (jend >= n) break;

    // U block row: forward substitution with the unit lower panel.
    for (int p = j0; p < jend; ++p) {
      const double* ap = a + static_cast<std::size_t>(p) * lda;
      for (int i = p + 1; i < jend; ++i) {
        double* ai = a + static_cast<std::size_t>(i) * lda;
        const double lip = ai[p];
        for (int j = jend; j < n; ++j) ai[j] -= lip * ap[j];
      }
    }

    // Trailing update.
    gemm_sub(n - jend, n - jend, jb, a + static_cast<std::size_t>(jend) * lda + j0,
             lda, a + static_cast<std::size_t>(j0) * lda + jend, lda,
             a + static_cast<std::size_t>(jend) * lda + jend, lda);
  }
  return info;
}

void lu_solve(int n, const double* lu, int lda, const int* piv, double* b,
              int nrhs, int ldb) {
  serial::lu_solve(n, lu, lda, piv, b, nrhs, ldb);
}

void lu_solve_transposed(int n, const double* lu, int lda, const int* piv,
                         double* b, int nrhs, int ldb) {
  serial::lu_solve_transposed(n, lu, lda, piv, b, nrhs, ldb);
}

}  // namespace lqsweep::kernels
