// Times the OpenMP kernels against the serial reference loops and reports
// the speedup.  Sizes stay modest so a full run finishes in seconds.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "lqsweep/kernels.hpp"

namespace {

using Clock = std::chrono::steady_clock;

std::vector<double> random_matrix(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  for (double& v : a) v = dist(rng);
  return a;
}

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = Clock::now();
    fn();
    const std::chrono::duration<double> dt = Clock::now() - start;
    if (dt.count() < best) best = dt.count();
  }
  return best;
}

void bench_gemm(int n, std::mt19937_64& rng) {
  const auto a = random_matrix(n, rng);
  const auto b = random_matrix(n, rng);
  std::vector<double> c(a.size());
  const double flops = 2.0 * n * n * n;

  const double ts = time_best_of(3, [&] {
    lqsweep::kernels::serial::gemm(n, n, n, a.data(), n, b.data(), n, c.data(),
                                   n);
  });
  const double tp = time_best_of(3, [&] {
    lqsweep::kernels::gemm(n, n, n, a.data(), n, b.data(), n, c.data(), n);
  });
  std::printf("gemm  n=%4d  serial %8.3f ms (%6.2f GF/s)  parallel %8.3f ms "
              "(%6.2f GF/s)  speedup %5.2fx\n",
              n, ts * 1e3, flops / ts * 1e-9, tp * 1e3, flops / tp * 1e-9,
              ts / tp);
}

void bench_lu(int n, std::mt19937_64& rng) {
  const auto a = random_matrix(n, rng);
  std::vector<double> work(a.size());
  std::vector<int> piv(n);
  const double flops = 2.0 / 3.0 * n * n * n;

  const double ts = time_best_of(3, [&] {
    work = a;
    lqsweep::kernels::serial::lu_factor(n, work.data(), n, piv.data());
  });
  const double tp = time_best_of(3, [&] {
    work = a;
    lqsweep::kernels::lu_factor(n, work.data(), n, piv.data());
  });
  std::printf("lu    n=%4d  serial %8.3f ms (%6.2f GF/s)  blocked %8.3f ms "
              "(%6.2f GF/s)  speedup %5.2fx\n",
              n, ts * 1e3, flops / ts * 1e-9, tp * 1e3, flops / tp * 1e-9,
              ts / tp);
}

}  // namespace

int main() {
  std::mt19937_64 rng(20240817u);
  for (int n : {128, 256, 512, 1024}) bench_gemm(n, rng);
  for (int n : {128, 256, 512, 1024}) bench_lu(n, rng);
  return 0;
}
