#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "qregress/kernels.hpp"

using qregress::kernels::cplx;

namespace {

double time_ms(void (*fn)(int, const cplx*, const cplx*, cplx*), int n,
               const std::vector<cplx>& a, const std::vector<cplx>& b,
               std::vector<cplx>& c, int reps) {
  // warm-up
  fn(n, a.data(), b.data(), c.data());
  auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn(n, a.data(), b.data(), c.data());
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);

  std::printf("%6s %12s %12s %8s\n", "n", "serial_ms", "parallel_ms",
              "speedup");
  for (int n : {32, 64, 128, 256, 512}) {
    std::vector<cplx> a(n * n), b(n * n), c(n * n);
    for (auto& x : a) x = {dist(rng), dist(rng)};
    for (auto& x : b) x = {dist(rng), dist(rng)};
    const int reps = n <= 128 ? 50 : 10;
    double ts = time_ms(qregress::kernels::serial::matmul, n, a, b, c, reps);
    double tp = time_ms(qregress::kernels::par::matmul, n, a, b, c, reps);
    std::printf("%6d %12.3f %12.3f %8.2f\n", n, ts, tp, ts / tp);
  }
  return 0;
}
