#include <random>
#include <vector>

#include "doctest.h"
#include "qregress/kernels.hpp"

using qregress::kernels::cplx;

namespace {

std::vector<cplx> random_matrix(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<cplx> m(n * n);
  for (auto& x : m) x = {dist(rng), dist(rng)};
  return m;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("parallel matmul matches the serial reference") {
  for (int n : {3, 17, 64, 129}) {
    auto a = random_matrix(n, 100 + n);
    auto b = random_matrix(n, 200 + n);
    std::vector<cplx> cs(n * n), cp(n * n), cd(n * n);
    qregress::kernels::serial::matmul(n, a.data(), b.data(), cs.data());
    qregress::kernels::par::matmul(n, a.data(), b.data(), cp.data());
    qregress::kernels::matmul(n, a.data(), b.data(), cd.data());
    CHECK(max_diff(cs, cp) <= 1e-12);
    CHECK(max_diff(cs, cd) <= 1e-12);
  }
}

TEST_CASE("matmul against a hand-computed 2x2 product") {
  // [[1, i], [0, 2]] * [[1, 1], [1, 0]] = [[1+i, 1], [2, 0]]
  std::vector<cplx> a = {{1, 0}, {0, 1}, {0, 0}, {2, 0}};
  std::vector<cplx> b = {{1, 0}, {1, 0}, {1, 0}, {0, 0}};
  std::vector<cplx> c(4);
  qregress::kernels::serial::matmul(2, a.data(), b.data(), c.data());
  CHECK(std::abs(c[0] - cplx{1, 1}) <= 1e-15);
  CHECK(std::abs(c[1] - cplx{1, 0}) <= 1e-15);
  CHECK(std::abs(c[2] - cplx{2, 0}) <= 1e-15);
  CHECK(std::abs(c[3]) <= 1e-15);
}

TEST_CASE("add_scaled serial and parallel agree") {
  const int n2 = 137 * 137;
  auto a = random_matrix(137, 7);
  auto out1 = random_matrix(137, 8);
  auto out2 = out1;
  const cplx s{0.3, -1.2};
  qregress::kernels::serial::add_scaled(n2, a.data(), s, out1.data());
  qregress::kernels::par::add_scaled(n2, a.data(), s, out2.data());
  CHECK(max_diff(out1, out2) <= 1e-12);
  // spot check one entry
  auto fresh = random_matrix(137, 8);
  CHECK(std::abs(out1[5] - (fresh[5] + s * a[5])) <= 1e-12);
}
