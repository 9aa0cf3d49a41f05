#include <random>

#include "doctest.h"
#include "qregress/expm.hpp"

using namespace qregress;

namespace {

Operator random_op(int n, unsigned seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  Operator a(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = {dist(rng), dist(rng)};
  return a;
}

// plain Taylor sum; independent oracle for small norms
Operator expm_series(const Operator& a, int terms) {
  Operator sum = Operator::identity(a.dim());
  Operator term = Operator::identity(a.dim());
  for (int k = 1; k <= terms; ++k) {
    term = (cplx{1.0 / k, 0.0}) * (term * a);
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("expm matches the Taylor series") {
  for (int n : {2, 3, 5}) {
    Operator a = random_op(n, 40 + n, 0.4);
    CHECK(max_abs_diff(expm(a), expm_series(a, 40)) <= 1e-13);
  }
}

TEST_CASE("expm of i theta sigma_z is a phase pair") {
  const double theta = 0.7;
  Operator u = expm(pauli(Pauli::Z), cplx{0.0, theta});
  CHECK(std::abs(u(0, 0) - std::exp(cplx{0.0, theta})) <= 1e-14);
  CHECK(std::abs(u(1, 1) - std::exp(cplx{0.0, -theta})) <= 1e-14);
  CHECK(std::abs(u(0, 1)) <= 1e-14);
}

TEST_CASE("expm(A) expm(-A) = I even for large norms") {
  Operator a = random_op(4, 99, 3.0);  // forces scaling-and-squaring
  Operator p = expm(a) * expm(a, cplx{-1.0, 0.0});
  CHECK(max_abs_diff(p, Operator::identity(4)) <= 1e-11);
}

TEST_CASE("expm(0) = I") {
  CHECK(max_abs_diff(expm(Operator(3)), Operator::identity(3)) <= 1e-15);
}
