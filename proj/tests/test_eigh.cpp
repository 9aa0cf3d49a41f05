#include <random>

#include "doctest.h"
#include "qregress/eigh.hpp"

using namespace qregress;

namespace {

Operator random_hermitian(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Operator a(n);
  for (int r = 0; r < n; ++r) {
    a(r, r) = {dist(rng), 0.0};
    for (int c = r + 1; c < n; ++c) {
      a(r, c) = {dist(rng), dist(rng)};
      a(c, r) = std::conj(a(r, c));
    }
  }
  return a;
}

}  // namespace

TEST_CASE("eigendecomposition reconstructs the matrix") {
  for (int n : {2, 6, 12}) {
    Operator a = random_hermitian(n, 1000 + n);
    auto res = eigh(a);
    Operator lam(n);
    for (int i = 0; i < n; ++i) lam(i, i) = res.values[i];
    CHECK(max_abs_diff(a, res.vectors * lam * res.vectors.adjoint()) <= 1e-11);
    CHECK(max_abs_diff(res.vectors.adjoint() * res.vectors,
                       Operator::identity(n)) <= 1e-12);
    for (int i = 1; i < n; ++i) CHECK(res.values[i - 1] <= res.values[i]);
  }
}

TEST_CASE("diagonal and degenerate input") {
  Operator a(3);
  a(0, 0) = 2.0;
  a(1, 1) = -1.0;
  a(2, 2) = -1.0;
  auto res = eigh(a);
  CHECK(res.values[0] == doctest::Approx(-1.0));
  CHECK(res.values[1] == doctest::Approx(-1.0));
  CHECK(res.values[2] == doctest::Approx(2.0));
}

TEST_CASE("pauli x spectrum") {
  auto res = eigh(pauli(Pauli::X));
  CHECK(res.values[0] == doctest::Approx(-1.0));
  CHECK(res.values[1] == doctest::Approx(1.0));
}
