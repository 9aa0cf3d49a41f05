#include "doctest.h"
#include "qregress/matrix.hpp"

using namespace qregress;

TEST_CASE("pauli algebra") {
  Operator sx = pauli(Pauli::X), sy = pauli(Pauli::Y), sz = pauli(Pauli::Z);
  CHECK(max_abs_diff(sx * sy, cplx{0, 1} * sz) <= 1e-15);
  CHECK(max_abs_diff(sx * sx, Operator::identity(2)) <= 1e-15);
  CHECK(max_abs_diff(commutator(sx, sy), cplx{0, 2} * sz) <= 1e-15);
  // sigma_plus = (sx + i sy)/2 raises |g> to |e>
  Operator sp = pauli(Pauli::Plus);
  CHECK(max_abs_diff(sp, 0.5 * (sx + cplx{0, 1} * sy)) <= 1e-15);
  CHECK(std::abs(sp(0, 1) - 1.0) <= 1e-15);
  CHECK(max_abs_diff(pauli(Pauli::Minus), sp.adjoint()) <= 1e-15);
}

TEST_CASE("trace, adjoint, hermiticity") {
  Operator a(2);
  a(0, 0) = {1, 2};
  a(0, 1) = {3, -1};
  a(1, 0) = {0, 4};
  a(1, 1) = {-2, 0};
  CHECK(std::abs(a.trace() - cplx{-1, 2}) <= 1e-15);
  CHECK(std::abs(a.adjoint()(1, 0) - cplx{3, 1}) <= 1e-15);
  CHECK(is_hermitian(pauli(Pauli::Y)));
  CHECK(!is_hermitian(a));
  CHECK(std::abs(trace_product(a, Operator::identity(2)) - a.trace()) <=
        1e-15);
}

TEST_CASE("kron dimensions and entries") {
  Operator sz = pauli(Pauli::Z);
  Operator k = kron(sz, Operator::identity(3));
  CHECK(k.dim() == 6);
  CHECK(std::abs(k(0, 0) - 1.0) <= 1e-15);
  CHECK(std::abs(k(5, 5) + 1.0) <= 1e-15);
  CHECK(std::abs(k(0, 3)) <= 1e-15);
}

TEST_CASE("norm helpers") {
  Operator a(2);
  a(0, 1) = {3, 4};
  CHECK(max_abs(a) == doctest::Approx(5.0));
  Operator b = a;
  b(0, 1) += 1.0;
  CHECK(max_abs_diff(a, b) == doctest::Approx(1.0));
  CHECK(a.finite());
}
