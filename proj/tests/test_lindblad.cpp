#include <cmath>

#include "doctest.h"
#include "qregress/lindblad.hpp"

using namespace qregress;

TEST_CASE("closed sets satisfy their stated M matrices") {
  auto model = SystemModel::spin_boson(1.0, 0.02, 0.01);
  CHECK(verify_closed_set(model, closed_set_zi(model)) <= 1e-12);
  CHECK(verify_closed_set(model, closed_set_xy(model)) <= 1e-12);
}

TEST_CASE("generator annihilates the identity") {
  auto model = SystemModel::spin_boson(1.3, 0.0, 0.05);
  CHECK(max_abs(adjoint_generator(model, Operator::identity(2))) <= 1e-14);
}

TEST_CASE("superoperator evolution matches fixed-step RK4") {
  auto model = SystemModel::spin_boson(1.0, 0.0, 0.04);
  for (auto p : {Pauli::X, Pauli::Z, Pauli::Plus}) {
    Operator a = evolve_one_point(model, pauli(p), 2.5);
    Operator b = evolve_one_point_rk4(model, pauli(p), 2.5, 1e-3);
    CHECK(max_abs_diff(a, b) <= 1e-10);
  }
}

TEST_CASE("sigma_z relaxation closed form") {
  const double g = 0.03, t = 4.0;
  auto model = SystemModel::spin_boson(1.0, 0.0, g);
  Operator got = evolve_one_point(model, pauli(Pauli::Z), t);
  // from M_zi: sz(t) = e^{-g t} sz + (e^{-g t} - 1) I
  Operator ref = std::exp(-g * t) * pauli(Pauli::Z) +
                 cplx{std::exp(-g * t) - 1.0, 0.0} * Operator::identity(2);
  CHECK(max_abs_diff(got, ref) <= 1e-12);
}

TEST_CASE("transverse decay rate is gamma/2 at the shifted frequency") {
  const double g = 0.02, d = 0.05, t = 3.0;
  auto model = SystemModel::spin_boson(1.0, d, g);
  Operator got = evolve_one_point(model, pauli(Pauli::Minus), t);
  // i[H, sigma_-] = -i omega0' sigma_-, so the lone entry rotates as
  // e^{-i omega0' t} and decays at gamma/2
  const cplx ref = std::exp(cplx{-g * t / 2.0, -(1.0 + d) * t});
  CHECK(std::abs(got(1, 0) - ref) <= 1e-12);
  CHECK(std::abs(got(0, 1)) <= 1e-14);
}

TEST_CASE("invalid model is rejected") {
  auto model = SystemModel::spin_boson(1.0, 0.0, 0.01);
  model.lindblad_ops[0].second = -1.0;
  CHECK_THROWS(model.validate());
}
