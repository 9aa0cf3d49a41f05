#include <cmath>

#include "doctest.h"
#include "qregress/correlators.hpp"
#include "qregress/nonmarkov.hpp"
#include "qregress/oracle.hpp"

using namespace qregress;

namespace {

SystemModel bare_model() { return SystemModel::spin_boson(1.0, 0.0, 0.0); }

Operator excited_state() {
  Operator rho(2);
  rho(0, 0) = 1.0;
  return rho;
}

}  // namespace

TEST_CASE("no modes leaves the bare system hamiltonian") {
  TruncatedBath bath;
  Operator h = build_hamiltonian(bare_model(), bath);
  CHECK(max_abs_diff(h, bare_model().hs) <= 1e-15);
}

TEST_CASE("one mode at cutoff 1 is the hand-built 4x4") {
  TruncatedBath bath;
  bath.modes = {{1.2, 0.3}};
  bath.fock_cutoff = 1;
  Operator h = build_hamiltonian(bare_model(), bath);
  REQUIRE(h.dim() == 4);
  CHECK(is_hermitian(h, 1e-14));
  // basis |e,0>, |e,1>, |g,0>, |g,1>
  CHECK(std::abs(h(0, 0) - 0.5) <= 1e-15);
  CHECK(std::abs(h(1, 1) - (0.5 + 1.2)) <= 1e-15);
  CHECK(std::abs(h(2, 2) + 0.5) <= 1e-15);
  CHECK(std::abs(h(3, 3) - (-0.5 + 1.2)) <= 1e-15);
  CHECK(std::abs(h(3, 0) - 0.3) <= 1e-15);  // |e,0> <-> |g,1|
  CHECK(std::abs(h(0, 3) - 0.3) <= 1e-15);
  CHECK(std::abs(h(1, 2)) <= 1e-15);  // counter-rotating entry absent
}

TEST_CASE("total excitation number commutes with the hamiltonian") {
  auto bath = TruncatedBath::flat_band(1.0, 0.05, 1.6, 3, 2);
  Operator h = build_hamiltonian(bare_model(), bath);
  const int dim = h.dim();
  const int bd = dim / 2;
  Operator n(dim);
  for (int i = 0; i < dim; ++i) {
    int exc = i / bd == 0 ? 1 : 0;
    int m = i % bd;
    for (int k = 0; k < 3; ++k) {
      exc += m % 3;
      m /= 3;
    }
    n(i, i) = exc;
  }
  CHECK(max_abs_diff(h * n, n * h) <= 1e-12);
}

TEST_CASE("vacuum rabi oscillation of a resonant mode") {
  TruncatedBath bath;
  bath.modes = {{1.0, 0.3}};
  bath.fock_cutoff = 1;
  Oracle orc(bare_model(), bath);
  for (double t : {0.5, 2.0, 7.3}) {
    cplx v = orc.correlator({pauli(Pauli::Z)}, {t}, excited_state());
    CHECK(std::abs(v - std::cos(2.0 * 0.3 * t)) <= 1e-12);
  }
}

TEST_CASE("free qubit correlator is a pure phase") {
  TruncatedBath bath;
  bath.modes = {{1.5, 0.0}};  // decoupled mode
  bath.fock_cutoff = 1;
  Oracle orc(bare_model(), bath);
  Operator sx = pauli(Pauli::X);
  cplx v = orc.correlator({sx, sx}, {0.7, 2.1}, excited_state());
  CHECK(std::abs(v - std::exp(cplx{0.0, -1.0 * (2.1 - 0.7)})) <= 1e-12);
}

TEST_CASE("unitarity and heisenberg consistency") {
  auto bath = TruncatedBath::flat_band(1.0, 0.05, 1.6, 3, 2);
  Oracle orc(bare_model(), bath);
  auto ones = orc.expectation_curve(Operator::identity(2), excited_state(),
                                    0.7, 4);
  for (const auto& v : ones) CHECK(std::abs(v - 1.0) <= 1e-12);
  Operator np = pauli(Pauli::Plus) * pauli(Pauli::Minus);
  auto curve = orc.expectation_curve(np, excited_state(), 0.7, 4);
  cplx single = orc.correlator({np}, {2.1}, excited_state());
  CHECK(std::abs(curve[3] - single) <= 1e-12);
}

TEST_CASE("hermitian two-point correlators conjugate under order swap") {
  auto bath = TruncatedBath::flat_band(1.0, 0.05, 1.6, 3, 2);
  Oracle orc(bare_model(), bath);
  Operator sx = pauli(Pauli::X);
  cplx fwd = orc.correlator({sx, sx}, {1.0, 2.0}, excited_state());
  cplx bwd = orc.correlator({sx, sx}, {2.0, 1.0}, excited_state());
  CHECK(std::abs(std::conj(fwd) - bwd) <= 1e-12);
}

TEST_CASE("cutoff convergence for few insertions from vacuum") {
  auto bath = TruncatedBath::flat_band(1.0, 0.05, 1.6, 3, 3);
  Operator sx = pauli(Pauli::X);
  auto rep = cutoff_convergence_check(bare_model(), bath, {sx, sx}, {1.0, 3.0},
                                      excited_state());
  CHECK(rep.deviation <= 1e-10);
  // four insertions, otoc ordering: truncation still resolved
  auto rep4 = cutoff_convergence_check(bare_model(), bath,
                                       {sx, pauli(Pauli::Z), sx, pauli(Pauli::Z)},
                                       {1.0, 2.0, 1.0, 2.0}, excited_state());
  CHECK(rep4.deviation <= 1e-6);
  TruncatedBath low = bath;
  low.fock_cutoff = 1;
  CHECK_THROWS(cutoff_convergence_check(bare_model(), low, {sx}, {1.0},
                                        excited_state()));
}

TEST_CASE("zero coupling gives exact cutoff independence") {
  TruncatedBath bath;
  bath.modes = {{0.9, 0.0}, {1.1, 0.0}};
  bath.fock_cutoff = 2;
  auto rep = cutoff_convergence_check(bare_model(), bath, {pauli(Pauli::X)},
                                      {1.5}, excited_state());
  CHECK(rep.deviation <= 1e-14);
}

TEST_CASE("dimension bound is enforced") {
  auto bath = TruncatedBath::flat_band(1.0, 0.05, 1.6, 12, 2);  // 2*3^12
  CHECK_THROWS(build_hamiltonian(bare_model(), bath));
}

TEST_CASE("perturbative two-point tracks the exact one") {
  const double gt = 0.05;
  auto bath = TruncatedBath::flat_band(1.0, gt, 32.0 * gt, 5, 2);
  Oracle orc(bare_model(), bath);
  BathCorrelation bc;
  for (const auto& [w, g] : bath.modes) bc.modes.emplace_back(w, cplx{g, 0.0});
  auto pmod = SystemModel::spin_boson(1.0, lamb_shift_sum(bc, 1.0), gt);
  auto spec = CouplingSpec::spin_boson(pmod);
  Operator sx = pauli(Pauli::X);
  cplx ex = orc.correlator({sx, sx}, {2.0, 5.0}, excited_state());
  cplx pt =
      correlator(reduced_two_point(spec, sx, sx, 2.0, 5.0), excited_state());
  CHECK(std::abs(ex - pt) / std::abs(ex) <= 0.1);
}
