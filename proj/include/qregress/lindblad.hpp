#pragma once

#include "qregress/matrix.hpp"

namespace qregress {

/// Dissipative system description for the Heisenberg-picture (adjoint)
/// master equation. `hs` is the bare Hamiltonian; `h_shift` carries the
/// coupling-induced level renormalization (for the qubit, (delta/2) sigma_z).
struct SystemModel {
  double omega0 = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  Operator hs;
  Operator h_shift;
  // (jump operator L_k, rate r_k); adjoint dissipator
  // (r_k/2)(2 L† O L - L†L O - O L†L).
  std::vector<std::pair<Operator, double>> lindblad_ops;

  double omega0_prime() const { return omega0 + delta; }
  int dim() const { return hs.dim(); }

  /// Qubit decaying into a T=0 bath: H = (omega0/2) sigma_z, jump sigma_-.
  static SystemModel spin_boson(double omega0, double delta, double gamma);

  void validate() const;
};

/// Operators A_mu with d A_muS/dt = sum_lambda M_{mu lambda} A_lambdaS.
struct ClosedSet {
  std::vector<Operator> ops;
  std::vector<std::vector<cplx>> m;
};

/// {sigma_z, I} with M = [[-g, -g], [0, 0]].
ClosedSet closed_set_zi(const SystemModel& model);
/// {sigma_x, sigma_y} with M = [[-g/2, -w], [w, -g/2]].
ClosedSet closed_set_xy(const SystemModel& model);

/// Right-hand side of the adjoint master equation applied to `o`.
Operator adjoint_generator(const SystemModel& model, const Operator& o);

/// O_S(t) by exponentiating the generator in the d^2 operator basis.
Operator evolve_one_point(const SystemModel& model, const Operator& o,
                          double t);

/// max_mu max_abs_diff(generator(A_mu), sum_lambda M_{mu lambda} A_lambda)
double verify_closed_set(const SystemModel& model, const ClosedSet& set);

/// Fixed-step RK4 integration of the same ODE; test oracle for
/// evolve_one_point.
Operator evolve_one_point_rk4(const SystemModel& model, const Operator& o,
                              double t, double dt);

}  // namespace qregress
