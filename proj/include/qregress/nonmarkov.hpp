#pragma once

#include <functional>

#include "qregress/lindblad.hpp"

namespace qregress {

/// Discrete bosonic bath at T=0: alpha(tau) = sum_k |g_k|^2 e^{-i omega_k tau}.
struct BathCorrelation {
  std::vector<std::pair<double, cplx>> modes;  // (omega_k, g_k)

  /// Uniform grid of n_modes over [center - bandwidth/2, center + bandwidth/2]
  /// with flat couplings g = sqrt(gamma_target * dw / 2pi).
  static BathCorrelation flat_band(double center, double gamma_target,
                                   double bandwidth, int n_modes);
  static BathCorrelation single_mode(double omega, cplx g);

  /// Memory time estimate: smallest tau on a grid with
  /// |alpha(tau)| <= 0.01 alpha(0). Diagnostic only.
  double tau_b() const;
};

cplx alpha(const BathCorrelation& bath, double tau);

/// Discrete analogue of the principal-value Lamb shift:
/// sum over off-resonant modes of |g_k|^2 / (omega0 - omega_k).
double lamb_shift_sum(const BathCorrelation& bath, double omega0);

/// Memory integral C(t) = int_0^t alpha(tau) Ltilde(-tau) dtau with
/// Ltilde(t) = e^{iHs t} L e^{-iHs t}. L is the model's first jump operator.
Operator memory_kernel_integral(const SystemModel& model,
                                const BathCorrelation& bath, double t);

/// Time-local adjoint generator of the order-lambda^2 non-Markovian master
/// equation: i[Hs, O] + [L^dag, O] C(t) + C(t)^dag [O, L].
Operator nonmarkov_generator(const SystemModel& model,
                             const BathCorrelation& bath, const Operator& o_s,
                             double t);

/// Fixed-step RK4 integration of the time-dependent ODE up to t.
Operator evolve_one_point_nm(const SystemModel& model,
                             const BathCorrelation& bath, const Operator& o,
                             double t, double dt);

struct TimeDependentClosedSet {
  std::vector<Operator> ops;
  std::function<std::vector<std::vector<cplx>>(double)> m_of_t;
};

/// {sigma_x, sigma_y}: M(t) = [[-Re G, -(w0+Im G)], [w0+Im G, -Re G]] with
/// G(t) = int_0^t alpha(tau) e^{i w0 tau} dtau.
TimeDependentClosedSet nonmarkov_closed_set_xy(const SystemModel& model,
                                               const BathCorrelation& bath);
/// {sigma_z, I}: M(t) = [[-2 Re G, -2 Re G], [0, 0]].
TimeDependentClosedSet nonmarkov_closed_set_zi(const SystemModel& model,
                                               const BathCorrelation& bath);

struct MFitResult {
  std::vector<std::vector<cplx>> m;
  double residual = 0.0;  // worst Frobenius misfit across rows
};

/// Least-squares fit of the generator action onto span{A_lambda_S(t)}.
MFitResult extract_m(const SystemModel& model, const BathCorrelation& bath,
                     const std::vector<Operator>& ops, double t, double dt);

/// Pair irreducible part as a double memory integral (t1 >= t2 >= 0,
/// first operator carries the later time):
/// int_0^t1 int_0^t2 alpha(tau2-tau1) [O1S(t1), Ltilde^dag(-tau1)]
///                                    [Ltilde(-tau2), O2S(t2)] dtau1 dtau2.
Operator nonmarkov_irreducible_two_point(const BathCorrelation& bath,
                                         const SystemModel& model,
                                         const Operator& o1,
                                         const Operator& o2, double t1,
                                         double t2, double dt = 5e-3);

struct NonMarkovQrtReport {
  Operator lhs;
  Operator rhs;
  double residual = 0.0;
  double main_norm = 0.0;        // M-weighted sum
  double correction_norm = 0.0;  // four boundary-term integrals
  double step = 0.0;
};

/// Boundary correction of the t1-derivative identity:
/// int_0^t2 alpha(tau2-t1) [A_muS(t1), Ltilde^dag(-t1)] [Ltilde(-tau2), O_S(t2)].
Operator nonmarkov_qrt_correction(const BathCorrelation& bath,
                                  const SystemModel& model,
                                  const Operator& a_mu_evolved,
                                  const Operator& o_evolved, double t1,
                                  double t2);

/// Right-hand side of the non-Markovian regression identity (derivative in
/// the larger time t1): sum_l M_{mu l}(t1) (A_l(t1) O(t2))_S plus the four
/// correction terms (omitted when include_corrections is false).
Operator nonmarkov_qrt_rhs(const BathCorrelation& bath,
                           const SystemModel& model,
                           const TimeDependentClosedSet& set,
                           const Operator& o, int mu, double t1, double t2,
                           bool include_corrections = true, double dt = 5e-3);

NonMarkovQrtReport nonmarkov_qrt_report(const BathCorrelation& bath,
                                        const SystemModel& model,
                                        const TimeDependentClosedSet& set,
                                        const Operator& o, int mu, double t1,
                                        double t2,
                                        bool include_corrections = true,
                                        double h = 1e-4, double dt = 5e-3);

}  // namespace qregress
