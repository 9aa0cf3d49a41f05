#pragma once

#include "qregress/lindblad.hpp"

namespace qregress {

/// Discrete bosonic bath kept exactly: modes (omega_k, g_k) with Fock levels
/// 0..fock_cutoff per mode. Total dimension 2*(fock_cutoff+1)^K must stay
/// within 4096.
struct TruncatedBath {
  std::vector<std::pair<double, double>> modes;
  int fock_cutoff = 1;

  long long dim() const;

  /// Midpoint grid of n_modes over [center - bandwidth/2, center +
  /// bandwidth/2] with flat couplings g = sqrt(gamma_target * dw / 2pi).
  /// Bandwidths of a few tens of gamma_target are needed before the decay
  /// looks Markovian; narrow bands keep a long quadratic turn-on.
  static TruncatedBath flat_band(double center, double gamma_target,
                                 double bandwidth, int n_modes,
                                 int fock_cutoff);
};

/// H = hs (x) I + sum_k omega_k b_k^dag b_k + sum_k g_k (b_k^dag sigma_- +
/// b_k sigma_+), dense Hermitian. System index is the slow index; the qubit
/// basis is |e> = 0, |g> = 1 as everywhere else.
Operator build_hamiltonian(const SystemModel& model, const TruncatedBath& bath);

/// Exact unitary Heisenberg evolution, diagonalized once at construction.
class Oracle {
 public:
  Oracle(const SystemModel& model, const TruncatedBath& bath);

  /// Tr[(prod_i U^dag(t_i) (O_i (x) I) U(t_i)) (rho_s (x) |vac><vac|)].
  /// Arbitrary time orderings; O_i are system (2x2) operators.
  cplx correlator(const std::vector<Operator>& ops,
                  const std::vector<double>& times,
                  const Operator& rho_s) const;

  /// <op (x) I>(k dt) for k = 0..n_steps, same initial state.
  std::vector<cplx> expectation_curve(const Operator& op, const Operator& rho_s,
                                      double dt, int n_steps) const;

  const Operator& hamiltonian() const { return h_; }
  long long dim() const { return h_.dim(); }

 private:
  Operator h_;
  Operator vecs_;      // eigenvector columns
  Operator vecs_adj_;
  std::vector<double> evals_;
  long long bath_dim_ = 0;
};

/// Convenience wrapper; builds an Oracle per call.
cplx exact_correlator(const SystemModel& model, const TruncatedBath& bath,
                      const std::vector<Operator>& ops,
                      const std::vector<double>& times, const Operator& rho_s);

struct CutoffReport {
  cplx value_hi;   // at bath.fock_cutoff
  cplx value_lo;   // at fock_cutoff - 1
  double deviation = 0.0;
};

/// Recomputes one correlator at fock_cutoff and fock_cutoff-1.
CutoffReport cutoff_convergence_check(const SystemModel& model,
                                      const TruncatedBath& bath,
                                      const std::vector<Operator>& ops,
                                      const std::vector<double>& times,
                                      const Operator& rho_s);

}  // namespace qregress
