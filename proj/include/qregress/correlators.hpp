#pragma once

#include "qregress/lindblad.hpp"

namespace qregress {

/// Bohr-frequency decomposition of a coupling operator: S = sum_w S_w where
/// S_w connects eigenlevels with energy difference w (E_row - E_col = w).
std::vector<std::pair<double, Operator>> eigenoperator_decomposition(
    const Operator& hs, const Operator& s, double freq_tol = 1e-9);

/// Second-order coupling data entering the irreducible parts. `eigenops`
/// decompose the system side of the coupling; `beta1`/`beta3` give the bath
/// integrals per Bohr frequency (pairs (w, value); looked up with tolerance
/// freq_tol, missing frequency is an error). `lambda_sq` is an overall
/// coupling-squared bookkeeping factor, normally 1 with the scale absorbed
/// into the beta values.
struct CouplingSpec {
  SystemModel model;
  Operator coupling;
  std::vector<std::pair<double, Operator>> eigenops;
  std::vector<std::pair<double, cplx>> beta1;
  std::vector<std::pair<double, cplx>> beta3;
  double lambda_sq = 1.0;
  double freq_tol = 1e-9;

  /// Qubit + T=0 bath in the rotating-wave approximation: single channel
  /// at w = -omega0 with jump sigma_-, beta1 = beta3 = gamma.
  static CouplingSpec spin_boson(const SystemModel& m);

  void validate() const;
};

struct ReducedOperator {
  Operator value;
  std::vector<double> times;
  int order_lambda = 2;
};

/// Pair irreducible part I[O1_S(t1), O2_S(t2)], Markov-secular form.
/// Requires 0 <= t1 <= t2; for the swapped time order call with the
/// operators exchanged.
Operator irreducible_two_point(const CouplingSpec& spec, const Operator& o1,
                               const Operator& o2, double t1, double t2);

/// One W-ordered pair term of the N-point expansion: the irreducible part of
/// the textual pair (j, k) with the remaining one-point reduced factors
/// inserted in textual order between the kernel insertions. Indices are
/// 0-based, j < k.
Operator w_pair_term(const CouplingSpec& spec,
                     const std::vector<Operator>& ops,
                     const std::vector<double>& times, int j, int k);

ReducedOperator reduced_two_point(const CouplingSpec& spec, const Operator& o1,
                                  const Operator& o2, double t1, double t2);
ReducedOperator reduced_three_point(const CouplingSpec& spec,
                                    const Operator& o1, const Operator& o2,
                                    const Operator& o3, double t1, double t2,
                                    double t3);
ReducedOperator reduced_four_point(const CouplingSpec& spec,
                                   const Operator& o1, const Operator& o2,
                                   const Operator& o3, const Operator& o4,
                                   double t1, double t2, double t3, double t4);

/// Product of one-point reduced operators plus all unordered-pair W terms.
/// Coincides with the dedicated 2/3/4-point builders for N = 2, 3, 4.
ReducedOperator reduced_n_point(const CouplingSpec& spec,
                                const std::vector<Operator>& ops,
                                const std::vector<double>& times);

/// Out-of-time-ordered reduced operator (O1(t1) A_mu(t2) O3(t1) A_nu(t2))_S,
/// including the equal-time pair irreducible terms. Requires t2 > t1 >= 0.
ReducedOperator otoc_reduced(const CouplingSpec& spec, const Operator& o1,
                             const Operator& a_mu, const Operator& o3,
                             const Operator& a_nu, double t1, double t2);

/// Extra term in the t2-derivative of the OTOC generated by the explicit
/// time prefactor of the equal-time pair irreducible part.
Operator otoc_f_term(const CouplingSpec& spec, const Operator& o1,
                     const Operator& a_mu, const Operator& o3,
                     const Operator& a_nu, double t1, double t2);

/// Tr[value * rho_s]. rho_s must be a valid density matrix.
cplx correlator(const ReducedOperator& reduced, const Operator& rho_s);

}  // namespace qregress
