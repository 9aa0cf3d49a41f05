#pragma once

#include "qregress/correlators.hpp"

namespace qregress {

struct QrtOptions {
  double h = 1e-4;
  bool richardson = false;
  // Permit differentiating a non-maximal time (violation witness runs).
  bool allow_non_maximal = false;
};

struct QrtReport {
  Operator lhs;  // finite-difference derivative
  Operator rhs;  // M-weighted combination (plus F term for the OTOC)
  double residual = 0.0;
  double step = 0.0;
  std::vector<double> times;
  int diff_index = -1;
  int mu = -1;
};

enum class TwoPointOrder { OpFirst, SetFirst };

/// d/dt2 (O(t1) A_mu(t2))_S vs sum_l M_{mu l} (O(t1) A_l(t2))_S, or the
/// swapped product order with A_mu first.
QrtReport qrt_two_point(const CouplingSpec& spec, const ClosedSet& set,
                        const Operator& o, int mu, double t1, double t2,
                        TwoPointOrder order = TwoPointOrder::OpFirst,
                        const QrtOptions& opt = {});

/// General N-point identity. `others` holds the N-1 fixed operators in
/// textual order; A_mu is inserted at `slot` and its time differentiated.
/// times has length N and times[slot] must be the strict maximum unless
/// opt.allow_non_maximal.
QrtReport qrt_n_point(const CouplingSpec& spec, const ClosedSet& set,
                      const std::vector<Operator>& others, int mu, int slot,
                      const std::vector<double>& times,
                      const QrtOptions& opt = {});

QrtReport qrt_three_point(const CouplingSpec& spec, const ClosedSet& set,
                          const Operator& o1, const Operator& o2, int mu,
                          double t1, double t2, double t3,
                          const QrtOptions& opt = {});

QrtReport qrt_four_point(const CouplingSpec& spec, const ClosedSet& set,
                         const Operator& o1, const Operator& o2,
                         const Operator& o3, int mu, double t1, double t2,
                         double t3, double t4, const QrtOptions& opt = {});

/// OTOC identity: d/dt2 (O1(t1) A_mu(t2) O3(t1) A_nu(t2))_S against the two
/// M-weighted sums plus the equal-time F term. `include_f_term = false`
/// deliberately drops F to exhibit the violation.
QrtReport qrt_otoc(const CouplingSpec& spec, const ClosedSet& set_mu,
                   const ClosedSet& set_nu, const Operator& o1,
                   const Operator& o3, int mu, int nu, double t1, double t2,
                   bool include_f_term = true, const QrtOptions& opt = {});

}  // namespace qregress
