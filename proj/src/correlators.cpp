#include "qregress/correlators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qregress/eigh.hpp"

namespace qregress {

std::vector<std::pair<double, Operator>> eigenoperator_decomposition(
    const Operator& hs, const Operator& s, double freq_tol) {
  if (!is_hermitian(hs, 1e-10))
    throw std::invalid_argument("eigenoperator_decomposition: hs not Hermitian");
  if (hs.dim() != s.dim())
    throw std::invalid_argument("eigenoperator_decomposition: dim mismatch");
  const int d = hs.dim();
  const EighResult eig = eigh(hs);
  double emax = 0.0;
  for (double e : eig.values) emax = std::max(emax, std::abs(e));
  const double tol = freq_tol * std::max(1.0, emax);

  const Operator vd = eig.vectors.adjoint();
  const Operator m = vd * s * eig.vectors;

  double mmax = 0.0;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) mmax = std::max(mmax, std::abs(m(r, c)));
  const double drop = 1e-14 * std::max(1.0, mmax);

  // Group matrix elements by Bohr frequency E_row - E_col.
  std::vector<std::pair<double, Operator>> groups;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      if (std::abs(m(r, c)) <= drop) continue;
      const double w = eig.values[r] - eig.values[c];
      auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
        return std::abs(g.first - w) <= tol;
      });
      if (it == groups.end()) {
        groups.emplace_back(w, Operator(d));
        it = std::prev(groups.end());
      }
      it->second(r, c) += m(r, c);
    }
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [w, op] : groups) op = eig.vectors * op * vd;
  return groups;
}

namespace {

cplx beta_lookup(const std::vector<std::pair<double, cplx>>& map, double w,
                 double tol) {
  for (const auto& [key, val] : map)
    if (std::abs(key - w) <= tol) return val;
  throw std::out_of_range("CouplingSpec: no beta value for Bohr frequency " +
                          std::to_string(w));
}

/// Channel sum of the four kernel placements for the textual pair (j, k).
/// The daggered eigenoperator attaches to the earlier textual slot j (left or
/// right), its partner to slot k; the remaining factors keep textual order.
/// Sign is + when exactly one insertion lands on the left of its operator.
Operator pair_kernel_sum(const CouplingSpec& spec,
                         const std::vector<Operator>& evolved, int j, int k,
                         double time_factor) {
  const int d = spec.model.dim();
  const int n = static_cast<int>(evolved.size());
  Operator acc(d);
  for (const auto& [w1, s1] : spec.eigenops)
    for (const auto& [w2, s2] : spec.eigenops) {
      if (std::abs(w1 - w2) > spec.freq_tol) continue;  // secular matching
      const Operator a = s1.adjoint();
      const cplx b1 = beta_lookup(spec.beta1, w1, spec.freq_tol);
      const cplx b3 = beta_lookup(spec.beta3, w1, spec.freq_tol);
      for (int al = 0; al < 2; ++al)
        for (int bl = 0; bl < 2; ++bl) {
          Operator p = Operator::identity(d);
          for (int i = 0; i < n; ++i) {
            if (i == j)
              p = al ? p * a * evolved[i] : p * evolved[i] * a;
            else if (i == k)
              p = bl ? p * s2 * evolved[i] : p * evolved[i] * s2;
            else
              p = p * evolved[i];
          }
          const double sign = (al ^ bl) ? 1.0 : -1.0;
          const cplx wgt = bl ? b3 : b1;
          acc += (sign * wgt * spec.lambda_sq * time_factor) * p;
        }
    }
  return acc;
}

std::vector<Operator> evolve_all(const CouplingSpec& spec,
                                 const std::vector<Operator>& ops,
                                 const std::vector<double>& times) {
  std::vector<Operator> out;
  out.reserve(ops.size());
  for (size_t i = 0; i < ops.size(); ++i)
    out.push_back(evolve_one_point(spec.model, ops[i], times[i]));
  return out;
}

}  // namespace

CouplingSpec CouplingSpec::spin_boson(const SystemModel& m) {
  CouplingSpec s;
  s.model = m;
  s.coupling = pauli(Pauli::Minus);
  s.freq_tol = 1e-9 * std::max(1.0, std::abs(m.omega0));
  s.eigenops = eigenoperator_decomposition(m.hs, s.coupling);
  s.beta1 = {{-m.omega0, cplx{m.gamma, 0.0}}};
  s.beta3 = s.beta1;
  s.validate();
  return s;
}

void CouplingSpec::validate() const {
  model.validate();
  const int d = model.dim();
  if (coupling.dim() != d)
    throw std::invalid_argument("CouplingSpec: coupling dim mismatch");
  const EighResult eig = eigh(model.hs);
  Operator sum(d);
  for (const auto& [w, op] : eigenops) {
    if (op.dim() != d)
      throw std::invalid_argument("CouplingSpec: eigenop dim mismatch");
    double best = std::numeric_limits<double>::infinity();
    for (double ea : eig.values)
      for (double eb : eig.values) best = std::min(best, std::abs(w - (ea - eb)));
    if (best > 1e-9 * std::max(1.0, std::abs(w)))
      throw std::invalid_argument(
          "CouplingSpec: eigenop frequency is not a Bohr frequency");
    sum += op;
    beta_lookup(beta1, w, freq_tol);
    beta_lookup(beta3, w, freq_tol);
  }
  if (max_abs_diff(sum, coupling) > 1e-12)
    throw std::invalid_argument(
        "CouplingSpec: eigenops do not reconstruct the coupling operator");
}

Operator irreducible_two_point(const CouplingSpec& spec, const Operator& o1,
                               const Operator& o2, double t1, double t2) {
  if (t1 < 0.0 || t1 > t2)
    throw std::invalid_argument("irreducible_two_point: need 0 <= t1 <= t2");
  const std::vector<Operator> evolved = evolve_all(spec, {o1, o2}, {t1, t2});
  return pair_kernel_sum(spec, evolved, 0, 1, t1);
}

Operator w_pair_term(const CouplingSpec& spec, const std::vector<Operator>& ops,
                     const std::vector<double>& times, int j, int k) {
  if (ops.size() != times.size() || ops.empty())
    throw std::invalid_argument("w_pair_term: bad ops/times");
  if (j < 0 || k <= j || k >= static_cast<int>(ops.size()))
    throw std::invalid_argument("w_pair_term: need 0 <= j < k < N");
  const std::vector<Operator> evolved = evolve_all(spec, ops, times);
  return pair_kernel_sum(spec, evolved, j, k, std::min(times[j], times[k]));
}

ReducedOperator reduced_n_point(const CouplingSpec& spec,
                                const std::vector<Operator>& ops,
                                const std::vector<double>& times) {
  if (ops.empty())
    throw std::invalid_argument("reduced_n_point: empty operator list");
  if (ops.size() != times.size())
    throw std::invalid_argument("reduced_n_point: ops/times length mismatch");
  for (double t : times)
    if (t < 0.0) throw std::invalid_argument("reduced_n_point: negative time");
  const int n = static_cast<int>(ops.size());
  const std::vector<Operator> evolved = evolve_all(spec, ops, times);

  Operator value = Operator::identity(spec.model.dim());
  for (const Operator& o : evolved) value = value * o;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      value += pair_kernel_sum(spec, evolved, j, k,
                               std::min(times[j], times[k]));

  ReducedOperator out;
  out.value = value;
  out.times = times;
  out.order_lambda = 2;
  return out;
}

ReducedOperator reduced_two_point(const CouplingSpec& spec, const Operator& o1,
                                  const Operator& o2, double t1, double t2) {
  return reduced_n_point(spec, {o1, o2}, {t1, t2});
}

ReducedOperator reduced_three_point(const CouplingSpec& spec,
                                    const Operator& o1, const Operator& o2,
                                    const Operator& o3, double t1, double t2,
                                    double t3) {
  return reduced_n_point(spec, {o1, o2, o3}, {t1, t2, t3});
}

ReducedOperator reduced_four_point(const CouplingSpec& spec,
                                   const Operator& o1, const Operator& o2,
                                   const Operator& o3, const Operator& o4,
                                   double t1, double t2, double t3, double t4) {
  return reduced_n_point(spec, {o1, o2, o3, o4}, {t1, t2, t3, t4});
}

ReducedOperator otoc_reduced(const CouplingSpec& spec, const Operator& o1,
                             const Operator& a_mu, const Operator& o3,
                             const Operator& a_nu, double t1, double t2) {
  if (!(t2 > t1) || t1 < 0.0)
    throw std::invalid_argument("otoc_reduced: need t2 > t1 >= 0");
  return reduced_n_point(spec, {o1, a_mu, o3, a_nu}, {t1, t2, t1, t2});
}

Operator otoc_f_term(const CouplingSpec& spec, const Operator& o1,
                     const Operator& a_mu, const Operator& o3,
                     const Operator& a_nu, double t1, double t2) {
  if (!(t2 > t1) || t1 < 0.0)
    throw std::invalid_argument("otoc_f_term: need t2 > t1 >= 0");
  const std::vector<Operator> evolved =
      evolve_all(spec, {o1, a_mu, o3, a_nu}, {t1, t2, t1, t2});
  // d/dt2 of the explicit t2 prefactor of the equal-time pair (a_mu, a_nu).
  return pair_kernel_sum(spec, evolved, 1, 3, 1.0);
}

cplx correlator(const ReducedOperator& reduced, const Operator& rho_s) {
  if (rho_s.dim() != reduced.value.dim())
    throw std::invalid_argument("correlator: dim mismatch");
  if (!is_hermitian(rho_s, 1e-10))
    throw std::invalid_argument("correlator: rho_s not Hermitian");
  if (std::abs(rho_s.trace() - cplx{1.0, 0.0}) > 1e-10)
    throw std::invalid_argument("correlator: rho_s trace != 1");
  const EighResult eig = eigh(rho_s);
  for (double v : eig.values)
    if (v < -1e-10)
      throw std::invalid_argument("correlator: rho_s not positive");
  return trace_product(reduced.value, rho_s);
}

}  // namespace qregress
