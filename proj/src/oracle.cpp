#include "qregress/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qregress/eigh.hpp"

namespace qregress {

namespace {

constexpr long long kMaxDim = 4096;

std::vector<cplx> matvec(const Operator& a, const std::vector<cplx>& x) {
  const int n = a.dim();
  std::vector<cplx> y(n, cplx{0.0, 0.0});
  for (int r = 0; r < n; ++r) {
    cplx acc{0.0, 0.0};
    for (int c = 0; c < n; ++c) acc += a(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

void check_density(const Operator& rho_s) {
  if (rho_s.dim() != 2) throw std::invalid_argument("rho_s must be 2x2");
  if (!is_hermitian(rho_s, 1e-10))
    throw std::invalid_argument("rho_s must be Hermitian");
  if (std::abs(rho_s.trace() - 1.0) > 1e-10)
    throw std::invalid_argument("rho_s must have unit trace");
  cplx det = rho_s(0, 0) * rho_s(1, 1) - rho_s(0, 1) * rho_s(1, 0);
  if (rho_s(0, 0).real() < -1e-10 || rho_s(1, 1).real() < -1e-10 ||
      det.real() < -1e-10)
    throw std::invalid_argument("rho_s must be positive semidefinite");
}

// Excitation count of basis state s*B + m (qubit |e> = 0 counts one).
int excitation(long long idx, long long bath_dim, int levels, int n_modes) {
  int exc = idx / bath_dim == 0 ? 1 : 0;
  long long m = idx % bath_dim;
  for (int k = 0; k < n_modes; ++k) {
    exc += static_cast<int>(m % levels);
    m /= levels;
  }
  return exc;
}

}  // namespace

long long TruncatedBath::dim() const {
  long long d = 2;
  for (size_t k = 0; k < modes.size(); ++k) {
    d *= fock_cutoff + 1;
    if (d > kMaxDim) return d;
  }
  return d;
}

TruncatedBath TruncatedBath::flat_band(double center, double gamma_target,
                                       double bandwidth, int n_modes,
                                       int fock_cutoff) {
  if (n_modes < 1) throw std::invalid_argument("n_modes must be positive");
  if (gamma_target <= 0.0 || bandwidth <= 0.0)
    throw std::invalid_argument("gamma_target and bandwidth must be positive");
  TruncatedBath bath;
  bath.fock_cutoff = fock_cutoff;
  const double width = bandwidth;
  const double dw = width / n_modes;
  const double g = std::sqrt(gamma_target * dw / (2.0 * std::numbers::pi));
  for (int k = 0; k < n_modes; ++k)
    bath.modes.emplace_back(center - 0.5 * width + (k + 0.5) * dw, g);
  return bath;
}

Operator build_hamiltonian(const SystemModel& model,
                           const TruncatedBath& bath) {
  if (model.dim() != 2)
    throw std::invalid_argument("oracle supports two-level systems only");
  if (bath.fock_cutoff < 1)
    throw std::invalid_argument("fock_cutoff must be at least 1");
  const long long dim = bath.dim();
  if (dim > kMaxDim)
    throw std::invalid_argument("truncated bath dimension exceeds 4096");
  const long long bd = dim / 2;
  const int levels = bath.fock_cutoff + 1;
  const int nm = static_cast<int>(bath.modes.size());

  Operator h(static_cast<int>(dim));
  for (long long m = 0; m < bd; ++m) {
    for (int s = 0; s < 2; ++s)
      for (int sp = 0; sp < 2; ++sp)
        h(s * bd + m, sp * bd + m) += model.hs(s, sp);
    long long rest = m;
    long long step = 1;
    for (int k = 0; k < nm; ++k) {
      const int n = static_cast<int>(rest % levels);
      rest /= levels;
      const double wk = bath.modes[k].first;
      const double gk = bath.modes[k].second;
      h(0 * bd + m, 0 * bd + m) += wk * n;
      h(1 * bd + m, 1 * bd + m) += wk * n;
      if (n < bath.fock_cutoff) {
        // g_k b_k^dag sigma_-: |e, n_k> -> |g, n_k + 1>, plus conjugate
        const double amp = gk * std::sqrt(n + 1.0);
        h(1 * bd + m + step, 0 * bd + m) += amp;
        h(0 * bd + m, 1 * bd + m + step) += amp;
      }
      step *= levels;
    }
  }
  return h;
}

Oracle::Oracle(const SystemModel& model, const TruncatedBath& bath) {
  h_ = build_hamiltonian(model, bath);
  const int dim = h_.dim();
  bath_dim_ = dim / 2;
  const int levels = bath.fock_cutoff + 1;
  const int nm = static_cast<int>(bath.modes.size());

  // H conserves the total excitation number; diagonalize sector by sector
  // when the built matrix really is block diagonal in that grouping.
  std::vector<int> exc(dim);
  for (int i = 0; i < dim; ++i)
    exc[i] = excitation(i, bath_dim_, levels, nm);
  bool block = true;
  for (int r = 0; r < dim && block; ++r)
    for (int c = 0; c < dim; ++c)
      if (exc[r] != exc[c] && std::abs(h_(r, c)) > 1e-14) {
        block = false;
        break;
      }

  evals_.assign(dim, 0.0);
  vecs_ = Operator(dim);
  if (!block) {
    auto full = eigh(h_);
    evals_ = full.values;
    vecs_ = full.vectors;
  } else {
    int max_exc = 0;
    for (int e : exc) max_exc = std::max(max_exc, e);
    int col = 0;
    for (int sector = 0; sector <= max_exc; ++sector) {
      std::vector<int> idx;
      for (int i = 0; i < dim; ++i)
        if (exc[i] == sector) idx.push_back(i);
      if (idx.empty()) continue;
      const int n = static_cast<int>(idx.size());
      Operator block_h(n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) block_h(r, c) = h_(idx[r], idx[c]);
      auto res = eigh(block_h);
      for (int j = 0; j < n; ++j) {
        evals_[col + j] = res.values[j];
        for (int r = 0; r < n; ++r)
          vecs_(idx[r], col + j) = res.vectors(r, j);
      }
      col += n;
    }
  }
  vecs_adj_ = vecs_.adjoint();
}

cplx Oracle::correlator(const std::vector<Operator>& ops,
                        const std::vector<double>& times,
                        const Operator& rho_s) const {
  if (ops.empty() || ops.size() != times.size())
    throw std::invalid_argument("need one time per operator");
  for (const auto& o : ops)
    if (o.dim() != 2)
      throw std::invalid_argument("correlator operators must be 2x2");
  check_density(rho_s);

  const int dim = h_.dim();
  const long long bd = bath_dim_;
  cplx total{0.0, 0.0};
  for (int a = 0; a < 2; ++a) {
    if (std::abs(rho_s(0, a)) < 1e-300 && std::abs(rho_s(1, a)) < 1e-300)
      continue;
    std::vector<cplx> psi(dim, cplx{0.0, 0.0});
    psi[a * bd] = 1.0;
    for (int i = static_cast<int>(ops.size()) - 1; i >= 0; --i) {
      const double t = times[i];
      // U(t) = V e^{-iEt} V^dag
      auto phi = matvec(vecs_adj_, psi);
      for (int j = 0; j < dim; ++j)
        phi[j] *= std::exp(cplx{0.0, -evals_[j] * t});
      psi = matvec(vecs_, phi);
      std::vector<cplx> applied(dim);
      for (long long m = 0; m < bd; ++m)
        for (int s = 0; s < 2; ++s)
          applied[s * bd + m] =
              ops[i](s, 0) * psi[0 * bd + m] + ops[i](s, 1) * psi[1 * bd + m];
      phi = matvec(vecs_adj_, applied);
      for (int j = 0; j < dim; ++j)
        phi[j] *= std::exp(cplx{0.0, evals_[j] * t});
      psi = matvec(vecs_, phi);
    }
    // <b, vac| P |a, vac> weighted by rho_s(b, a)
    for (int b = 0; b < 2; ++b) total += rho_s(b, a) * psi[b * bd];
  }
  return total;
}

std::vector<cplx> Oracle::expectation_curve(const Operator& op,
                                            const Operator& rho_s, double dt,
                                            int n_steps) const {
  if (op.dim() != 2)
    throw std::invalid_argument("expectation operator must be 2x2");
  if (dt <= 0.0 || n_steps < 0)
    throw std::invalid_argument("need dt > 0 and n_steps >= 0");
  check_density(rho_s);

  const int dim = h_.dim();
  const long long bd = bath_dim_;
  // eigenbasis components of |a, vac>
  std::vector<std::vector<cplx>> base(2);
  for (int a = 0; a < 2; ++a) {
    std::vector<cplx> e(dim, cplx{0.0, 0.0});
    e[a * bd] = 1.0;
    base[a] = matvec(vecs_adj_, e);
  }
  std::vector<cplx> curve;
  curve.reserve(n_steps + 1);
  for (int k = 0; k <= n_steps; ++k) {
    const double t = k * dt;
    std::vector<std::vector<cplx>> chi(2);
    for (int a = 0; a < 2; ++a) {
      auto phi = base[a];
      for (int j = 0; j < dim; ++j)
        phi[j] *= std::exp(cplx{0.0, -evals_[j] * t});
      chi[a] = matvec(vecs_, phi);
    }
    cplx val{0.0, 0.0};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        if (std::abs(rho_s(b, a)) < 1e-300) continue;
        cplx braket{0.0, 0.0};
        for (long long m = 0; m < bd; ++m)
          for (int s = 0; s < 2; ++s)
            for (int sp = 0; sp < 2; ++sp)
              braket += std::conj(chi[b][s * bd + m]) * op(s, sp) *
                        chi[a][sp * bd + m];
        val += rho_s(b, a) * braket;
      }
    curve.push_back(val);
  }
  return curve;
}

cplx exact_correlator(const SystemModel& model, const TruncatedBath& bath,
                      const std::vector<Operator>& ops,
                      const std::vector<double>& times, const Operator& rho_s) {
  return Oracle(model, bath).correlator(ops, times, rho_s);
}

CutoffReport cutoff_convergence_check(const SystemModel& model,
                                      const TruncatedBath& bath,
                                      const std::vector<Operator>& ops,
                                      const std::vector<double>& times,
                                      const Operator& rho_s) {
  if (bath.fock_cutoff < 2)
    throw std::invalid_argument("convergence check needs fock_cutoff >= 2");
  TruncatedBath lower = bath;
  lower.fock_cutoff = bath.fock_cutoff - 1;
  CutoffReport rep;
  rep.value_hi = exact_correlator(model, bath, ops, times, rho_s);
  rep.value_lo = exact_correlator(model, lower, ops, times, rho_s);
  rep.deviation = std::abs(rep.value_hi - rep.value_lo);
  return rep;
}

}  // namespace qregress
