#include "qregress/nonmarkov.hpp"

#include <cmath>
#include <numbers>

#include "qregress/expm.hpp"
#include "qregress/quadrature.hpp"

namespace qregress {

BathCorrelation BathCorrelation::flat_band(double center, double gamma_target,
                                           double bandwidth, int n_modes) {
  if (n_modes < 1 || bandwidth <= 0.0 || gamma_target < 0.0)
    throw std::invalid_argument("flat_band: bad parameters");
  BathCorrelation b;
  const double dw = bandwidth / n_modes;
  const double g = std::sqrt(gamma_target * dw / (2.0 * std::numbers::pi));
  for (int k = 0; k < n_modes; ++k) {
    const double w = center - 0.5 * bandwidth + (k + 0.5) * dw;
    b.modes.emplace_back(w, cplx{g, 0.0});
  }
  return b;
}

BathCorrelation BathCorrelation::single_mode(double omega, cplx g) {
  BathCorrelation b;
  b.modes.emplace_back(omega, g);
  return b;
}

cplx alpha(const BathCorrelation& bath, double tau) {
  cplx s{0.0, 0.0};
  for (const auto& [w, g] : bath.modes)
    s += std::norm(g) * std::exp(cplx{0.0, -w * tau});
  return s;
}

double BathCorrelation::tau_b() const {
  const double a0 = alpha(*this, 0.0).real();
  if (a0 <= 0.0) return 0.0;
  double wmax = 1.0;
  for (const auto& [w, g] : modes) wmax = std::max(wmax, std::abs(w));
  const double step = 0.01 / wmax;
  for (int i = 1; i <= 1000000; ++i) {
    const double tau = i * step;
    if (std::abs(alpha(*this, tau)) <= 0.01 * a0) return tau;
  }
  return 1000000 * step;
}

double lamb_shift_sum(const BathCorrelation& bath, double omega0) {
  double s = 0.0;
  for (const auto& [w, g] : bath.modes)
    if (w != omega0) s += std::norm(g) / (omega0 - w);
  return s;
}

namespace {

const Operator& jump_op(const SystemModel& model) {
  if (model.lindblad_ops.empty())
    throw std::invalid_argument("nonmarkov: model has no coupling operator");
  return model.lindblad_ops.front().first;
}

// Ltilde(-tau) = e^{-i Hs tau} L e^{i Hs tau}
Operator ltilde_minus(const SystemModel& model, double tau) {
  const Operator u = expm(model.hs, cplx{0.0, -tau});
  return u * jump_op(model) * u.adjoint();
}

Operator generator_with_kernel(const SystemModel& model, const Operator& o,
                               const Operator& c) {
  const Operator& l = jump_op(model);
  const Operator ld = l.adjoint();
  return cplx{0.0, 1.0} * commutator(model.hs, o) + commutator(ld, o) * c +
         c.adjoint() * commutator(o, l);
}

cplx gamma_integral(const SystemModel& model, const BathCorrelation& bath,
                    double t) {
  const double w0 = model.omega0;
  return integrate(
      [&](double tau) { return alpha(bath, tau) * std::exp(cplx{0.0, w0 * tau}); },
      0.0, t);
}

// Irreducible part from already-evolved one-point operators.
Operator irreducible_from_evolved(const BathCorrelation& bath,
                                  const SystemModel& model, const Operator& o1,
                                  const Operator& o2, double t1, double t2) {
  const int d = model.dim();
  Operator out(d);
  if (t2 == 0.0 || t1 == 0.0) return out;
  auto x = [&](double tau1) {
    return commutator(o1, ltilde_minus(model, tau1).adjoint());
  };
  auto y = [&](double tau2) {
    return commutator(ltilde_minus(model, tau2), o2);
  };
  QuadOptions opt;
  opt.abs_tol = 1e-10;
  // alpha is a finite mode sum, so the double integral factorizes per mode.
  for (const auto& [w, g] : bath.modes) {
    const Operator xi = integrate_matrix(
        [&](double tau1) {
          return std::exp(cplx{0.0, w * tau1}) * x(tau1);
        },
        0.0, t1, d, opt);
    const Operator yi = integrate_matrix(
        [&](double tau2) {
          return std::exp(cplx{0.0, -w * tau2}) * y(tau2);
        },
        0.0, t2, d, opt);
    out += std::norm(g) * (xi * yi);
  }
  return out;
}

}  // namespace

Operator memory_kernel_integral(const SystemModel& model,
                                const BathCorrelation& bath, double t) {
  QuadOptions opt;
  opt.abs_tol = 1e-10;
  return integrate_matrix(
      [&](double tau) { return alpha(bath, tau) * ltilde_minus(model, tau); },
      0.0, t, model.dim(), opt);
}

Operator nonmarkov_generator(const SystemModel& model,
                             const BathCorrelation& bath, const Operator& o_s,
                             double t) {
  if (t < 0.0) throw std::invalid_argument("nonmarkov_generator: t < 0");
  if (o_s.dim() != model.dim())
    throw std::invalid_argument("nonmarkov_generator: dim mismatch");
  return generator_with_kernel(model, o_s, memory_kernel_integral(model, bath, t));
}

Operator evolve_one_point_nm(const SystemModel& model,
                             const BathCorrelation& bath, const Operator& o,
                             double t, double dt) {
  if (t < 0.0 || dt <= 0.0)
    throw std::invalid_argument("evolve_one_point_nm: bad t or dt");
  if (t == 0.0) return o;
  if (dt > t / 10.0)
    throw std::invalid_argument("evolve_one_point_nm: dt > t/10");
  const int steps = static_cast<int>(std::ceil(t / dt));
  const double h = t / steps;
  // One 15-node Gauss panel per half-step: the integrand varies on the scale
  // 1/omega_max, far longer than dt/2, so a single panel is exact to
  // machine precision here.
  const GaussRule& rule = gauss_rule(15);
  auto seg = [&](double a, double b) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    Operator s(model.dim());
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      const double tau = mid + half * rule.nodes[i];
      s += (half * rule.weights[i] * alpha(bath, tau)) *
           ltilde_minus(model, tau);
    }
    return s;
  };
  Operator y = o;
  Operator c0(model.dim());
  for (int i = 0; i < steps; ++i) {
    const double s = i * h;
    const Operator ch = c0 + seg(s, s + 0.5 * h);
    const Operator c1 = ch + seg(s + 0.5 * h, s + h);
    const Operator k1 = generator_with_kernel(model, y, c0);
    const Operator k2 = generator_with_kernel(model, y + (0.5 * h) * k1, ch);
    const Operator k3 = generator_with_kernel(model, y + (0.5 * h) * k2, ch);
    const Operator k4 = generator_with_kernel(model, y + cplx{h, 0.0} * k3, c1);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    c0 = c1;
  }
  return y;
}

TimeDependentClosedSet nonmarkov_closed_set_xy(const SystemModel& model,
                                               const BathCorrelation& bath) {
  TimeDependentClosedSet s;
  s.ops = {pauli(Pauli::X), pauli(Pauli::Y)};
  const double w0 = model.omega0;
  s.m_of_t = [model, bath, w0](double t) {
    const cplx g = gamma_integral(model, bath, t);
    const double re = g.real(), im = g.imag();
    return std::vector<std::vector<cplx>>{{-re, -(w0 + im)}, {w0 + im, -re}};
  };
  return s;
}

TimeDependentClosedSet nonmarkov_closed_set_zi(const SystemModel& model,
                                               const BathCorrelation& bath) {
  TimeDependentClosedSet s;
  s.ops = {pauli(Pauli::Z), pauli(Pauli::Id)};
  s.m_of_t = [model, bath](double t) {
    const double re = gamma_integral(model, bath, t).real();
    return std::vector<std::vector<cplx>>{{-2.0 * re, -2.0 * re}, {0.0, 0.0}};
  };
  return s;
}

MFitResult extract_m(const SystemModel& model, const BathCorrelation& bath,
                     const std::vector<Operator>& ops, double t, double dt) {
  const int n = static_cast<int>(ops.size());
  if (n == 0) throw std::invalid_argument("extract_m: empty operator set");
  std::vector<Operator> ev;
  for (const Operator& a : ops)
    ev.push_back(evolve_one_point_nm(model, bath, a, t, dt));

  // Gram matrix in the Frobenius inner product.
  std::vector<std::vector<cplx>> gram(n, std::vector<cplx>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gram[i][j] = trace_product(ev[i].adjoint(), ev[j]);

  MFitResult out;
  out.m.assign(n, std::vector<cplx>(n));
  for (int mu = 0; mu < n; ++mu) {
    const Operator target = nonmarkov_generator(model, bath, ev[mu], t);
    std::vector<cplx> b(n);
    for (int i = 0; i < n; ++i)
      b[i] = trace_product(ev[i].adjoint(), target);
    // solve gram * x = b by Gaussian elimination with partial pivoting
    auto a = gram;
    std::vector<cplx> x = b;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int col = 0; col < n; ++col) {
      int piv = col;
      for (int r = col + 1; r < n; ++r)
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      std::swap(a[col], a[piv]);
      std::swap(x[col], x[piv]);
      if (std::abs(a[col][col]) < 1e-300)
        throw std::runtime_error("extract_m: singular Gram matrix");
      for (int r = col + 1; r < n; ++r) {
        const cplx f = a[r][col] / a[col][col];
        for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        x[r] -= f * x[col];
      }
    }
    for (int r = n - 1; r >= 0; --r) {
      for (int c = r + 1; c < n; ++c) x[r] -= a[r][c] * x[c];
      x[r] /= a[r][r];
    }
    out.m[mu] = x;
    Operator fit(model.dim());
    for (int i = 0; i < n; ++i) fit += x[i] * ev[i];
    out.residual = std::max(out.residual, max_abs_diff(fit, target));
  }
  return out;
}

Operator nonmarkov_irreducible_two_point(const BathCorrelation& bath,
                                         const SystemModel& model,
                                         const Operator& o1,
                                         const Operator& o2, double t1,
                                         double t2, double dt) {
  if (t2 < 0.0 || t1 < t2)
    throw std::invalid_argument(
        "nonmarkov_irreducible_two_point: need t1 >= t2 >= 0");
  const Operator e1 = evolve_one_point_nm(model, bath, o1, t1, dt);
  const Operator e2 = evolve_one_point_nm(model, bath, o2, t2, dt);
  return irreducible_from_evolved(bath, model, e1, e2, t1, t2);
}

Operator nonmarkov_qrt_correction(const BathCorrelation& bath,
                                  const SystemModel& model,
                                  const Operator& a_mu_evolved,
                                  const Operator& o_evolved, double t1,
                                  double t2) {
  const int d = model.dim();
  if (t2 == 0.0) return Operator(d);
  const Operator xfix =
      commutator(a_mu_evolved, ltilde_minus(model, t1).adjoint());
  QuadOptions opt;
  opt.abs_tol = 1e-10;
  return integrate_matrix(
      [&](double tau2) {
        return alpha(bath, tau2 - t1) * xfix *
               commutator(ltilde_minus(model, tau2), o_evolved);
      },
      0.0, t2, d, opt);
}

Operator nonmarkov_qrt_rhs(const BathCorrelation& bath,
                           const SystemModel& model,
                           const TimeDependentClosedSet& set,
                           const Operator& o, int mu, double t1, double t2,
                           bool include_corrections, double dt) {
  if (!(t1 > t2) || t2 < 0.0)
    throw std::invalid_argument("nonmarkov_qrt_rhs: need t1 > t2 >= 0");
  if (mu < 0 || mu >= static_cast<int>(set.ops.size()))
    throw std::invalid_argument("nonmarkov_qrt_rhs: mu out of range");
  const auto m = set.m_of_t(t1);
  const Operator oe = evolve_one_point_nm(model, bath, o, t2, dt);
  Operator rhs(model.dim());
  for (size_t lam = 0; lam < set.ops.size(); ++lam) {
    const Operator ae = evolve_one_point_nm(model, bath, set.ops[lam], t1, dt);
    rhs += m[mu][lam] *
           (ae * oe + irreducible_from_evolved(bath, model, ae, oe, t1, t2));
  }
  if (include_corrections) {
    const Operator amue =
        evolve_one_point_nm(model, bath, set.ops[mu], t1, dt);
    rhs += nonmarkov_qrt_correction(bath, model, amue, oe, t1, t2);
  }
  return rhs;
}

NonMarkovQrtReport nonmarkov_qrt_report(const BathCorrelation& bath,
                                        const SystemModel& model,
                                        const TimeDependentClosedSet& set,
                                        const Operator& o, int mu, double t1,
                                        double t2, bool include_corrections,
                                        double h, double dt) {
  if (!(t1 > t2) || t2 < 0.0)
    throw std::invalid_argument("nonmarkov_qrt_report: need t1 > t2 >= 0");
  const Operator oe = evolve_one_point_nm(model, bath, o, t2, dt);
  auto two_point = [&](double t) {
    const Operator ae = evolve_one_point_nm(model, bath, set.ops[mu], t, dt);
    return ae * oe + irreducible_from_evolved(bath, model, ae, oe, t, t2);
  };
  const Operator p = two_point(t1 + h);
  const Operator m = two_point(t1 - h);
  Operator lhs(model.dim());
  for (int r = 0; r < model.dim(); ++r)
    for (int c = 0; c < model.dim(); ++c)
      lhs(r, c) = (p(r, c) - m(r, c)) / (2.0 * h);

  const Operator main =
      nonmarkov_qrt_rhs(bath, model, set, o, mu, t1, t2, false, dt);
  const Operator amue = evolve_one_point_nm(model, bath, set.ops[mu], t1, dt);
  const Operator corr =
      nonmarkov_qrt_correction(bath, model, amue, oe, t1, t2);

  NonMarkovQrtReport rep;
  rep.lhs = lhs;
  rep.rhs = include_corrections ? main + corr : main;
  rep.residual = max_abs_diff(rep.lhs, rep.rhs);
  rep.main_norm = max_abs(main);
  rep.correction_norm = max_abs(corr);
  rep.step = h;
  return rep;
}

}  // namespace qregress
