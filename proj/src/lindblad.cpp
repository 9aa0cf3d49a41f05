#include "qregress/lindblad.hpp"

#include "qregress/expm.hpp"

namespace qregress {

SystemModel SystemModel::spin_boson(double omega0, double delta, double gamma) {
  SystemModel m;
  m.omega0 = omega0;
  m.delta = delta;
  m.gamma = gamma;
  m.hs = (0.5 * omega0) * pauli(Pauli::Z);
  m.h_shift = (0.5 * delta) * pauli(Pauli::Z);
  m.lindblad_ops.emplace_back(pauli(Pauli::Minus), gamma);
  m.validate();
  return m;
}

void SystemModel::validate() const {
  if (gamma < 0.0) throw std::invalid_argument("SystemModel: gamma < 0");
  for (const auto& [l, r] : lindblad_ops) {
    if (r < 0.0) throw std::invalid_argument("SystemModel: rate < 0");
    if (l.dim() != hs.dim())
      throw std::invalid_argument("SystemModel: jump operator dim mismatch");
  }
  if (!is_hermitian(hs, 1e-12))
    throw std::invalid_argument("SystemModel: hs not Hermitian");
}

Operator adjoint_generator(const SystemModel& model, const Operator& o) {
  if (o.dim() != model.dim())
    throw std::invalid_argument("adjoint_generator: dimension mismatch");
  const Operator h = model.hs + model.h_shift;
  Operator out = cplx{0.0, 1.0} * commutator(h, o);
  for (const auto& [l, r] : model.lindblad_ops) {
    if (r == 0.0) continue;
    const Operator ld = l.adjoint();
    const Operator ldl = ld * l;
    out += (0.5 * r) * (2.0 * (ld * o * l) - ldl * o - o * ldl);
  }
  return out;
}

namespace {

// Generator as a d^2 x d^2 matrix over row-major vectorized operators.
Operator superoperator(const SystemModel& model) {
  const int d = model.dim();
  Operator g(d * d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      Operator basis(d);
      basis(r, c) = 1.0;
      const Operator img = adjoint_generator(model, basis);
      const int col = r * d + c;
      for (int rr = 0; rr < d; ++rr)
        for (int cc = 0; cc < d; ++cc) g(rr * d + cc, col) = img(rr, cc);
    }
  return g;
}

}  // namespace

Operator evolve_one_point(const SystemModel& model, const Operator& o,
                          double t) {
  if (t < 0.0) throw std::invalid_argument("evolve_one_point: t < 0");
  if (o.dim() != model.dim())
    throw std::invalid_argument("evolve_one_point: dimension mismatch");
  const int d = model.dim();
  const Operator u = expm(superoperator(model), cplx{t, 0.0});
  Operator out(d);
  for (int rr = 0; rr < d; ++rr)
    for (int cc = 0; cc < d; ++cc) {
      cplx s{0.0, 0.0};
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) s += u(rr * d + cc, r * d + c) * o(r, c);
      out(rr, cc) = s;
    }
  return out;
}

double verify_closed_set(const SystemModel& model, const ClosedSet& set) {
  const size_t n = set.ops.size();
  if (set.m.size() != n)
    throw std::invalid_argument("verify_closed_set: M row count mismatch");
  for (const auto& row : set.m)
    if (row.size() != n)
      throw std::invalid_argument("verify_closed_set: M is not square");
  double worst = 0.0;
  for (size_t mu = 0; mu < n; ++mu) {
    Operator rhs(model.dim());
    for (size_t lam = 0; lam < n; ++lam) rhs += set.m[mu][lam] * set.ops[lam];
    worst = std::max(worst,
                     max_abs_diff(adjoint_generator(model, set.ops[mu]), rhs));
  }
  return worst;
}

ClosedSet closed_set_zi(const SystemModel& model) {
  ClosedSet s;
  s.ops = {pauli(Pauli::Z), pauli(Pauli::Id)};
  s.m = {{-model.gamma, -model.gamma}, {0.0, 0.0}};
  return s;
}

ClosedSet closed_set_xy(const SystemModel& model) {
  const double w = model.omega0_prime();
  ClosedSet s;
  s.ops = {pauli(Pauli::X), pauli(Pauli::Y)};
  s.m = {{-0.5 * model.gamma, -w}, {w, -0.5 * model.gamma}};
  return s;
}

Operator evolve_one_point_rk4(const SystemModel& model, const Operator& o,
                              double t, double dt) {
  Operator y = o;
  const int steps = std::max(1, static_cast<int>(std::ceil(t / dt)));
  const double h = t / steps;
  for (int i = 0; i < steps; ++i) {
    const Operator k1 = adjoint_generator(model, y);
    const Operator k2 = adjoint_generator(model, y + (0.5 * h) * k1);
    const Operator k3 = adjoint_generator(model, y + (0.5 * h) * k2);
    const Operator k4 = adjoint_generator(model, y + cplx{h, 0.0} * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

}  // namespace qregress
