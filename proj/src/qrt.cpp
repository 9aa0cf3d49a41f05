#include "qregress/qrt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace qregress {

namespace {

std::vector<Operator> with_inserted(const std::vector<Operator>& others,
                                    int slot, const Operator& a) {
  std::vector<Operator> ops;
  ops.reserve(others.size() + 1);
  for (int i = 0; i < static_cast<int>(others.size()) + 1; ++i) {
    if (i == slot)
      ops.push_back(a);
    else
      ops.push_back(others[i < slot ? i : i - 1]);
  }
  return ops;
}

Operator central_diff(const std::function<Operator(double)>& f, double t,
                      double h, bool richardson) {
  auto d = [&](double step) {
    Operator p = f(t + step);
    Operator m = f(t - step);
    Operator out(p.dim());
    const double inv = 1.0 / (2.0 * step);
    for (int r = 0; r < p.dim(); ++r)
      for (int c = 0; c < p.dim(); ++c)
        out(r, c) = (p(r, c) - m(r, c)) * inv;
    return out;
  };
  if (!richardson) return d(h);
  const Operator dh = d(h);
  const Operator dh2 = d(0.5 * h);
  Operator out(dh.dim());
  for (int r = 0; r < dh.dim(); ++r)
    for (int c = 0; c < dh.dim(); ++c)
      out(r, c) = (4.0 * dh2(r, c) - dh(r, c)) / 3.0;
  return out;
}

QrtReport finish(Operator lhs, Operator rhs, double h,
                 std::vector<double> times, int diff_index, int mu) {
  QrtReport rep;
  rep.residual = max_abs_diff(lhs, rhs);
  rep.lhs = std::move(lhs);
  rep.rhs = std::move(rhs);
  rep.step = h;
  rep.times = std::move(times);
  rep.diff_index = diff_index;
  rep.mu = mu;
  return rep;
}

}  // namespace

QrtReport qrt_n_point(const CouplingSpec& spec, const ClosedSet& set,
                      const std::vector<Operator>& others, int mu, int slot,
                      const std::vector<double>& times,
                      const QrtOptions& opt) {
  const int n = static_cast<int>(times.size());
  if (static_cast<int>(others.size()) != n - 1)
    throw std::invalid_argument("qrt_n_point: need N-1 fixed operators");
  if (slot < 0 || slot >= n)
    throw std::invalid_argument("qrt_n_point: slot out of range");
  if (mu < 0 || mu >= static_cast<int>(set.ops.size()))
    throw std::invalid_argument("qrt_n_point: mu out of range");
  if (opt.h <= 0.0) throw std::invalid_argument("qrt_n_point: h must be > 0");
  for (int i = 0; i < n; ++i)
    if (i != slot && !(times[slot] > times[i]) && !opt.allow_non_maximal)
      throw std::invalid_argument(
          "qrt_n_point: differentiated time is not the strict maximum");

  const Operator lhs = central_diff(
      [&](double t) {
        std::vector<double> tv = times;
        tv[slot] = t;
        return reduced_n_point(spec, with_inserted(others, slot, set.ops[mu]),
                               tv)
            .value;
      },
      times[slot], opt.h, opt.richardson);

  Operator rhs(spec.model.dim());
  for (size_t lam = 0; lam < set.ops.size(); ++lam)
    rhs += set.m[mu][lam] *
           reduced_n_point(spec, with_inserted(others, slot, set.ops[lam]),
                           times)
               .value;
  return finish(lhs, rhs, opt.h, times, slot, mu);
}

QrtReport qrt_two_point(const CouplingSpec& spec, const ClosedSet& set,
                        const Operator& o, int mu, double t1, double t2,
                        TwoPointOrder order, const QrtOptions& opt) {
  if (!(t2 > t1) || t1 < 0.0)
    throw std::invalid_argument("qrt_two_point: need t2 > t1 >= 0");
  if (order == TwoPointOrder::OpFirst)
    return qrt_n_point(spec, set, {o}, mu, 1, {t1, t2}, opt);
  return qrt_n_point(spec, set, {o}, mu, 0, {t2, t1}, opt);
}

QrtReport qrt_three_point(const CouplingSpec& spec, const ClosedSet& set,
                          const Operator& o1, const Operator& o2, int mu,
                          double t1, double t2, double t3,
                          const QrtOptions& opt) {
  return qrt_n_point(spec, set, {o1, o2}, mu, 2, {t1, t2, t3}, opt);
}

QrtReport qrt_four_point(const CouplingSpec& spec, const ClosedSet& set,
                         const Operator& o1, const Operator& o2,
                         const Operator& o3, int mu, double t1, double t2,
                         double t3, double t4, const QrtOptions& opt) {
  return qrt_n_point(spec, set, {o1, o2, o3}, mu, 3, {t1, t2, t3, t4}, opt);
}

QrtReport qrt_otoc(const CouplingSpec& spec, const ClosedSet& set_mu,
                   const ClosedSet& set_nu, const Operator& o1,
                   const Operator& o3, int mu, int nu, double t1, double t2,
                   bool include_f_term, const QrtOptions& opt) {
  if (!(t2 > t1) || t1 < 0.0)
    throw std::invalid_argument("qrt_otoc: need t2 > t1 >= 0");
  if (mu < 0 || mu >= static_cast<int>(set_mu.ops.size()) || nu < 0 ||
      nu >= static_cast<int>(set_nu.ops.size()))
    throw std::invalid_argument("qrt_otoc: mu/nu out of range");

  const Operator& a_mu = set_mu.ops[mu];
  const Operator& a_nu = set_nu.ops[nu];

  const Operator lhs = central_diff(
      [&](double t) {
        return otoc_reduced(spec, o1, a_mu, o3, a_nu, t1, t).value;
      },
      t2, opt.h, opt.richardson);

  Operator rhs(spec.model.dim());
  for (size_t lam = 0; lam < set_mu.ops.size(); ++lam)
    rhs += set_mu.m[mu][lam] *
           otoc_reduced(spec, o1, set_mu.ops[lam], o3, a_nu, t1, t2).value;
  for (size_t lam = 0; lam < set_nu.ops.size(); ++lam)
    rhs += set_nu.m[nu][lam] *
           otoc_reduced(spec, o1, a_mu, o3, set_nu.ops[lam], t1, t2).value;
  if (include_f_term)
    rhs += otoc_f_term(spec, o1, a_mu, o3, a_nu, t1, t2);

  return finish(lhs, rhs, opt.h, {t1, t2, t1, t2}, 1, mu);
}

}  // namespace qregress
