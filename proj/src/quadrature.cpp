#include "qregress/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace qregress {

const GaussRule& gauss_rule(int order) {
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    // Newton iteration on P_n from the Chebyshev initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

namespace {

cplx panel(const std::function<cplx(double)>& f, double a, double b,
           const GaussRule& rule) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  cplx s{0.0, 0.0};
  for (size_t i = 0; i < rule.nodes.size(); ++i)
    s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * s;
}

cplx adapt(const std::function<cplx(double)>& f, double a, double b, cplx whole,
           double tol, int depth, const GaussRule& rule, double* worst) {
  const double mid = 0.5 * (a + b);
  const cplx left = panel(f, a, mid, rule);
  const cplx right = panel(f, mid, b, rule);
  const double err = std::abs(left + right - whole);
  if (err <= tol || depth <= 0) {
    if (err > tol) *worst = std::max(*worst, err);
    return left + right;
  }
  return adapt(f, a, mid, left, 0.5 * tol, depth - 1, rule, worst) +
         adapt(f, mid, b, right, 0.5 * tol, depth - 1, rule, worst);
}

}  // namespace

cplx integrate(const std::function<cplx(double)>& f, double a, double b,
               const QuadOptions& opt) {
  if (a == b) return cplx{0.0, 0.0};
  const GaussRule& rule = gauss_rule(opt.order);
  double worst = 0.0;
  const cplx whole = panel(f, a, b, rule);
  const cplx result =
      adapt(f, a, b, whole, opt.abs_tol, opt.max_depth, rule, &worst);
  if (worst > 0.0) {
    std::ostringstream msg;
    msg << "quadrature did not converge: requested abs tol " << opt.abs_tol
        << ", achieved " << worst;
    throw std::runtime_error(msg.str());
  }
  return result;
}

Operator integrate_matrix(const std::function<Operator(double)>& f, double a,
                          double b, int dim, const QuadOptions& opt) {
  Operator out(dim);
  // Integrands here are cheap 2x2 matrices; integrate entrywise.
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      out(r, c) =
          integrate([&](double t) { return f(t)(r, c); }, a, b, opt);
  return out;
}

}  // namespace qregress
