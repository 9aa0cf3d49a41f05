#pragma once

#include <functional>

#include "qregress/matrix.hpp"

namespace qregress {

/// Gauss-Legendre nodes/weights on [-1, 1], computed once per order.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_rule(int order);

struct QuadOptions {
  double abs_tol = 1e-10;
  int order = 15;
  int max_depth = 28;
};

/// Adaptive bisection quadrature; throws std::runtime_error with the
/// achieved tolerance if the depth limit is hit before convergence.
/// Node placement is deterministic.
cplx integrate(const std::function<cplx(double)>& f, double a, double b,
               const QuadOptions& opt = {});

/// Matrix-valued version; `dim` is the integrand dimension.
Operator integrate_matrix(const std::function<Operator(double)>& f, double a,
                          double b, int dim, const QuadOptions& opt = {});

}  // namespace qregress
