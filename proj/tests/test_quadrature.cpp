#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qregress/quadrature.hpp"

using namespace qregress;

TEST_CASE("gauss rule integrates polynomials exactly") {
  const auto& rule = gauss_rule(5);
  double s = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    s += rule.weights[i] * (x * x * x * x * x * x);  // x^6, degree 6 < 2*5-1
  }
  CHECK(s == doctest::Approx(2.0 / 7.0).epsilon(1e-12));
  double w = 0.0;
  for (double wi : rule.weights) w += wi;
  CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("integrate sin over [0, pi]") {
  cplx v = integrate([](double x) { return cplx{std::sin(x), 0.0}; }, 0.0,
                     std::numbers::pi);
  CHECK(std::abs(v - 2.0) <= 1e-10);
}

TEST_CASE("oscillatory exponential against the closed form") {
  const double w = 37.0, T = 5.0;
  cplx v = integrate([w](double t) { return std::exp(cplx{0.0, w * t}); }, 0.0,
                     T);
  cplx ref = (std::exp(cplx{0.0, w * T}) - 1.0) / cplx{0.0, w};
  CHECK(std::abs(v - ref) <= 1e-10);
}

TEST_CASE("depth limit reports failure") {
  QuadOptions opt;
  opt.max_depth = 3;
  opt.abs_tol = 1e-14;
  CHECK_THROWS_AS(
      integrate([](double x) { return cplx{std::pow(x + 1e-12, -0.9), 0.0}; },
                0.0, 1.0, opt),
      std::runtime_error);
}

TEST_CASE("matrix integrand matches per-entry scalar quadrature") {
  auto f = [](double t) {
    Operator m(2);
    m(0, 0) = std::exp(cplx{0.0, 3.0 * t});
    m(0, 1) = {t * t, 0.0};
    m(1, 0) = {0.0, std::cos(t)};
    m(1, 1) = {1.0, 0.0};
    return m;
  };
  Operator v = integrate_matrix(f, 0.0, 2.0, 2);
  cplx e00 = integrate([](double t) { return std::exp(cplx{0.0, 3.0 * t}); },
                       0.0, 2.0);
  CHECK(std::abs(v(0, 0) - e00) <= 1e-10);
  CHECK(std::abs(v(0, 1) - cplx{8.0 / 3.0, 0.0}) <= 1e-10);
  CHECK(std::abs(v(1, 0) - cplx{0.0, std::sin(2.0)}) <= 1e-10);
  CHECK(std::abs(v(1, 1) - 2.0) <= 1e-10);
}
