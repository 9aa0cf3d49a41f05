#include "qregress/eigh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qregress {

EighResult eigh(const Operator& a, double tol) {
  if (!is_hermitian(a, 1e-10))
    throw std::invalid_argument("eigh: matrix is not Hermitian");
  const int n = a.dim();
  Operator m = a;
  Operator v = Operator::identity(n);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(m(p, q)));
    if (off <= tol) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = m(p, q);
        if (std::abs(apq) <= tol * 1e-2) continue;
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        // Unitary 2x2 rotation diagonalizing the (p,q) block.
        const double phi = std::arg(apq);
        const double tau = (aqq - app) / (2.0 * std::abs(apq));
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const cplx s = t * c * std::polar(1.0, phi);
        for (int k = 0; k < n; ++k) {
          const cplx mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - std::conj(s) * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; ++k) {
          const cplx mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = std::conj(s) * mpk + c * mqk;
        }
        for (int k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - std::conj(s) * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return m(i, i).real() < m(j, j).real(); });

  EighResult out;
  out.values.resize(n);
  out.vectors = Operator(n);
  for (int c = 0; c < n; ++c) {
    out.values[c] = m(order[c], order[c]).real();
    for (int r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

}  // namespace qregress
