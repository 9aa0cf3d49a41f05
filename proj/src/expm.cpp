#include "qregress/expm.hpp"

#include <cmath>

namespace qregress {

namespace {

// Gaussian elimination with partial pivoting: solves Q X = P in place.
Operator solve(Operator q, Operator p) {
  const int n = q.dim();
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(q(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(q(r, col));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) throw std::runtime_error("expm: singular Pade denominator");
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(q(col, c), q(piv, c));
      for (int c = 0; c < n; ++c) std::swap(p(col, c), p(piv, c));
    }
    const cplx d = q(col, col);
    for (int r = col + 1; r < n; ++r) {
      const cplx f = q(r, col) / d;
      if (f == cplx{0.0, 0.0}) continue;
      for (int c = col; c < n; ++c) q(r, c) -= f * q(col, c);
      for (int c = 0; c < n; ++c) p(r, c) -= f * p(col, c);
    }
  }
  Operator x(n);
  for (int c = 0; c < n; ++c) {
    for (int r = n - 1; r >= 0; --r) {
      cplx s = p(r, c);
      for (int k = r + 1; k < n; ++k) s -= q(r, k) * x(k, c);
      x(r, c) = s / q(r, r);
    }
  }
  return x;
}

}  // namespace

Operator expm(const Operator& a, cplx scale) {
  if (!a.finite()) throw std::invalid_argument("expm: non-finite entries");
  const int n = a.dim();
  Operator m = scale * a;

  // Shift out the mean diagonal; cheap norm reduction for generator matrices.
  const cplx mu = m.trace() / static_cast<double>(n);
  for (int i = 0; i < n; ++i) m(i, i) -= mu;

  const double theta13 = 5.371920351148152;
  const double nrm = one_norm(m);
  int squarings = 0;
  if (nrm > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    m *= cplx{std::ldexp(1.0, -squarings), 0.0};
  }

  static const double b[14] = {64764752532480000., 32382376266240000.,
                               7771770303897600.,  1187353796428800.,
                               129060195264000.,   10559470521600.,
                               670442572800.,      33522128640.,
                               1323241920.,        40840800.,
                               960960.,            16380.,
                               182.,               1.};

  const Operator ident = Operator::identity(n);
  const Operator m2 = m * m;
  const Operator m4 = m2 * m2;
  const Operator m6 = m4 * m2;

  Operator u = m * (m6 * (b[13] * m6 + b[11] * m4 + b[9] * m2) + b[7] * m6 +
                    b[5] * m4 + b[3] * m2 + b[1] * ident);
  Operator v = m6 * (b[12] * m6 + b[10] * m4 + b[8] * m2) + b[6] * m6 +
               b[4] * m4 + b[2] * m2 + b[0] * ident;

  Operator r = solve(v - u, v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return std::exp(mu) * r;
}

}  // namespace qregress
