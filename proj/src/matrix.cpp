#include "qregress/matrix.hpp"

#include <cmath>

#include "qregress/kernels.hpp"

namespace qregress {

namespace {
void check_same_dim(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("Operator: dimension mismatch");
}
}  // namespace

Operator& Operator::operator+=(const Operator& o) {
  check_same_dim(*this, o);
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Operator& Operator::operator-=(const Operator& o) {
  check_same_dim(*this, o);
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Operator& Operator::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

Operator Operator::adjoint() const {
  Operator out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Operator Operator::transpose() const {
  Operator out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

cplx Operator::trace() const {
  cplx t{0.0, 0.0};
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

bool Operator::finite() const {
  for (const auto& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

Operator operator+(Operator a, const Operator& b) { return a += b; }
Operator operator-(Operator a, const Operator& b) { return a -= b; }

Operator operator*(const Operator& a, const Operator& b) {
  check_same_dim(a, b);
  Operator c(a.dim());
  kernels::matmul(a.dim(), a.data(), b.data(), c.data());
  return c;
}

Operator operator*(cplx s, Operator a) { return a *= s; }
Operator operator*(Operator a, cplx s) { return a *= s; }

Operator kron(const Operator& a, const Operator& b) {
  const int da = a.dim(), db = b.dim();
  Operator out(da * db);
  for (int ra = 0; ra < da; ++ra)
    for (int ca = 0; ca < da; ++ca) {
      const cplx v = a(ra, ca);
      if (v == cplx{0.0, 0.0}) continue;
      for (int rb = 0; rb < db; ++rb)
        for (int cb = 0; cb < db; ++cb)
          out(ra * db + rb, ca * db + cb) = v * b(rb, cb);
    }
  return out;
}

double max_abs_diff(const Operator& a, const Operator& b) {
  check_same_dim(a, b);
  double m = 0.0;
  const int n = a.dim();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  return m;
}

double max_abs(const Operator& a) {
  double m = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) m = std::max(m, std::abs(a(r, c)));
  return m;
}

double one_norm(const Operator& a) {
  double m = 0.0;
  for (int c = 0; c < a.dim(); ++c) {
    double s = 0.0;
    for (int r = 0; r < a.dim(); ++r) s += std::abs(a(r, c));
    m = std::max(m, s);
  }
  return m;
}

Operator commutator(const Operator& a, const Operator& b) {
  return a * b - b * a;
}

cplx trace_product(const Operator& a, const Operator& b) {
  check_same_dim(a, b);
  cplx t{0.0, 0.0};
  const int n = a.dim();
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) t += a(r, k) * b(k, r);
  return t;
}

bool is_hermitian(const Operator& a, double tol) {
  return max_abs_diff(a, a.adjoint()) <= tol;
}

Operator pauli(Pauli which) {
  Operator o(2);
  switch (which) {
    case Pauli::X:
      o(0, 1) = 1.0;
      o(1, 0) = 1.0;
      break;
    case Pauli::Y:
      o(0, 1) = cplx{0.0, -1.0};
      o(1, 0) = cplx{0.0, 1.0};
      break;
    case Pauli::Z:
      o(0, 0) = 1.0;
      o(1, 1) = -1.0;
      break;
    case Pauli::Plus:
      o(0, 1) = 1.0;
      break;
    case Pauli::Minus:
      o(1, 0) = 1.0;
      break;
    case Pauli::Id:
      o(0, 0) = 1.0;
      o(1, 1) = 1.0;
      break;
  }
  return o;
}

}  // namespace qregress
