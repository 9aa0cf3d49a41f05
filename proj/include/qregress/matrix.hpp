#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace qregress {

using cplx = std::complex<double>;

/// Dense square complex matrix. Row-major storage, value semantics.
class Operator {
 public:
  Operator() = default;
  explicit Operator(int dim)
      : dim_(dim), data_(static_cast<size_t>(dim) * dim, cplx{0.0, 0.0}) {
    if (dim < 1) throw std::invalid_argument("Operator: dim must be >= 1");
  }

  static Operator identity(int dim) {
    Operator o(dim);
    for (int i = 0; i < dim; ++i) o(i, i) = 1.0;
    return o;
  }
  static Operator zero(int dim) { return Operator(dim); }

  int dim() const { return dim_; }
  cplx& operator()(int r, int c) { return data_[static_cast<size_t>(r) * dim_ + c]; }
  const cplx& operator()(int r, int c) const {
    return data_[static_cast<size_t>(r) * dim_ + c];
  }
  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }

  Operator& operator+=(const Operator& o);
  Operator& operator-=(const Operator& o);
  Operator& operator*=(cplx s);

  Operator adjoint() const;
  Operator transpose() const;
  cplx trace() const;
  bool finite() const;

 private:
  int dim_ = 0;
  std::vector<cplx> data_;
};

Operator operator+(Operator a, const Operator& b);
Operator operator-(Operator a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(cplx s, Operator a);
Operator operator*(Operator a, cplx s);

/// Kronecker product; left factor is the slow (system) index.
Operator kron(const Operator& a, const Operator& b);

/// max_ij |A_ij - B_ij|
double max_abs_diff(const Operator& a, const Operator& b);
/// max_ij |A_ij|
double max_abs(const Operator& a);
/// Maximum absolute column sum.
double one_norm(const Operator& a);

Operator commutator(const Operator& a, const Operator& b);
cplx trace_product(const Operator& a, const Operator& b);

bool is_hermitian(const Operator& a, double tol = 1e-12);

enum class Pauli { X, Y, Z, Plus, Minus, Id };

/// Standard 2x2 matrices in the basis |e> = (1,0)^T, |g> = (0,1)^T.
Operator pauli(Pauli which);

}  // namespace qregress
