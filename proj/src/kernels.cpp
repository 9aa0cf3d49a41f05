#include "qregress/kernels.hpp"

#include <cstring>

namespace qregress::kernels {

namespace serial {

void matmul(int n, const cplx* a, const cplx* b, cplx* c) {
  std::memset(c, 0, sizeof(cplx) * static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const cplx aik = a[static_cast<size_t>(i) * n + k];
      if (aik == cplx{0.0, 0.0}) continue;
      const cplx* brow = b + static_cast<size_t>(k) * n;
      cplx* crow = c + static_cast<size_t>(i) * n;
      for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

void add_scaled(int n2, const cplx* a, cplx s, cplx* out) {
  for (int i = 0; i < n2; ++i) out[i] += s * a[i];
}

}  // namespace serial

namespace par {

void matmul(int n, const cplx* a, const cplx* b, cplx* c) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    cplx* crow = c + static_cast<size_t>(i) * n;
    for (int j = 0; j < n; ++j) crow[j] = cplx{0.0, 0.0};
    for (int k = 0; k < n; ++k) {
      const cplx aik = a[static_cast<size_t>(i) * n + k];
      if (aik == cplx{0.0, 0.0}) continue;
      const cplx* brow = b + static_cast<size_t>(k) * n;
      for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

void add_scaled(int n2, const cplx* a, cplx s, cplx* out) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n2; ++i) out[i] += s * a[i];
}

}  // namespace par

void matmul(int n, const cplx* a, const cplx* b, cplx* c) {
  if (n >= 64)
    par::matmul(n, a, b, c);
  else
    serial::matmul(n, a, b, c);
}

}  // namespace qregress::kernels
