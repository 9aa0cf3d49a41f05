#pragma once

#include <complex>

// Low-level dense kernels. Every parallel kernel has a serial reference
// implementation used by the tests and the benchmark target.

namespace qregress::kernels {

using cplx = std::complex<double>;

namespace serial {
void matmul(int n, const cplx* a, const cplx* b, cplx* c);
void add_scaled(int n2, const cplx* a, cplx s, cplx* out);
}  // namespace serial

namespace par {
void matmul(int n, const cplx* a, const cplx* b, cplx* c);
void add_scaled(int n2, const cplx* a, cplx s, cplx* out);
}  // namespace par

// Dispatch: parallel path for matrices large enough to amortize the
// fork/join, serial otherwise.
void matmul(int n, const cplx* a, const cplx* b, cplx* c);

}  // namespace qregress::kernels
