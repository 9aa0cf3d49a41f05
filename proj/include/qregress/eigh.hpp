#pragma once

#include "qregress/matrix.hpp"

namespace qregress {

struct EighResult {
  std::vector<double> values;  // ascending
  Operator vectors;            // columns are eigenvectors
};

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
EighResult eigh(const Operator& a, double tol = 1e-13);

}  // namespace qregress
