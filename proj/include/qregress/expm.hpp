#pragma once

#include "qregress/matrix.hpp"

namespace qregress {

/// exp(scale * a) by scaling-and-squaring with a degree-13 Pade approximant.
/// Relative accuracy <= 1e-12 for ||scale * a|| <= 50.
Operator expm(const Operator& a, cplx scale = cplx{1.0, 0.0});

}  // namespace qregress
