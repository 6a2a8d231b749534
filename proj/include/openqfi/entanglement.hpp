#pragma once

#include "openqfi/dynamics.hpp"

namespace openqfi {

/// Wootters concurrence of a two-qubit state, in [0, 1].
double concurrence(const DensityMatrix& rho);

/// (||rho^T2||_1 - 1) / 2, so a Bell state gives 0.5.
double negativity(const DensityMatrix& rho);

}  // namespace openqfi
