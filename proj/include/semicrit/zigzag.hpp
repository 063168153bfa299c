#pragma once

#include "semicrit/states.hpp"

namespace semicrit {

struct ZigzagResult {
    Vector corrected;  // phi-tilde with d(phi-tilde) = 0 exactly
    int steps = 0;     // number of corrections added
};

// Iteratively solve chi(phi_{l+1}) = -d_std(phi_l) inside the truncated
// charge-zero slice until d_std vanishes, starting from a chi-closed seed of
// homogeneous bidegree. Throws if the truncation cannot hold the corrections.
ZigzagResult zigzag(const Vector& seed, int energy_bound, int apow_bound);

}  // namespace semicrit
