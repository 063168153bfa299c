#pragma once

#include <vector>

#include "semicrit/linalg.hpp"
#include "semicrit/poly.hpp"

namespace semicrit {

struct SmithResult {
    std::vector<PolyA> invariants;  // d_1 | d_2 | ..., monic, nonzero ones only
    PolyMatrix left;                // U, unimodular over Q[a]
    PolyMatrix right;               // V, unimodular over Q[a]
    // U * M * V = diag(invariants padded with zeros)
};

// Smith normal form of a matrix over Q[a]. Pivot selection: minimal-degree
// nonzero entry, ties broken row-major.
SmithResult smith_normal_form(PolyMatrix m);

}  // namespace semicrit
