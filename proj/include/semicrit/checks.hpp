#pragma once

#include "semicrit/clebsch.hpp"
#include "semicrit/states.hpp"

namespace semicrit {

// the vector u_i placed on the ground of a two-point module, times a^i
Vector tilde_generator_w(const ModuleId& id, const ClebschGordan& cg, int i);

// hat w_l = (e t^{-1})^l a^l u_l
Vector hat_w(const ModuleId& id, const ClebschGordan& cg, int ell);

struct SugawaraScalar {
    PolyA eigenvalue;       // constant polynomial in practice
    bool scalar = false;    // same eigenvalue on every basis vector checked
    long long checked = 0;
};
// S^(1) on V_1^nu up to the energy bound (with Fock factor excluded)
SugawaraScalar sugawara_scalar(int nu, int energy_bound);

struct SugawaraRecursion {
    Rational k;       // solver-determined constant
    bool ok = false;  // S w_l - w_{l+1} - K w_l lies in a * tilde
};
SugawaraRecursion sugawara_recursion(int lambda, int mu, int ell);

}  // namespace semicrit
