#pragma once

#include <vector>

#include "semicrit/linalg.hpp"
#include "semicrit/states.hpp"

namespace semicrit {

// Decomposition data for V^lambda (x) V^mu with lambda >= mu. Ground vectors
// are indexed as f^j v_lambda (x) f^k v_mu, flattened as j*(mu+1) + k.
// G^i is the isotypic summand isomorphic to V^{lambda+mu-2i}; u_i is its
// highest vector, normalized so the coefficient of v_lambda (x) f^i v_mu is 1.
class ClebschGordan {
public:
    ClebschGordan(int lambda, int mu);

    int lambda() const { return lambda_; }
    int mu() const { return mu_; }
    int dim() const { return (lambda_ + 1) * (mu_ + 1); }
    int index(int j, int k) const { return j * (mu_ + 1) + k; }

    // u_i in ground coordinates, i = 0..mu
    const QVector& highest(int i) const { return highest_[i]; }

    // basis change: column index(i, r) holds f^r u_i in ground coordinates
    const QMatrix& adapted_basis() const { return basis_; }
    const QMatrix& adapted_inverse() const { return inverse_; }
    // summand and f-depth of an adapted column
    int summand_of_column(int c) const { return col_summand_[c]; }
    int depth_of_column(int c) const { return col_depth_[c]; }
    int column_of(int i, int r) const;

    // coordinates of a ground vector over the adapted basis
    QVector decompose(const QVector& ground_coords) const;

private:
    int lambda_, mu_;
    std::vector<QVector> highest_;
    QMatrix basis_, inverse_;
    std::vector<int> col_summand_, col_depth_;
};

// Membership in the tilde module: every G^i-component of every PBW coordinate
// must be divisible by a^i (or a^{max(i, filtration)} when a filtration index
// is supplied).
bool tilde_membership(const Vector& v, const ClebschGordan& cg, int filtration = -1);

// a-adapted ground decomposition of a single coefficient vector, exposed for
// slice assembly in the tilde basis.
struct TildeCoord {
    int summand = 0;  // i of G^i
    int depth = 0;    // r of f^r u_i
    PolyA coeff;
};
std::vector<TildeCoord> tilde_decompose(const ClebschGordan& cg, int gj, int gk,
                                        const PolyA& coeff);

}  // namespace semicrit
