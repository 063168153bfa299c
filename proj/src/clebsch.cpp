#include "semicrit/clebsch.hpp"

#include <stdexcept>

namespace semicrit {

ClebschGordan::ClebschGordan(int lambda, int mu) : lambda_(lambda), mu_(mu) {
    if (lambda < mu || mu < 0)
        throw std::invalid_argument("ClebschGordan: requires lambda >= mu >= 0");
    const int d = dim();

    // raising operator in the f^j v (x) f^k v basis
    QMatrix e_mat = QMatrix::Constant(d, d, Rational(0));
    QMatrix f_mat = QMatrix::Constant(d, d, Rational(0));
    for (int j = 0; j <= lambda_; ++j) {
        for (int k = 0; k <= mu_; ++k) {
            const int c = index(j, k);
            GroundAction e1 = sl2_ground(GenKind::E, j, lambda_);
            if (!e1.coeff.is_zero()) e_mat(index(j - 1, k), c) += e1.coeff;
            GroundAction e2 = sl2_ground(GenKind::E, k, mu_);
            if (!e2.coeff.is_zero()) e_mat(index(j, k - 1), c) += e2.coeff;
            GroundAction f1 = sl2_ground(GenKind::F, j, lambda_);
            if (!f1.coeff.is_zero()) f_mat(index(j + 1, k), c) += f1.coeff;
            GroundAction f2 = sl2_ground(GenKind::F, k, mu_);
            if (!f2.coeff.is_zero()) f_mat(index(j, k + 1), c) += f2.coeff;
        }
    }

    basis_ = QMatrix::Constant(d, d, Rational(0));
    col_summand_.assign(d, 0);
    col_depth_.assign(d, 0);
    int col = 0;
    for (int i = 0; i <= mu_; ++i) {
        // weight lambda + mu - 2i vectors: pairs (j, k) with j + k = i
        const int wdim = i + 1;
        QMatrix weight_cols = QMatrix::Constant(d, wdim, Rational(0));
        for (int k = 0; k <= i; ++k) {
            const int j = i - k;
            if (j > lambda_ || k > mu_) continue;
            weight_cols(index(j, k), k) = Rational(1);
        }
        // kernel of e on this weight space
        QMatrix e_on_weight = e_mat * weight_cols;
        QMatrix ker = kernel_basis(e_on_weight);
        if (ker.cols() != 1)
            throw std::logic_error("ClebschGordan: highest-weight space is not a line");
        QVector u = weight_cols * ker.col(0);
        // normalize: coefficient of v_lambda (x) f^i v_mu equal to 1
        const Rational pin = u(index(0, i));
        if (pin.is_zero())
            throw std::logic_error("ClebschGordan: vanishing normalization coefficient");
        for (int r = 0; r < d; ++r) u(r) /= pin;
        highest_.push_back(u);

        QVector cur = u;
        const int len = lambda_ + mu_ - 2 * i;  // G^i ~ V^len
        for (int r = 0; r <= len; ++r) {
            basis_.col(col) = cur;
            col_summand_[col] = i;
            col_depth_[col] = r;
            ++col;
            if (r < len) cur = f_mat * cur;
        }
    }
    if (col != d) throw std::logic_error("ClebschGordan: summand dimensions do not add up");

    // invert the basis change
    QMatrix aug(d, 2 * d);
    aug.leftCols(d) = basis_;
    aug.rightCols(d) = QMatrix::Constant(d, d, Rational(0));
    for (int i = 0; i < d; ++i) aug(i, d + i) = Rational(1);
    auto pivots = rref_inplace(aug);
    if (int(pivots.size()) != d) throw std::logic_error("ClebschGordan: basis change is singular");
    inverse_ = aug.rightCols(d);
}

int ClebschGordan::column_of(int i, int r) const {
    for (int c = 0; c < dim(); ++c)
        if (col_summand_[c] == i && col_depth_[c] == r) return c;
    throw std::out_of_range("ClebschGordan: no such adapted column");
}

QVector ClebschGordan::decompose(const QVector& ground_coords) const {
    return inverse_ * ground_coords;
}

std::vector<TildeCoord> tilde_decompose(const ClebschGordan& cg, int gj, int gk,
                                        const PolyA& coeff) {
    std::vector<TildeCoord> out;
    const int d = cg.dim();
    const int idx = cg.index(gj, gk);
    for (int c = 0; c < d; ++c) {
        const Rational w = cg.adapted_inverse()(c, idx);
        if (w.is_zero()) continue;
        out.push_back({cg.summand_of_column(c), cg.depth_of_column(c), coeff * PolyA(w)});
    }
    return out;
}

bool tilde_membership(const Vector& v, const ClebschGordan& cg, int filtration) {
    if (v.module().family != Family::TwoPoint)
        throw std::invalid_argument("tilde_membership: expects a two-point vector");
    // group coefficients per (pbw word, adapted column)
    std::map<std::pair<Monomial, int>, PolyA> comps;
    for (const auto& [m, c] : v.terms()) {
        Monomial word = m;
        word.gj = word.gk = 0;
        for (const auto& tc : tilde_decompose(cg, m.gj, m.gk, c)) {
            auto key = std::make_pair(word, cg.column_of(tc.summand, tc.depth));
            auto it = comps.find(key);
            if (it == comps.end()) comps[key] = tc.coeff;
            else it->second += tc.coeff;
        }
    }
    for (const auto& [key, c] : comps) {
        const int i = cg.summand_of_column(key.second);
        const int need = (filtration < 0) ? i : std::max(i, filtration);
        if (!c.divisible_by_a_power(need)) return false;
    }
    return true;
}

}  // namespace semicrit
