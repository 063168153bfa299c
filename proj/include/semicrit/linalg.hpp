#pragma once

#include <Eigen/Core>

#include <vector>

#include "semicrit/poly.hpp"
#include "semicrit/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<semicrit::Rational> : GenericNumTraits<semicrit::Rational> {
    typedef semicrit::Rational Real;
    typedef semicrit::Rational NonInteger;
    typedef semicrit::Rational Nested;
    static inline Real epsilon() { return semicrit::Rational(0); }
    static inline Real dummy_precision() { return semicrit::Rational(0); }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
};

template <>
struct NumTraits<semicrit::PolyA> : GenericNumTraits<semicrit::PolyA> {
    typedef semicrit::PolyA Real;
    typedef semicrit::PolyA NonInteger;
    typedef semicrit::PolyA Nested;
    static inline Real epsilon() { return semicrit::PolyA(); }
    static inline Real dummy_precision() { return semicrit::PolyA(); }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 300,
        MulCost = 300
    };
};

}  // namespace Eigen

namespace semicrit {

using QMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using QVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using PolyMatrix = Eigen::Matrix<PolyA, Eigen::Dynamic, Eigen::Dynamic>;

// In-place reduced row echelon form over the rationals. Returns pivot columns.
inline std::vector<int> rref_inplace(QMatrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int r = row; r < m.rows(); ++r) {
            if (!m(r, col).is_zero()) { p = r; break; }
        }
        if (p < 0) continue;
        if (p != row) m.row(p).swap(m.row(row));
        const Rational inv = Rational(1) / m(row, col);
        for (int c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero()) continue;
            const Rational f = m(r, col);
            for (int c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline int rank_of(QMatrix m) { return int(rref_inplace(m).size()); }

// Columns spanning ker(m), in reduced echelon shape (one per non-pivot column).
inline QMatrix kernel_basis(QMatrix m) {
    const int n = int(m.cols());
    std::vector<int> pivots = rref_inplace(m);
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    QMatrix k(n, n - int(pivots.size()));
    k.setConstant(Rational(0));
    int kc = 0;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        k(c, kc) = Rational(1);
        for (size_t r = 0; r < pivots.size(); ++r) k(pivots[r], kc) = -m(int(r), c);
        ++kc;
    }
    return k;
}

// Fraction-free (Bareiss) determinant; matrix must be square.
inline Rational bareiss_determinant(QMatrix m) {
    const int n = int(m.rows());
    if (n == 0) return Rational(1);
    Rational sign(1);
    Rational prev(1);
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k).is_zero()) {
            int p = -1;
            for (int r = k + 1; r < n; ++r)
                if (!m(r, k).is_zero()) { p = r; break; }
            if (p < 0) return Rational(0);
            m.row(p).swap(m.row(k));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
            m(i, k) = Rational(0);
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

// Solve m x = b; returns false if inconsistent. Minimal-support solution
// (free variables set to zero).
inline bool solve_linear(const QMatrix& m, const QVector& b, QVector& x) {
    QMatrix aug(m.rows(), m.cols() + 1);
    aug.leftCols(m.cols()) = m;
    aug.col(m.cols()) = b;
    std::vector<int> pivots = rref_inplace(aug);
    if (!pivots.empty() && pivots.back() == int(m.cols())) return false;
    x = QVector::Constant(m.cols(), Rational(0));
    for (size_t r = 0; r < pivots.size(); ++r) x(pivots[r]) = aug(int(r), m.cols());
    return true;
}

}  // namespace semicrit
