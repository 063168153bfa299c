#include "semicrit/smith.hpp"

#include <stdexcept>

namespace semicrit {

namespace {

// position of the minimal-degree nonzero entry in m(r0.., c0..), row-major ties
bool find_pivot(const PolyMatrix& m, int r0, int c0, int& pr, int& pc) {
    int best = -1;
    for (int r = r0; r < m.rows(); ++r) {
        for (int c = c0; c < m.cols(); ++c) {
            if (m(r, c).is_zero()) continue;
            const int d = m(r, c).degree();
            if (best < 0 || d < best) {
                best = d;
                pr = r;
                pc = c;
            }
        }
    }
    return best >= 0;
}

}  // namespace

SmithResult smith_normal_form(PolyMatrix m) {
    const int rows = int(m.rows());
    const int cols = int(m.cols());
    SmithResult res;
    res.left = PolyMatrix::Constant(rows, rows, PolyA());
    res.right = PolyMatrix::Constant(cols, cols, PolyA());
    for (int i = 0; i < rows; ++i) res.left(i, i) = PolyA(1);
    for (int i = 0; i < cols; ++i) res.right(i, i) = PolyA(1);

    auto row_op = [&](int dst, int src, const PolyA& f) {
        // row dst -= f * row src
        for (int c = 0; c < cols; ++c) m(dst, c) -= f * m(src, c);
        for (int c = 0; c < rows; ++c) res.left(dst, c) -= f * res.left(src, c);
    };
    auto col_op = [&](int dst, int src, const PolyA& f) {
        for (int r = 0; r < rows; ++r) m(r, dst) -= f * m(r, src);
        for (int r = 0; r < cols; ++r) res.right(r, dst) -= f * res.right(r, src);
    };
    auto swap_rows = [&](int a, int b) {
        if (a == b) return;
        m.row(a).swap(m.row(b));
        res.left.row(a).swap(res.left.row(b));
    };
    auto swap_cols = [&](int a, int b) {
        if (a == b) return;
        m.col(a).swap(m.col(b));
        res.right.col(a).swap(res.right.col(b));
    };
    auto scale_row = [&](int r, const Rational& c) {
        for (int j = 0; j < cols; ++j) m(r, j) = m(r, j) * PolyA(c);
        for (int j = 0; j < rows; ++j) res.left(r, j) = res.left(r, j) * PolyA(c);
    };

    const int k = std::min(rows, cols);
    for (int t = 0; t < k; ++t) {
        int pr = -1, pc = -1;
        if (!find_pivot(m, t, t, pr, pc)) break;
        swap_rows(t, pr);
        swap_cols(t, pc);

        // clear row and column t; degree of the pivot strictly drops whenever a
        // remainder appears, so this loop terminates
        for (;;) {
            bool clean = true;
            for (int r = t + 1; r < rows; ++r) {
                if (m(r, t).is_zero()) continue;
                auto [q, rem] = poly_divmod(m(r, t), m(t, t));
                row_op(r, t, q);
                if (!rem.is_zero()) {
                    swap_rows(t, r);
                    clean = false;
                }
            }
            if (!clean) continue;
            for (int c = t + 1; c < cols; ++c) {
                if (m(t, c).is_zero()) continue;
                auto [q, rem] = poly_divmod(m(t, c), m(t, t));
                col_op(c, t, q);
                if (!rem.is_zero()) {
                    swap_cols(t, c);
                    clean = false;
                }
            }
            if (clean) break;
        }

        // pivot must divide every remaining entry; if not, fold the offending
        // row in and restart the clearing
        for (;;) {
            int br = -1, bc = -1;
            for (int r = t + 1; r < rows && br < 0; ++r) {
                for (int c = t + 1; c < cols; ++c) {
                    if (m(r, c).is_zero()) continue;
                    if (!poly_divmod(m(r, c), m(t, t)).second.is_zero()) {
                        br = r;
                        bc = c;
                        break;
                    }
                }
            }
            if (br < 0) break;
            row_op(t, br, PolyA(Rational(-1)));  // row t += row br
            for (;;) {
                bool clean = true;
                for (int c = t + 1; c < cols; ++c) {
                    if (m(t, c).is_zero()) continue;
                    auto [q, rem] = poly_divmod(m(t, c), m(t, t));
                    col_op(c, t, q);
                    if (!rem.is_zero()) {
                        swap_cols(t, c);
                        clean = false;
                    }
                }
                if (!clean) continue;
                for (int r = t + 1; r < rows; ++r) {
                    if (m(r, t).is_zero()) continue;
                    auto [q, rem] = poly_divmod(m(r, t), m(t, t));
                    row_op(r, t, q);
                    if (!rem.is_zero()) {
                        swap_rows(t, r);
                        clean = false;
                    }
                }
                if (clean) break;
            }
        }

        if (!m(t, t).is_zero() && !m(t, t).leading().is_one())
            scale_row(t, Rational(1) / m(t, t).leading());
    }

    for (int t = 0; t < k; ++t) {
        if (m(t, t).is_zero()) break;
        res.invariants.push_back(m(t, t));
    }
    return res;
}

}  // namespace semicrit
