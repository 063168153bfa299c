#pragma once

#include <utility>
#include <vector>

#include "semicrit/rational.hpp"

namespace semicrit {

// Column-sparse exact rational matrix. Entries within a column are sorted by
// row and nonzero.
struct SparseMatQ {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, Rational>>> col;

    void resize(int r, int c) {
        rows = r;
        cols = c;
        col.assign(c, {});
    }
    void add(int r, int c, const Rational& v) {
        if (!v.is_zero()) col[c].push_back({r, v});
    }
    void finalize();  // sort and combine duplicates per column
    long long nnz() const {
        long long n = 0;
        for (const auto& c : col) n += (long long)c.size();
        return n;
    }
};

// Incremental exact Gauss-Jordan over the processed column set. Columns are
// fed in a caller-chosen order; the cumulative rank after any prefix equals
// the rank of that column subset, which is what the energy-ladder profiles
// use. Pivot rows are chosen to limit fill.
class SparseEliminator {
public:
    explicit SparseEliminator(int rows) : rows_(rows), pivot_of_row_(rows, -1) {}

    // reduce and absorb one column; returns true if it increased the rank
    bool add_column(const std::vector<std::pair<int, Rational>>& column);

    // reduce a vector against the current pivots; true if it lies in the span
    bool in_span(const std::vector<std::pair<int, Rational>>& column) const;

    int rank() const { return int(pivots_.size()); }

private:
    struct PivotCol {
        int pivot_row;
        std::vector<std::pair<int, Rational>> entries;  // reduced, unit at pivot_row
    };
    void reduce(std::vector<std::pair<int, Rational>>& column) const;

    int rows_;
    std::vector<int> pivot_of_row_;  // row -> pivot index or -1
    std::vector<PivotCol> pivots_;
};

// rank of the whole matrix, processing columns in their stored order
int sparse_rank(const SparseMatQ& m);

// cumulative ranks after each column-group boundary; `group_end[i]` is the
// one-past-the-end column index of group i
std::vector<int> sparse_rank_profile(const SparseMatQ& m, const std::vector<int>& group_end);

// true if b is in the column span of m
bool sparse_consistent(const SparseMatQ& m, const std::vector<std::pair<int, Rational>>& b);

}  // namespace semicrit
