#include "semicrit/sparse_elim.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace semicrit {

void SparseMatQ::finalize() {
    for (auto& c : col) {
        std::sort(c.begin(), c.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<int, Rational>> out;
        for (auto& [r, v] : c) {
            if (!out.empty() && out.back().first == r) {
                out.back().second += v;
                if (out.back().second.is_zero()) out.pop_back();
            } else if (!v.is_zero()) {
                out.push_back({r, v});
            }
        }
        c = std::move(out);
    }
}

// Left-looking: each pivot column is reduced against earlier pivots only, so
// subtracting pivot i can introduce entries only at non-pivot rows or at rows
// of pivots created after i. Reducing a column therefore needs one pass over
// pivot indices in creation order.
void SparseEliminator::reduce(std::vector<std::pair<int, Rational>>& column) const {
    std::unordered_map<int, Rational> acc;
    acc.reserve(column.size() * 2);
    for (const auto& [r, v] : column) {
        auto [it, fresh] = acc.try_emplace(r, v);
        if (!fresh) it->second += v;
    }
    std::set<int> pending;  // pivot creation indices present in acc
    for (const auto& [r, v] : acc)
        if (pivot_of_row_[r] >= 0 && !v.is_zero()) pending.insert(pivot_of_row_[r]);
    while (!pending.empty()) {
        const int pi = *pending.begin();
        pending.erase(pending.begin());
        const PivotCol& p = pivots_[pi];
        auto it = acc.find(p.pivot_row);
        if (it == acc.end() || it->second.is_zero()) continue;
        const Rational f = it->second;
        for (const auto& [r, v] : p.entries) {
            auto [jt, fresh] = acc.try_emplace(r, Rational(0));
            const bool was_zero = jt->second.is_zero();
            jt->second -= f * v;
            const int rp = pivot_of_row_[r];
            if (rp > pi && was_zero && !jt->second.is_zero()) pending.insert(rp);
        }
    }
    column.clear();
    column.reserve(acc.size());
    for (const auto& [r, v] : acc)
        if (!v.is_zero()) column.push_back({r, v});
    std::sort(column.begin(), column.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

bool SparseEliminator::add_column(const std::vector<std::pair<int, Rational>>& column_in) {
    std::vector<std::pair<int, Rational>> column = column_in;
    reduce(column);
    if (column.empty()) return false;

    // pivot row: among the remaining support, a free row of smallest index
    int prow = -1;
    for (const auto& [r, v] : column) {
        if (pivot_of_row_[r] < 0) { prow = r; break; }
    }
    if (prow < 0) throw std::logic_error("SparseEliminator: reduced column has only pivot rows");
    Rational pval;
    for (const auto& [r, v] : column)
        if (r == prow) pval = v;

    PivotCol pc;
    pc.pivot_row = prow;
    pc.entries.reserve(column.size());
    const Rational inv = Rational(1) / pval;
    for (auto& [r, v] : column) pc.entries.push_back({r, v * inv});

    pivot_of_row_[prow] = int(pivots_.size());
    pivots_.push_back(std::move(pc));
    return true;
}

bool SparseEliminator::in_span(const std::vector<std::pair<int, Rational>>& column_in) const {
    std::vector<std::pair<int, Rational>> column = column_in;
    reduce(column);
    return column.empty();
}

int sparse_rank(const SparseMatQ& m) {
    SparseEliminator e(m.rows);
    for (const auto& c : m.col) e.add_column(c);
    return e.rank();
}

std::vector<int> sparse_rank_profile(const SparseMatQ& m, const std::vector<int>& group_end) {
    SparseEliminator e(m.rows);
    std::vector<int> out;
    int c = 0;
    for (int end : group_end) {
        for (; c < end; ++c) e.add_column(m.col[c]);
        out.push_back(e.rank());
    }
    return out;
}

bool sparse_consistent(const SparseMatQ& m, const std::vector<std::pair<int, Rational>>& b) {
    SparseEliminator e(m.rows);
    for (const auto& c : m.col) e.add_column(c);
    return e.in_span(b);
}

}  // namespace semicrit
