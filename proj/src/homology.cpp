#include "semicrit/homology.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace semicrit {

namespace {

// shift column of a cell: (mono, k) -> (mono, k+1), truncated
std::vector<std::pair<int, Rational>> shift_column(const ChargeBlock& blk, int idx, int power,
                                                   int apow_bound) {
    const BasisKey& key = blk.cells[idx];
    if (key.apow + power >= apow_bound) return {};
    auto it = blk.index.find(BasisKey{key.mono, key.apow + power});
    if (it == blk.index.end()) return {};
    return {{it->second, Rational(1)}};
}

// stacked matrix [[D, 0], [S^i, B]] with columns (v in block n | w in block n-1),
// column order given by the supplied permutations
SparseMatQ stacked_shift_matrix(const ComplexSlice& s, int charge, int power,
                                const std::vector<int>& v_order,
                                const std::vector<int>& w_order) {
    const ChargeBlock& bn = s.block(charge);
    const ChargeBlock& bp = s.block(charge - 1);
    const ChargeBlock& bq = s.block(charge + 1);
    const SparseMatQ& D = s.d.at(charge);
    const SparseMatQ& B = s.d.at(charge - 1);
    SparseMatQ m;
    m.resize(bq.size() + bn.size(), int(v_order.size() + w_order.size()));
    int col = 0;
    for (int vi : v_order) {
        for (const auto& [r, val] : D.col[vi]) m.add(r, col, val);
        for (const auto& [r, val] : shift_column(bn, vi, power, s.params.apow_bound))
            m.add(bq.size() + r, col, val);
        ++col;
    }
    for (int wi : w_order) {
        for (const auto& [r, val] : B.col[wi]) m.add(bq.size() + r, col, val);
        ++col;
    }
    m.finalize();
    return m;
}

SparseMatQ permuted(const SparseMatQ& src, const std::vector<int>& col_order) {
    SparseMatQ m;
    m.resize(src.rows, int(col_order.size()));
    for (size_t i = 0; i < col_order.size(); ++i) m.col[i] = src.col[col_order[i]];
    return m;
}

struct LevelRanks {
    std::vector<int> levels;
    std::vector<int> ranks;  // cumulative rank of columns with level <= levels[i]

    int at_level(int lv) const {
        int r = 0;
        for (size_t i = 0; i < levels.size(); ++i)
            if (levels[i] <= lv) r = ranks[i];
        return r;
    }
    int total() const { return ranks.empty() ? 0 : ranks.back(); }
};

LevelRanks level_ranks(const SparseMatQ& m, const std::vector<int>& order,
                       const std::vector<int>& group_end, const std::vector<int>& levels) {
    LevelRanks lr;
    lr.levels = levels;
    lr.ranks = sparse_rank_profile(permuted(m, order), group_end);
    return lr;
}

int cells_at_or_below(const ChargeBlock& blk, int lv) {
    int n = 0;
    for (int x : blk.level)
        if (x <= lv) ++n;
    return n;
}

// merge two ladder orders (v-cells then w-cells) into a single level-sorted
// column order for the stacked matrix
void merged_ladder(const ChargeBlock& bn, const ChargeBlock& bp, std::vector<int>& v_order,
                   std::vector<int>& w_order, std::vector<int>& group_end,
                   std::vector<int>& levels, std::vector<bool>& is_v_flat,
                   std::vector<int>& flat_index) {
    struct Item {
        int level;
        bool is_v;
        int idx;
    };
    std::vector<Item> items;
    items.reserve(bn.size() + bp.size());
    for (int i = 0; i < bn.size(); ++i) items.push_back({bn.level[i], true, i});
    for (int i = 0; i < bp.size(); ++i) items.push_back({bp.level[i], false, i});
    std::stable_sort(items.begin(), items.end(),
                     [](const Item& a, const Item& b) { return a.level < b.level; });
    v_order.clear();
    w_order.clear();
    is_v_flat.clear();
    flat_index.clear();
    group_end.clear();
    levels.clear();
    // stacked_shift_matrix lays out v columns first; build a flat order instead
    for (size_t i = 0; i < items.size(); ++i) {
        is_v_flat.push_back(items[i].is_v);
        flat_index.push_back(items[i].idx);
        if (levels.empty() || levels.back() != items[i].level) {
            levels.push_back(items[i].level);
            group_end.push_back(int(i + 1));
        } else {
            group_end.back() = int(i + 1);
        }
    }
}

}  // namespace

int shift_kernel_dim(const ComplexSlice& s, int charge, int power) {
    const ChargeBlock& bn = s.block(charge);
    std::vector<int> v_order(bn.size()), w_order(s.block(charge - 1).size());
    for (size_t i = 0; i < v_order.size(); ++i) v_order[i] = int(i);
    for (size_t i = 0; i < w_order.size(); ++i) w_order[i] = int(i);
    SparseMatQ m = stacked_shift_matrix(s, charge, power, v_order, w_order);
    return bn.size() - sparse_rank(m);
}

namespace {

// all ladder data needed for one charge: ranks of D_n, D_{n-1} and the
// stacked matrices per a-power, each profiled by combined energy level
struct ChargeLadders {
    LevelRanks rank_dn, rank_dprev;
    std::vector<LevelRanks> rank_stacked;  // index i-1 for power i = 1..N-1
    std::vector<int> levels;               // all levels appearing in block n
};

ChargeLadders charge_ladders(const ComplexSlice& s, int charge) {
    ChargeLadders out;
    const ChargeBlock& bn = s.block(charge);
    const ChargeBlock& bp = s.block(charge - 1);

    LadderOrder lo_n = ladder_by_level(bn);
    LadderOrder lo_p = ladder_by_level(bp);
    out.rank_dn = level_ranks(s.d.at(charge), lo_n.order, lo_n.group_end, lo_n.levels);
    out.rank_dprev = level_ranks(s.d.at(charge - 1), lo_p.order, lo_p.group_end, lo_p.levels);
    out.levels = lo_n.levels;

    // stacked matrices, columns sorted by level across both blocks
    std::vector<int> v_order, w_order, group_end, levels, flat_index;
    std::vector<bool> is_v;
    merged_ladder(bn, bp, v_order, w_order, group_end, levels, is_v, flat_index);
    const ChargeBlock& bq = s.block(charge + 1);
    for (int power = 1; power < s.params.apow_bound; ++power) {
        SparseMatQ m;
        m.resize(bq.size() + bn.size(), int(flat_index.size()));
        const SparseMatQ& D = s.d.at(charge);
        const SparseMatQ& B = s.d.at(charge - 1);
        for (size_t c = 0; c < flat_index.size(); ++c) {
            if (is_v[c]) {
                const int vi = flat_index[c];
                for (const auto& [r, val] : D.col[vi]) m.add(r, int(c), val);
                for (const auto& [r, val] : shift_column(bn, vi, power, s.params.apow_bound))
                    m.add(bq.size() + r, int(c), val);
            } else {
                const int wi = flat_index[c];
                for (const auto& [r, val] : B.col[wi]) m.add(bq.size() + r, int(c), val);
            }
        }
        m.finalize();
        LevelRanks lr;
        lr.levels = levels;
        lr.ranks = sparse_rank_profile(m, group_end);
        out.rank_stacked.push_back(std::move(lr));
    }
    return out;
}

AStructure structure_from_kdims(int dim_h, const std::vector<int>& kdims, int n_bound) {
    // kdims[i-1] = dim ker(a^i | H) for i = 1..N-1
    AStructure st;
    st.dim = dim_h;
    std::vector<int> kd;
    kd.push_back(0);
    for (int x : kdims) kd.push_back(x);
    kd.push_back(dim_h);  // a^N = 0
    // blocks of size >= j: kd[j] - kd[j-1]
    std::vector<int> b(n_bound + 2, 0);
    for (int j = 1; j <= n_bound; ++j) b[j] = kd[j] - kd[j - 1];
    st.free_rank = b[n_bound];
    for (int j = n_bound - 1; j >= 1; --j) {
        const int exact = b[j] - b[j + 1];
        for (int t = 0; t < exact; ++t) st.torsion.push_back(j);
    }
    std::sort(st.torsion.rbegin(), st.torsion.rend());
    return st;
}

}  // namespace

HReport cohomology(const ComplexSlice& s) {
    HReport rep;
    rep.id = s.id;
    rep.params = s.params;
    const int N = s.params.apow_bound;
    for (int n = s.params.charge_lo + 1; n <= s.params.charge_hi - 1; ++n) {
        ChargeLadders lad = charge_ladders(s, n);
        const ChargeBlock& bn = s.block(n);

        ChargeSummary cs;
        cs.charge = n;

        auto structure_at = [&](int lv) {
            const int cells = cells_at_or_below(bn, lv);
            const int dim_h = cells - lad.rank_dn.at_level(lv) - lad.rank_dprev.at_level(lv);
            std::vector<int> kdims;
            for (int i = 1; i < N; ++i)
                kdims.push_back(cells - lad.rank_stacked[i - 1].at_level(lv));
            return structure_from_kdims(dim_h, kdims, N);
        };

        // whole block
        int max_level = bn.level.empty() ? 0 : *std::max_element(bn.level.begin(), bn.level.end());
        int min_level = bn.level.empty() ? 0 : *std::min_element(bn.level.begin(), bn.level.end());
        cs.h = structure_at(max_level);

        AStructure prev;  // empty at level below min
        for (int lv = min_level; lv <= max_level; ++lv) {
            AStructure here = structure_at(lv);
            CellData cell;
            cell.charge = n;
            cell.level = lv;
            cell.h.dim = here.dim - prev.dim;
            cell.h.free_rank = here.free_rank - prev.free_rank;
            // torsion multiset difference (by size)
            std::vector<int> diff;
            std::vector<int> prev_t = prev.torsion;
            for (int t : here.torsion) {
                auto it = std::find(prev_t.begin(), prev_t.end(), t);
                if (it != prev_t.end()) prev_t.erase(it);
                else diff.push_back(t);
            }
            cell.h.torsion = diff;
            prev = here;
            if (cell.h.dim != 0 || cell.h.free_rank != 0 || !cell.h.torsion.empty() ||
                cells_at_or_below(bn, lv) != cells_at_or_below(bn, lv - 1))
                cs.cells.push_back(cell);
        }
        rep.charges.push_back(std::move(cs));
    }
    return rep;
}

HReport stable_window(const ModuleId& id, const SliceParams& params) {
    ComplexSlice s1 = build_slice(id, params);
    SliceParams bigger = params;
    bigger.energy_bound += 1;
    bigger.apow_bound += 1;
    ComplexSlice s2 = build_slice(id, bigger);

    HReport r1 = cohomology(s1);
    HReport r2 = cohomology(s2);

    for (auto& cs : r1.charges) {
        const ChargeSummary* other = nullptr;
        for (const auto& c2 : r2.charges)
            if (c2.charge == cs.charge) other = &c2;
        if (!other) continue;
        for (auto& cell : cs.cells) {
            const CellData* twin = nullptr;
            for (const auto& c2 : other->cells)
                if (c2.level == cell.level) twin = &c2;
            AStructure empty;
            const AStructure& t = twin ? twin->h : empty;
            cell.stable = (cell.h.dim == t.dim && cell.h.free_rank == t.free_rank &&
                           cell.h.torsion == t.torsion);
        }
    }
    return r1;
}

std::vector<QCell> qgraded_h(const ComplexSlice& s, int charge) {
    // descending filtration by bidegree q: columns with q >= q0 form a
    // subcomplex; graded dims per (q, level) via double differences
    const ChargeBlock& bn = s.block(charge);
    const ChargeBlock& bp = s.block(charge - 1);

    std::vector<int> qvals;  // distinct doubled q, descending
    for (int q : bn.qdeg2) qvals.push_back(q);
    std::sort(qvals.rbegin(), qvals.rend());
    qvals.erase(std::unique(qvals.begin(), qvals.end()), qvals.end());

    std::vector<int> lvls;
    for (int l : bn.level) lvls.push_back(l);
    std::sort(lvls.begin(), lvls.end());
    lvls.erase(std::unique(lvls.begin(), lvls.end()), lvls.end());

    // dims[qi][li]: dim H of the subcomplex {q >= qvals[qi]} at levels <= lvls[li]
    auto sub_dims = [&](int q0) {
        // order columns of each block: keep only q >= q0, grouped by level
        auto make = [&](const ChargeBlock& blk, const SparseMatQ& mat) {
            std::vector<int> order;
            for (int i = 0; i < blk.size(); ++i)
                if (blk.qdeg2[i] >= q0) order.push_back(i);
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return blk.level[a] < blk.level[b]; });
            std::vector<int> ge;
            std::vector<int> lv;
            for (size_t i = 0; i < order.size(); ++i) {
                const int l = blk.level[order[i]];
                if (lv.empty() || lv.back() != l) {
                    lv.push_back(l);
                    ge.push_back(int(i + 1));
                } else {
                    ge.back() = int(i + 1);
                }
            }
            LevelRanks lr;
            lr.levels = lv;
            lr.ranks = sparse_rank_profile(permuted(mat, order), ge);
            int cells_total = int(order.size());
            return std::make_pair(lr, cells_total);
        };
        auto [rk_n, cn] = make(bn, s.d.at(charge));
        auto [rk_p, cp] = make(bp, s.d.at(charge - 1));
        (void)cn;
        (void)cp;
        std::vector<int> out;
        for (int lv : lvls) {
            int cells = 0;
            for (int i = 0; i < bn.size(); ++i)
                if (bn.qdeg2[i] >= q0 && bn.level[i] <= lv) ++cells;
            out.push_back(cells - rk_n.at_level(lv) - rk_p.at_level(lv));
        }
        return out;
    };

    std::vector<std::vector<int>> dims;
    for (int q : qvals) dims.push_back(sub_dims(q));
    std::vector<int> zero(lvls.size(), 0);

    std::vector<QCell> cells;
    for (size_t qi = 0; qi < qvals.size(); ++qi) {
        const std::vector<int>& cur = dims[qi];
        const std::vector<int>& prev = (qi == 0) ? zero : dims[qi - 1];
        int below = 0, below_prev = 0;
        for (size_t li = 0; li < lvls.size(); ++li) {
            const int graded = (cur[li] - prev[li]) - (below - below_prev);
            if (graded != 0) {
                QCell qc;
                qc.qdeg2 = qvals[qi];
                qc.level = lvls[li];
                qc.dim = graded;
                cells.push_back(qc);
            }
            below = cur[li];
            below_prev = prev[li];
        }
    }
    return cells;
}

std::vector<QCell> f2_count(int lambda, int mu, int energy_bound, int apow_bound) {
    // monomials f(z_{m_1})..f(z_{m_r}) ground, all charges zero, counted per
    // (doubled bidegree q, combined level) including a-power tags
    std::map<std::pair<int, int>, int> counts;
    const int max_mode_e = energy_bound + apow_bound - 1;

    std::vector<std::vector<int>> words;  // multisets of energies
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int used, int min_e) {
        words.push_back(cur);
        for (int e = min_e; used + e <= max_mode_e; ++e) {
            cur.push_back(e);
            rec(used + e, e);
            cur.pop_back();
        }
    };
    rec(0, 1);

    for (const auto& w : words) {
        int mode_e = 0;
        for (int e : w) mode_e += e;
        const int r = int(w.size());
        for (int gj = 0; gj <= lambda; ++gj) {
            for (int gk = 0; gk <= mu; ++gk) {
                // bideg: r f's at (1,-1) and ground weight
                const int weight = lambda - 2 * gj + mu - 2 * gk;
                const int q2 = -2 * r + weight;
                for (int k = std::max(0, mode_e - energy_bound); k < apow_bound; ++k)
                    counts[{q2, mode_e - k}] += 1;
            }
        }
    }
    std::vector<QCell> out;
    for (const auto& [key, n] : counts) {
        QCell qc;
        qc.qdeg2 = key.first;
        qc.level = key.second;
        qc.dim = n;
        out.push_back(qc);
    }
    return out;
}

DivisibilityReport class_divisibility(const ComplexSlice& s, const Vector& v, int charge) {
    const ChargeBlock& bn = s.block(charge);
    const ChargeBlock& bq = s.block(charge + 1);
    auto coords = s.coords_of(v, charge);

    // cocycle check within the slice
    {
        std::map<int, Rational> acc;
        const SparseMatQ& D = s.d.at(charge);
        for (const auto& [c, val] : coords)
            for (const auto& [r, dv] : D.col[c]) acc[r] += val * dv;
        for (const auto& [r, val] : acc)
            if (!val.is_zero()) throw std::invalid_argument("class_divisibility: not a cocycle");
    }

    // boundary?
    {
        SparseEliminator elim(bn.size());
        const SparseMatQ& B = s.d.at(charge - 1);
        for (const auto& c : B.col) elim.add_column(c);
        if (elim.in_span(coords)) return {Divisibility::ClassZero, s.params.apow_bound};
    }

    // largest k with v = a^k u + boundary for a cocycle u
    int best = 0;
    for (int k = 1; k < s.params.apow_bound; ++k) {
        std::vector<int> v_order(bn.size()), w_order(s.block(charge - 1).size());
        for (size_t i = 0; i < v_order.size(); ++i) v_order[i] = int(i);
        for (size_t i = 0; i < w_order.size(); ++i) w_order[i] = int(i);
        SparseMatQ m = stacked_shift_matrix(s, charge, k, v_order, w_order);
        std::vector<std::pair<int, Rational>> rhs;
        for (const auto& [c, val] : coords) rhs.push_back({bq.size() + c, val});
        if (sparse_consistent(m, rhs)) best = k;
        else break;
    }
    if (best == 0) return {Divisibility::Indivisible, 0};
    return {Divisibility::DivisibleBy, best};
}

}  // namespace semicrit
