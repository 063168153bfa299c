#include "semicrit/slice.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "semicrit/operators.hpp"

namespace semicrit {

namespace {

int count_h_bosons(const Monomial& m) {
    int n = 0;
    for (const auto& b : m.bosons)
        if (b.kind == GenKind::H) ++n;
    return n;
}

// expansion of a hatted D-basis monomial: f -> f, h -> hatted h, applied
// right-to-left over the psi*-dressed ground vector
Vector hatted_expansion(const ModuleId& id, const Monomial& m) {
    Monomial base;
    base.gj = m.gj;
    base.gk = m.gk;
    base.psistar = m.psistar;
    Vector v = Vector::single(id, base, PolyA(1));
    for (auto it = m.bosons.rbegin(); it != m.bosons.rend(); ++it) {
        if (it->kind == GenKind::F) {
            v = apply_mode(GenKind::F, it->mode, v);
        } else if (it->kind == GenKind::H) {
            if (id.two_point())
                v = apply_hatted_h(RingElt::z(it->mode), v);
            else
                v = apply_hatted_h1(LaurentElt::t(it->mode.doubled / 2), v);
        } else {
            throw std::logic_error("hatted_expansion: unexpected boson kind in D basis");
        }
    }
    return v;
}

// re-express a vector over hatted D-monomials by peeling h-boson counts from
// the top; remainder must vanish
std::map<Monomial, PolyA> peel_to_hatted(const ModuleId& id, Vector residual,
                                         std::map<Monomial, Vector>& expansion_cache) {
    std::map<Monomial, PolyA> out;
    while (!residual.is_zero()) {
        // pick a term of maximal h-count among the D-shaped monomials; the
        // hatted expansions are unitriangular against that ordering
        const Monomial* best = nullptr;
        const PolyA* best_c = nullptr;
        int best_h = -1;
        for (const auto& [m, c] : residual.terms()) {
            if (!m.psi.empty()) continue;
            bool dshape = true;
            for (const auto& b : m.bosons)
                if (b.kind == GenKind::E) { dshape = false; break; }
            if (!dshape) continue;
            const int h = count_h_bosons(m);
            if (h > best_h) {
                best_h = h;
                best = &m;
                best_c = &c;
            }
        }
        if (!best) throw std::logic_error("peel_to_hatted: residual outside the D span");
        Monomial key = *best;
        PolyA coeff = *best_c;
        auto it = expansion_cache.find(key);
        if (it == expansion_cache.end())
            it = expansion_cache.emplace(key, hatted_expansion(id, key)).first;
        residual -= it->second.scaled(coeff);
        if (residual.terms().count(key))
            throw std::logic_error("peel_to_hatted: expansion is not unitriangular");
        out[key] += coeff;
    }
    return out;
}

}  // namespace

std::vector<std::pair<int, Rational>> ComplexSlice::coords_of(const Vector& v, int charge) const {
    const ChargeBlock& blk = block(charge);
    std::vector<std::pair<int, Rational>> out;
    for (const auto& [m, c] : v.terms()) {
        for (int e = 0; e <= c.degree(); ++e) {
            const Rational r = c.coeff(e);
            if (r.is_zero()) continue;
            if (e >= params.apow_bound) continue;
            auto it = blk.index.find(BasisKey{m, e});
            if (it == blk.index.end())
                throw std::invalid_argument("coords_of: vector has a term outside the slice");
            out.push_back({it->second, r});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<BasisKey> enumerate_tilde_basis(const ModuleId& id, const ClebschGordan& cg,
                                            int charge, int energy_bound, int apow_bound) {
    // words over a nominal (0,0) ground, then dressed with adapted columns;
    // a cell with ground in G^i needs an a-power of at least i
    std::vector<BasisKey> raw = enumerate_basis(
        ModuleId{id.family, 0, 0, id.with_fock}, charge, energy_bound, apow_bound,
        SliceFilter::Full);
    std::vector<BasisKey> out;
    for (const auto& bk : raw) {
        for (int col = 0; col < cg.dim(); ++col) {
            if (bk.apow < cg.summand_of_column(col)) continue;
            Monomial m = bk.mono;
            m.gj = col;
            m.gk = 0;
            out.push_back({m, bk.apow});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

ChargeBlock make_block(const ModuleId& id, const SliceParams& p, int charge,
                       const ClebschGordan* cg) {
    ChargeBlock blk;
    if (p.tilde) {
        blk.cells = enumerate_tilde_basis(id, *cg, charge, p.energy_bound, p.apow_bound);
    } else {
        blk.cells = enumerate_basis(id, charge, p.energy_bound, p.apow_bound, p.filter);
    }
    blk.level.reserve(blk.cells.size());
    blk.qdeg2.reserve(blk.cells.size());
    for (size_t i = 0; i < blk.cells.size(); ++i) {
        blk.index[blk.cells[i]] = int(i);
        const Monomial& m = blk.cells[i].mono;
        blk.level.push_back(energy_of(m, id.family) - blk.cells[i].apow);
        if (p.tilde) {
            // ground column encodes (summand, depth); its h-weight is
            // len - 2*depth with len = lambda + mu - 2*summand
            Monomial plain = m;
            const int i_sum = cg->summand_of_column(m.gj);
            const int depth = cg->depth_of_column(m.gj);
            plain.gj = 0;
            plain.gk = 0;
            auto [p2, q2] = bidegree_of(plain, ModuleId{id.family, 0, 0, id.with_fock});
            const int weight = (id.lambda + id.mu - 2 * i_sum) - 2 * depth;
            blk.qdeg2.push_back(q2.doubled + weight);
        } else {
            auto [p2, q2] = bidegree_of(m, id);
            blk.qdeg2.push_back(q2.doubled);
        }
    }
    return blk;
}

// the module-level vector represented by a cell, ignoring the a-power tag
Vector cell_vector(const ModuleId& id, const SliceParams& p, const Monomial& m,
                   const ClebschGordan* cg, std::map<Monomial, Vector>* hat_cache) {
    if (p.tilde) {
        Vector v(id);
        const int col = m.gj;
        for (int r = 0; r < cg->dim(); ++r) {
            const Rational c = cg->adapted_basis()(r, col);
            if (c.is_zero()) continue;
            Monomial t = m;
            t.gj = r / (id.mu + 1);
            t.gk = r % (id.mu + 1);
            v.add_term(t, PolyA(c));
        }
        return v;
    }
    if (p.filter == SliceFilter::D) {
        auto it = hat_cache->find(m);
        if (it == hat_cache->end())
            it = hat_cache->emplace(m, hatted_expansion(id, m)).first;
        return it->second;
    }
    return Vector::single(id, m, PolyA(1));
}

enum class WhichOp { D, Chi, DStd };

Vector apply_which(WhichOp op, const Vector& v) {
    switch (op) {
        case WhichOp::D: return apply_d(v);
        case WhichOp::Chi: return apply_chi(v);
        case WhichOp::DStd: return apply_dstd(v);
    }
    throw std::logic_error("apply_which");
}

// translate an exact image vector into target cells for source a-power k
void distribute(const ModuleId& id, const SliceParams& p, const ChargeBlock& target,
                const std::map<Monomial, PolyA>& terms, int k, SparseMatQ& mat, int col) {
    for (const auto& [m, c] : terms) {
        for (int e = 0; e <= c.degree(); ++e) {
            const Rational r = c.coeff(e);
            if (r.is_zero()) continue;
            const int kk = k + e;
            if (kk >= p.apow_bound) continue;
            auto it = target.index.find(BasisKey{m, kk});
            if (it == target.index.end())
                throw std::logic_error("build_slice: closure violation at " + id.str());
            mat.add(it->second, col, r);
        }
    }
}

}  // namespace

ComplexSlice build_slice(const ModuleId& id, const SliceParams& params) {
    ComplexSlice s;
    s.id = id;
    s.params = params;
    if (params.tilde) {
        if (id.family != Family::TwoPoint)
            throw std::invalid_argument("build_slice: tilde basis requires the two-point module");
        s.cg = std::make_shared<ClebschGordan>(id.lambda, id.mu);
    }

    for (int n = params.charge_lo; n <= params.charge_hi; ++n)
        s.blocks[n] = make_block(id, params, n, s.cg.get());

    for (int n = params.charge_lo; n < params.charge_hi; ++n) {
        const ChargeBlock& src = s.blocks.at(n);
        const ChargeBlock& dst = s.blocks.at(n + 1);
        SparseMatQ md, mchi, mdstd;
        md.resize(dst.size(), src.size());
        if (params.with_chi_dstd) {
            mchi.resize(dst.size(), src.size());
            mdstd.resize(dst.size(), src.size());
        }

        // group the cells per monomial so the operator is applied once each
        std::vector<std::pair<const Monomial*, std::vector<int>>> groups;
        for (int cidx = 0; cidx < src.size(); ++cidx) {
            if (!groups.empty() && *groups.back().first == src.cells[cidx].mono)
                groups.back().second.push_back(cidx);
            else
                groups.push_back({&src.cells[cidx].mono, {cidx}});
        }

        struct ColumnSet {
            std::map<Monomial, PolyA> d, chi, dstd;
        };
        std::vector<ColumnSet> results(groups.size());
        std::atomic<size_t> next{0};
        const int jobs = std::max(1, params.jobs);
        auto worker = [&]() {
            std::map<Monomial, Vector> hat_cache;
            for (;;) {
                const size_t g = next.fetch_add(1);
                if (g >= groups.size()) break;
                Vector base = cell_vector(id, params, *groups[g].first, s.cg.get(), &hat_cache);
                auto express = [&](const Vector& img) {
                    std::map<Monomial, PolyA> out;
                    if (img.is_zero()) return out;
                    if (params.tilde) {
                        for (const auto& [m, c] : img.terms()) {
                            Monomial word = m;
                            word.gj = word.gk = 0;
                            for (const auto& tc :
                                 tilde_decompose(*s.cg, m.gj, m.gk, c)) {
                                Monomial t = word;
                                t.gj = s.cg->column_of(tc.summand, tc.depth);
                                out[t] += tc.coeff;
                            }
                        }
                        for (auto it = out.begin(); it != out.end();) {
                            if (it->second.is_zero()) it = out.erase(it);
                            else ++it;
                        }
                        return out;
                    }
                    if (params.filter == SliceFilter::D) {
                        Vector copy = img;
                        return peel_to_hatted(id, std::move(copy), hat_cache);
                    }
                    for (const auto& [m, c] : img.terms()) out[m] = c;
                    return out;
                };
                results[g].d = express(apply_which(WhichOp::D, base));
                if (params.with_chi_dstd) {
                    results[g].chi = express(apply_which(WhichOp::Chi, base));
                    results[g].dstd = express(apply_which(WhichOp::DStd, base));
                }
            }
        };
        if (jobs == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }

        for (size_t g = 0; g < groups.size(); ++g) {
            for (int cidx : groups[g].second) {
                const int k = src.cells[cidx].apow;
                distribute(id, params, dst, results[g].d, k, md, cidx);
                if (params.with_chi_dstd) {
                    distribute(id, params, dst, results[g].chi, k, mchi, cidx);
                    distribute(id, params, dst, results[g].dstd, k, mdstd, cidx);
                }
            }
        }
        md.finalize();
        s.d[n] = std::move(md);
        if (params.with_chi_dstd) {
            mchi.finalize();
            mdstd.finalize();
            s.chi[n] = std::move(mchi);
            s.dstd[n] = std::move(mdstd);
        }
    }
    return s;
}

LadderOrder ladder_by_level(const ChargeBlock& block) {
    LadderOrder lo;
    lo.order.resize(block.size());
    for (int i = 0; i < block.size(); ++i) lo.order[i] = i;
    std::stable_sort(lo.order.begin(), lo.order.end(),
                     [&](int a, int b) { return block.level[a] < block.level[b]; });
    for (int i = 0; i < block.size(); ++i) {
        const int lv = block.level[lo.order[i]];
        if (lo.levels.empty() || lo.levels.back() != lv) {
            lo.levels.push_back(lv);
            lo.group_end.push_back(i + 1);
        } else {
            lo.group_end.back() = i + 1;
        }
    }
    return lo;
}

LadderOrder ladder_by_qdeg(const ChargeBlock& block) {
    LadderOrder lo;
    lo.order.resize(block.size());
    for (int i = 0; i < block.size(); ++i) lo.order[i] = i;
    std::stable_sort(lo.order.begin(), lo.order.end(),
                     [&](int a, int b) { return block.qdeg2[a] > block.qdeg2[b]; });
    for (int i = 0; i < block.size(); ++i) {
        const int q = block.qdeg2[lo.order[i]];
        if (lo.levels.empty() || lo.levels.back() != q) {
            lo.levels.push_back(q);
            lo.group_end.push_back(i + 1);
        } else {
            lo.group_end.back() = i + 1;
        }
    }
    return lo;
}

}  // namespace semicrit
