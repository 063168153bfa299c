#include "semicrit/zigzag.hpp"

#include <optional>
#include <stdexcept>

#include "semicrit/linalg.hpp"
#include "semicrit/operators.hpp"

namespace semicrit {

namespace {

// cells (monomial, apow) of a vector; throws when outside the truncation
std::map<std::pair<Monomial, int>, Rational> cells_of(const Vector& v, int energy_bound,
                                                      int apow_bound) {
    std::map<std::pair<Monomial, int>, Rational> out;
    for (const auto& [m, c] : v.terms()) {
        const int me = energy_of(m, v.module().family);
        for (int e = 0; e <= c.degree(); ++e) {
            const Rational r = c.coeff(e);
            if (r.is_zero()) continue;
            if (e >= apow_bound || me - e > energy_bound)
                throw std::runtime_error(
                    "zigzag: correction leaves the truncation; enlarge energy/apow bounds");
            out[{m, e}] = r;
        }
    }
    return out;
}

}  // namespace

ZigzagResult zigzag(const Vector& seed, int energy_bound, int apow_bound) {
    const ModuleId& id = seed.module();
    if (!id.two_point() || !id.with_fock)
        throw std::invalid_argument("zigzag: expects the two-point complex");

    // the seed must be chi-closed and of homogeneous bidegree
    if (!apply_chi2(seed).is_zero())
        throw std::invalid_argument("zigzag: seed is not chi-closed");
    std::optional<int> q2;
    for (const auto& [m, c] : seed.terms()) {
        auto [p, q] = bidegree_of(m, id);
        if (q2 && *q2 != q.doubled)
            throw std::invalid_argument("zigzag: seed bidegree is not homogeneous");
        q2 = q.doubled;
    }
    if (!q2) return {seed, 0};

    ZigzagResult res;
    res.corrected = seed;
    Vector phi = seed;
    const int max_steps = id.lambda + id.mu + 2;

    bool closed = false;
    for (int step = 0; step < max_steps && !closed; ++step) {
        Vector rhs_vec = apply_dstd2(phi);
        if (rhs_vec.is_zero()) {
            closed = true;
            break;
        }

        // candidate cells: charge 0, bidegree q2 + step + 1 (doubled +2 each step)
        const int target_q2 = *q2 + 2 * (step + 1);
        std::vector<BasisKey> cand;
        for (const auto& bk : enumerate_basis(id, 0, energy_bound, apow_bound)) {
            auto [p, q] = bidegree_of(bk.mono, id);
            if (q.doubled == target_q2) cand.push_back(bk);
        }
        auto rhs_cells = cells_of(rhs_vec, energy_bound, apow_bound);

        // row space: cells of chi(candidates) and of rhs
        std::map<std::pair<Monomial, int>, int> row_index;
        auto row_of = [&](const std::pair<Monomial, int>& key) {
            auto it = row_index.find(key);
            if (it == row_index.end()) it = row_index.emplace(key, int(row_index.size())).first;
            return it->second;
        };
        std::vector<std::map<int, Rational>> cols(cand.size());
        for (size_t c = 0; c < cand.size(); ++c) {
            Vector img = apply_chi2(Vector::single(id, cand[c].mono, PolyA(1)));
            for (const auto& [m, coeff] : img.terms()) {
                for (int e = 0; e <= coeff.degree(); ++e) {
                    const Rational r = coeff.coeff(e);
                    if (r.is_zero()) continue;
                    const int kk = cand[c].apow + e;
                    if (kk >= apow_bound) continue;
                    cols[c][row_of({m, kk})] += r;
                }
            }
        }
        for (const auto& [key, r] : rhs_cells) row_of(key);

        const int nrows = int(row_index.size());
        QMatrix mat = QMatrix::Constant(nrows, int(cand.size()), Rational(0));
        for (size_t c = 0; c < cand.size(); ++c)
            for (const auto& [r, val] : cols[c]) mat(r, int(c)) = val;
        QVector b = QVector::Constant(nrows, Rational(0));
        for (const auto& [key, r] : rhs_cells) b(row_index.at(key)) = -r;

        QVector x;
        if (!solve_linear(mat, b, x))
            throw std::runtime_error(
                "zigzag: chi-system inconsistent; enlarge energy/apow bounds");

        Vector corr(id);
        for (size_t c = 0; c < cand.size(); ++c) {
            if (x(int(c)).is_zero()) continue;
            corr.add_term(cand[c].mono, PolyA::monomial(x(int(c)), cand[c].apow));
        }
        res.corrected += corr;
        res.steps += 1;
        phi = corr;
    }

    if (!apply_d2(res.corrected).is_zero())
        throw std::runtime_error("zigzag: corrected element is not closed; enlarge bounds");
    return res;
}

}  // namespace semicrit
