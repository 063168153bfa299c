#include "semicrit/states.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace semicrit {

std::string ModuleId::str() const {
    std::string s;
    switch (family) {
        case Family::TwoPoint: s = "V2[" + std::to_string(lambda) + "," + std::to_string(mu) + "]"; break;
        case Family::OnePointW: s = "W1[" + std::to_string(lambda) + "," + std::to_string(mu) + "]"; break;
        case Family::OnePointV: s = "V1[" + std::to_string(lambda) + "]"; break;
    }
    if (with_fock) s += "*L";
    return s;
}

int energy_of(const Monomial& m, Family f) {
    // two-point: energy(x z_m) = -2m, energy(psi* z_m) = -2m - 1
    // one-point: energy(x t^k) = -k, energy(psi* t^k) = -k - 1
    const bool two = (f == Family::TwoPoint);
    auto mode_e = [two](HalfInt h) { return two ? -h.doubled : -h.doubled / 2; };
    int e = 0;
    for (const auto& b : m.bosons) e += mode_e(b.mode);
    for (const auto& p : m.psi) e += mode_e(p);
    for (const auto& p : m.psistar) e += mode_e(p) - 1;
    return e;
}

std::pair<HalfInt, HalfInt> bidegree_of(const Monomial& m, const ModuleId& id) {
    // doubled bookkeeping: E -> (-2, 2), H -> 0, F -> (2, -2), psi -> (-2, 0),
    // psi* -> (2, 0); ground of h-weight 2n -> (-2n, 2n) doubled
    int p2 = 0, q2 = 0;
    for (const auto& b : m.bosons) {
        if (b.kind == GenKind::E) { p2 -= 2; q2 += 2; }
        if (b.kind == GenKind::F) { p2 += 2; q2 -= 2; }
    }
    p2 -= 2 * int(m.psi.size());
    q2 += 0;
    p2 += 2 * int(m.psistar.size());
    int weight = 0;  // h-weight of the ground vector
    if (id.family == Family::OnePointV) {
        weight = id.lambda - 2 * m.gj;
    } else {
        weight = id.lambda - 2 * m.gj + id.mu - 2 * m.gk;
    }
    p2 -= weight;
    q2 += weight;
    return {HalfInt::of(p2), HalfInt::of(q2)};
}

GroundAction sl2_ground(GenKind x, int j, int highest) {
    GroundAction g;
    switch (x) {
        case GenKind::E:
            g.dj = -1;
            g.coeff = Rational(long(j) * (highest - j + 1));
            break;
        case GenKind::H:
            g.dj = 0;
            g.coeff = Rational(highest - 2 * j);
            break;
        case GenKind::F:
            g.dj = 1;
            g.coeff = (j < highest) ? Rational(1) : Rational(0);
            break;
        default:
            throw std::invalid_argument("sl2_ground: fermionic generator");
    }
    return g;
}

namespace {

struct Word {
    std::vector<Op> ops;
    int gj = 0;
    int gk = 0;
    PolyA coeff;
};

bool is_ann(const Op& o, Family f) {
    (void)f;
    return o.mode.doubled >= 0;
}

int ferm_class(GenKind k) { return k == GenKind::Psi ? 1 : 2; }

// contraction scalar {X, Y} for fermionic ops
PolyA contraction(const Op& x, const Op& y, Family f) {
    if (x.kind == y.kind) return PolyA();
    if (f == Family::TwoPoint) {
        const int i = x.mode.ceil() + y.mode.ceil();
        const int j = x.mode.floor() + y.mode.floor();
        return res2_ts(i, j);
    }
    // one-point: Res_1(t^{k1+k2}) = [k1+k2 == -1]
    const int k = x.mode.doubled / 2 + y.mode.doubled / 2;
    return (k == -1) ? PolyA(1) : PolyA();
}

// bracket [x(mode1), y(mode2)] -> list of boson ops with coefficients, plus
// the central scalar (critical level, C2 = -1/2 folded in)
struct BracketTerms {
    std::vector<std::pair<Op, PolyA>> pieces;
    PolyA scalar;
};

BracketTerms boson_bracket(const Op& x, const Op& y, Family f) {
    BracketTerms out;
    const Sl2Bracket br = sl2_bracket(x.kind, y.kind);
    if (f == Family::TwoPoint) {
        if (br.coeff != 0) {
            const int i = x.mode.ceil() + y.mode.ceil();
            const int j = x.mode.floor() + y.mode.floor();
            RingElt prod = from_ts_monomial(i, j);
            for (const auto& [m, c] : prod.terms())
                out.pieces.push_back({Op{br.kind, m}, c * PolyA(Rational(br.coeff))});
        }
        const Rational kap = killing(x.kind, y.kind);
        if (!kap.is_zero()) {
            PolyA c = res2(ring_mul(ring_derive(RingElt::z(x.mode)), RingElt::z(y.mode)));
            if (!c.is_zero()) out.scalar = c * PolyA(kap * Rational(-1, 2));
        }
    } else {
        const int k = x.mode.doubled / 2 + y.mode.doubled / 2;
        if (br.coeff != 0)
            out.pieces.push_back({Op{br.kind, HalfInt::whole(k)}, PolyA(Rational(br.coeff))});
        const Rational kap = killing(x.kind, y.kind);
        if (!kap.is_zero()) {
            // Res_1(d(t^k1) t^k2) = k1 [k1 + k2 == 0]
            const int k1 = x.mode.doubled / 2;
            if (k == 0 && k1 != 0)
                out.scalar = PolyA(Rational(k1) * kap * Rational(-1, 2));
        }
    }
    return out;
}

// evaluation of a bosonic annihilator against the ground vector
void eval_ground(const Op& op, const Word& w, const ModuleId& id, std::deque<Word>& work) {
    auto push = [&](int dj, int dk, const PolyA& c) {
        if (c.is_zero()) return;
        Word nw = w;
        nw.ops.pop_back();
        nw.gj += dj;
        nw.gk += dk;
        nw.coeff = w.coeff * c;
        work.push_back(std::move(nw));
    };
    switch (id.family) {
        case Family::TwoPoint: {
            if (op.mode.doubled == 0) {
                GroundAction a1 = sl2_ground(op.kind, w.gj, id.lambda);
                push(a1.dj, 0, PolyA(a1.coeff));
                GroundAction a2 = sl2_ground(op.kind, w.gk, id.mu);
                push(0, a2.dj, PolyA(a2.coeff));
            } else if (op.mode.doubled == 1) {
                // z_{1/2} = t: t(0,-a) = 0, t(a,0) = a
                GroundAction a2 = sl2_ground(op.kind, w.gk, id.mu);
                push(0, a2.dj, PolyA::monomial(a2.coeff, 1));
            }
            break;
        }
        case Family::OnePointW: {
            if (op.mode.doubled == 0) {
                GroundAction a1 = sl2_ground(op.kind, w.gj, id.lambda);
                push(a1.dj, 0, PolyA(a1.coeff));
                GroundAction a2 = sl2_ground(op.kind, w.gk, id.mu);
                push(0, a2.dj, PolyA(a2.coeff));
            }
            break;
        }
        case Family::OnePointV: {
            if (op.mode.doubled == 0) {
                GroundAction a1 = sl2_ground(op.kind, w.gj, id.lambda);
                push(a1.dj, 0, PolyA(a1.coeff));
            }
            break;
        }
    }
}

// Straightening rewrite loop. Words are op lists over a ground vector; the
// normal form is sorted bosonic creations, then psi, then psi* creations.
void normalize(Word start, const ModuleId& id, Vector& out) {
    const Family fam = id.family;
    std::deque<Word> work;
    work.push_back(std::move(start));

    while (!work.empty()) {
        Word w = std::move(work.back());
        work.pop_back();
        if (w.coeff.is_zero()) continue;

        bool done = true;
        const size_t n = w.ops.size();
        for (size_t i = 0; i < n && done; ++i) {
            const Op x = w.ops[i];
            const bool xb = is_bosonic(x.kind);
            const bool xann = is_ann(x, fam);

            if (i + 1 == n) {
                // adjacent to the ground vector
                if (!xann) break;
                done = false;
                if (xb) {
                    eval_ground(x, w, id, work);
                }  // fermionic annihilator kills the vacuum: drop the word
                break;
            }

            const Op y = w.ops[i + 1];
            const bool yb = is_bosonic(y.kind);

            if (xb && yb) {
                const bool yann = is_ann(y, fam);
                bool swap = false;
                if (xann && !yann) swap = true;
                if (!xann && !yann && op_less(y, x)) swap = true;
                if (!swap) continue;
                done = false;
                Word sw = w;
                std::swap(sw.ops[i], sw.ops[i + 1]);
                work.push_back(std::move(sw));
                BracketTerms bt = boson_bracket(x, y, fam);
                for (const auto& [op2, c] : bt.pieces) {
                    Word bw = w;
                    bw.ops.erase(bw.ops.begin() + i, bw.ops.begin() + i + 2);
                    bw.ops.insert(bw.ops.begin() + i, op2);
                    bw.coeff = w.coeff * c;
                    work.push_back(std::move(bw));
                }
                if (!bt.scalar.is_zero()) {
                    Word cw = w;
                    cw.ops.erase(cw.ops.begin() + i, cw.ops.begin() + i + 2);
                    cw.coeff = w.coeff * bt.scalar;
                    work.push_back(std::move(cw));
                }
                break;
            }

            if (xb != yb) {
                // boson and fermion commute; a misplaced one bubbles through
                bool swap = false;
                if (xb && xann && !yb) swap = true;   // annihilating boson heads right
                if (!xb && yb) swap = true;           // fermion sits right of bosons
                if (!swap) continue;
                done = false;
                Word sw = std::move(w);
                std::swap(sw.ops[i], sw.ops[i + 1]);
                work.push_back(std::move(sw));
                break;
            }

            // both fermionic
            {
                if (x == y) { done = false; break; }  // odd square is zero
                const bool xann2 = is_ann(x, fam);
                bool swap = false;
                if (xann2) swap = true;
                else if (ferm_class(x.kind) > ferm_class(y.kind)) swap = true;
                else if (ferm_class(x.kind) == ferm_class(y.kind) && y.mode < x.mode) swap = true;
                if (!swap) continue;
                done = false;
                Word sw = w;
                std::swap(sw.ops[i], sw.ops[i + 1]);
                sw.coeff = -sw.coeff;
                work.push_back(std::move(sw));
                PolyA c = contraction(x, y, fam);
                if (!c.is_zero()) {
                    Word cw = std::move(w);
                    cw.ops.erase(cw.ops.begin() + i, cw.ops.begin() + i + 2);
                    cw.coeff = cw.coeff * c;
                    work.push_back(std::move(cw));
                }
                break;
            }
        }

        if (!done) continue;

        Monomial m;
        m.gj = w.gj;
        m.gk = w.gk;
        for (const auto& o : w.ops) {
            if (is_bosonic(o.kind)) m.bosons.push_back(o);
            else if (o.kind == GenKind::Psi) m.psi.push_back(o.mode);
            else m.psistar.push_back(o.mode);
        }
        out.add_term(m, w.coeff);
    }
}

Word word_of(const Monomial& m, const PolyA& coeff) {
    Word w;
    w.gj = m.gj;
    w.gk = m.gk;
    w.coeff = coeff;
    w.ops = m.bosons;
    for (const auto& p : m.psi) w.ops.push_back({GenKind::Psi, p});
    for (const auto& p : m.psistar) w.ops.push_back({GenKind::PsiStar, p});
    return w;
}

}  // namespace

Vector apply_mode(GenKind kind, HalfInt mode, const Vector& v) {
    const ModuleId& id = v.module();
    if (id.family != Family::TwoPoint && !mode.is_integer())
        throw std::invalid_argument("apply_mode: half-odd mode in a one-point module");
    if (is_fermionic(kind) && !id.with_fock)
        throw std::invalid_argument("apply_mode: no Fock factor in this module");
    Vector out(id);
    for (const auto& [m, c] : v.terms()) {
        Word w = word_of(m, c);
        w.ops.insert(w.ops.begin(), Op{kind, mode});
        normalize(std::move(w), id, out);
    }
    return out;
}

Vector apply_gen(GenKind kind, const RingElt& f, const Vector& v) {
    if (v.module().family != Family::TwoPoint)
        throw std::invalid_argument("apply_gen: two-point argument on one-point module");
    Vector out(v.module());
    for (const auto& [m, c] : f.terms()) {
        Vector piece = apply_mode(kind, m, v);
        out += piece.scaled(c);
    }
    return out;
}

Vector apply_gen1(GenKind kind, const LaurentElt& f, const Vector& v) {
    if (v.module().family == Family::TwoPoint)
        throw std::invalid_argument("apply_gen1: one-point argument on two-point module");
    Vector out(v.module());
    for (const auto& [k, c] : f.terms()) {
        Vector piece = apply_mode(kind, HalfInt::whole(k), v);
        out += piece.scaled(PolyA(c));
    }
    return out;
}

Vector specialize_vec(const Vector& v) {
    const ModuleId& id = v.module();
    if (id.family != Family::TwoPoint)
        throw std::invalid_argument("specialize_vec: expects a two-point vector");
    ModuleId tgt = ModuleId::one_point_w(id.lambda, id.mu, id.with_fock);
    Vector out(tgt);
    for (const auto& [m, c] : v.terms()) {
        const Rational c0 = c.coeff(0);
        if (c0.is_zero()) continue;
        Monomial t = m;
        for (auto& b : t.bosons) b.mode = HalfInt::of(2 * b.mode.doubled);
        for (auto& p : t.psi) p = HalfInt::of(2 * p.doubled);
        for (auto& p : t.psistar) p = HalfInt::of(2 * p.doubled);
        out.add_term(t, PolyA(c0));
    }
    return out;
}

std::vector<BasisKey> enumerate_basis(const ModuleId& id, int charge, int energy_bound,
                                      int apow_bound, SliceFilter filter) {
    if (apow_bound <= 0)
        throw std::invalid_argument("enumerate_basis: need a positive a-power bound");
    const bool two = (id.family == Family::TwoPoint);
    const int max_mode_e = energy_bound + apow_bound - 1;

    std::vector<GenKind> kinds;
    bool use_psi = true, use_psistar = true, vac_only = false;
    switch (filter) {
        case SliceFilter::Full: kinds = {GenKind::F, GenKind::H, GenKind::E}; break;
        case SliceFilter::D:
            kinds = {GenKind::F, GenKind::H};
            use_psi = false;
            break;
        case SliceFilter::E:
            kinds = {GenKind::E};
            use_psistar = false;
            vac_only = true;
            break;
    }
    if (!id.with_fock) {
        use_psi = use_psistar = false;
        if (charge != 0) return {};
    }

    // grounds
    std::vector<std::pair<int, int>> grounds;
    if (vac_only) {
        grounds.push_back({0, 0});
    } else if (id.family == Family::OnePointV) {
        for (int j = 0; j <= id.lambda; ++j) grounds.push_back({j, 0});
    } else {
        for (int j = 0; j <= id.lambda; ++j)
            for (int k = 0; k <= id.mu; ++k) grounds.push_back({j, k});
    }

    // fermion mode pools by energy
    auto psi_mode = [two](int e) { return HalfInt::of(two ? -e : -2 * e); };        // energy e >= 1
    auto psistar_mode = [two](int e) { return HalfInt::of(two ? -e - 1 : -2 * (e + 1)); };  // energy e >= 0

    // enumerate psi subsets as sorted-descending-energy lists
    struct FermSet {
        std::vector<HalfInt> modes;
        int energy;
    };
    std::vector<std::vector<FermSet>> psi_by_count(1), psistar_by_count(1);
    psi_by_count[0].push_back({{}, 0});
    psistar_by_count[0].push_back({{}, 0});
    if (use_psi) {
        std::function<void(int, int, std::vector<int>&)> rec = [&](int min_e, int used, std::vector<int>& cur) {
            if (!cur.empty()) {
                FermSet fs;
                fs.energy = used;
                for (auto it = cur.rbegin(); it != cur.rend(); ++it) fs.modes.push_back(psi_mode(*it));
                if (psi_by_count.size() <= cur.size()) psi_by_count.resize(cur.size() + 1);
                psi_by_count[cur.size()].push_back(fs);
            }
            for (int e = min_e; used + e <= max_mode_e; ++e) {
                cur.push_back(e);
                rec(e + 1, used + e, cur);
                cur.pop_back();
            }
        };
        std::vector<int> cur;
        rec(1, 0, cur);
    }
    if (use_psistar) {
        std::function<void(int, int, std::vector<int>&)> rec = [&](int min_e, int used, std::vector<int>& cur) {
            if (!cur.empty()) {
                FermSet fs;
                fs.energy = used;
                for (auto it = cur.rbegin(); it != cur.rend(); ++it) fs.modes.push_back(psistar_mode(*it));
                if (psistar_by_count.size() <= cur.size()) psistar_by_count.resize(cur.size() + 1);
                psistar_by_count[cur.size()].push_back(fs);
            }
            for (int e = min_e; used + e <= max_mode_e; ++e) {
                cur.push_back(e);
                rec(e + 1, used + e, cur);
                cur.pop_back();
            }
        };
        std::vector<int> cur;
        rec(0, 0, cur);
    }

    std::vector<BasisKey> out;
    std::vector<Op> cur_bosons;
    auto emit_with = [&](const std::vector<Op>& bosons, int boson_e) {
        for (size_t np = 0; np < psi_by_count.size(); ++np) {
            const int ns_signed = charge + int(np);
            if (ns_signed < 0 || size_t(ns_signed) >= psistar_by_count.size()) continue;
            for (const auto& ps : psi_by_count[np]) {
                for (const auto& pss : psistar_by_count[ns_signed]) {
                    const int mode_e = boson_e + ps.energy + pss.energy;
                    if (mode_e > max_mode_e) continue;
                    const int kmin = std::max(0, mode_e - energy_bound);
                    if (kmin >= apow_bound) continue;
                    Monomial m;
                    m.bosons = bosons;
                    std::sort(m.bosons.begin(), m.bosons.end(), op_less);
                    m.psi = ps.modes;
                    m.psistar = pss.modes;
                    for (const auto& [gj, gk] : grounds) {
                        m.gj = gj;
                        m.gk = gk;
                        for (int k = kmin; k < apow_bound; ++k) out.push_back({m, k});
                    }
                }
            }
        }
    };

    std::function<void(int, int)> boson_rec = [&](int used, int min_e) {
        emit_with(cur_bosons, used);
        for (int e = min_e; used + e <= max_mode_e; ++e) {
            const int doubled = two ? -e : -2 * e;
            for (GenKind k : kinds) {
                if (e == min_e && !cur_bosons.empty()) {
                    const Op& last = cur_bosons.back();
                    if (last.mode.doubled == doubled &&
                        boson_sort_key(k) < boson_sort_key(last.kind))
                        continue;
                }
                cur_bosons.push_back(Op{k, HalfInt::of(doubled)});
                boson_rec(used + e, e);
                cur_bosons.pop_back();
            }
        }
    };
    boson_rec(0, 1);

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace semicrit
