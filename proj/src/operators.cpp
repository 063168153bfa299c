#include "semicrit/operators.hpp"

#include <stdexcept>

namespace semicrit {

bool strict_range_checks = false;

namespace {

int boson_energy(const Monomial& m, Family f) {
    int e = 0;
    for (const auto& b : m.bosons) e += (f == Family::TwoPoint) ? -b.mode.doubled : -b.mode.doubled / 2;
    return e;
}

int min_psi_doubled(const Monomial& m) {
    return m.psi.empty() ? 0 : m.psi.front().doubled;
}
int min_psistar_doubled(const Monomial& m) {
    return m.psistar.empty() ? 0 : m.psistar.front().doubled;
}

// apply e(w_n) (x) psi*(z_{-n-1/2}) to a single-monomial vector
Vector dstd2_term(HalfInt n, const Vector& mono) {
    Vector t = apply_mode(GenKind::PsiStar, HalfInt::of(-n.doubled - 1), mono);
    if (t.is_zero()) return t;
    return apply_gen(GenKind::E, w_basis(n), t);
}

Vector dstd1_term(int n, const Vector& mono) {
    Vector t = apply_mode(GenKind::PsiStar, HalfInt::whole(-1 - n), mono);
    if (t.is_zero()) return t;
    return apply_mode(GenKind::E, HalfInt::whole(n), t);
}

template <typename TermFn>
Vector sum_over_range(const Vector& v, int lo_doubled, int hi_doubled, int step,
                      TermFn&& term) {
    Vector out(v.module());
    for (int d = lo_doubled; d <= hi_doubled; d += step) out += term(d);
    if (strict_range_checks) {
        Vector extra(v.module());
        for (int d = lo_doubled - 2 * step; d < lo_doubled; d += step) extra += term(d);
        for (int d = hi_doubled + step; d <= hi_doubled + 2 * step; d += step) extra += term(d);
        if (!extra.is_zero())
            throw std::logic_error("operator sum: effective range too narrow");
    }
    return out;
}

}  // namespace

Vector apply_chi2(const Vector& v) { return apply_mode(GenKind::PsiStar, HalfInt::whole(0), v); }
Vector apply_chi1(const Vector& v) { return apply_mode(GenKind::PsiStar, HalfInt::whole(0), v); }

Vector apply_dstd2(const Vector& v) {
    if (v.module().family != Family::TwoPoint)
        throw std::invalid_argument("apply_dstd2: expects a two-point module");
    Vector out(v.module());
    for (const auto& [m, c] : v.terms()) {
        Vector mono = Vector::single(v.module(), m, c);
        // contraction window per psi mode p covers n in {p - 1/2, p}
        const int lo = std::min(min_psi_doubled(m) - 1, 0);
        const int hi = boson_energy(m, Family::TwoPoint) + 2;  // n <= bosE/2 + 1
        out += sum_over_range(mono, lo, hi, 1,
                              [&](int d) { return dstd2_term(HalfInt::of(d), mono); });
    }
    return out;
}

Vector apply_dstd1(const Vector& v) {
    if (v.module().family == Family::TwoPoint)
        throw std::invalid_argument("apply_dstd1: expects a one-point module");
    Vector out(v.module());
    for (const auto& [m, c] : v.terms()) {
        Vector mono = Vector::single(v.module(), m, c);
        const int lo = std::min(min_psi_doubled(m) / 2, 0);
        const int hi = boson_energy(m, v.module().family) + 1;
        out += sum_over_range(mono, 2 * lo, 2 * hi, 2,
                              [&](int d) { return dstd1_term(d / 2, mono); });
    }
    return out;
}

Vector apply_d2(const Vector& v) { return apply_dstd2(v) + apply_chi2(v); }
Vector apply_d1(const Vector& v) { return apply_dstd1(v) + apply_chi1(v); }

namespace {

// one summand of the 2-Sugawara operator: the ordered product over the dual
// bases (e,h,f) / (f,h/2,e), with the annihilating factor applied first;
// at n = 0 the left factor acts first
Vector sug2_term(HalfInt n, const Vector& mono) {
    struct Pair {
        GenKind up, dn;
        Rational scale;
    };
    static const Pair pairs[3] = {
        {GenKind::E, GenKind::F, Rational(1)},
        {GenKind::H, GenKind::H, Rational(1, 2)},
        {GenKind::F, GenKind::E, Rational(1)},
    };
    Vector out(mono.module());
    const RingElt wn = w_basis(n);
    const RingElt zmn = RingElt::z(HalfInt::of(-n.doubled));
    for (const auto& p : pairs) {
        Vector t(mono.module());
        if (n.doubled >= 0) {
            t = apply_gen(p.up, wn, mono);
            if (!t.is_zero()) t = apply_gen(p.dn, zmn, t);
        } else {
            t = apply_gen(p.dn, zmn, mono);
            if (!t.is_zero()) t = apply_gen(p.up, wn, t);
        }
        out += t.scaled(PolyA(p.scale));
    }
    return out;
}

Vector sug1_term(int n, const Vector& mono) {
    struct Pair {
        GenKind up, dn;
        Rational scale;
    };
    static const Pair pairs[3] = {
        {GenKind::E, GenKind::F, Rational(1)},
        {GenKind::H, GenKind::H, Rational(1, 2)},
        {GenKind::F, GenKind::E, Rational(1)},
    };
    Vector out(mono.module());
    for (const auto& p : pairs) {
        Vector t(mono.module());
        if (n >= 0) {
            t = apply_mode(p.up, HalfInt::whole(n), mono);
            if (!t.is_zero()) t = apply_mode(p.dn, HalfInt::whole(-n), t);
        } else {
            t = apply_mode(p.dn, HalfInt::whole(-n), mono);
            if (!t.is_zero()) t = apply_mode(p.up, HalfInt::whole(n), t);
        }
        out += t.scaled(PolyA(p.scale));
    }
    return out;
}

}  // namespace

Vector apply_sugawara2(const Vector& v) {
    if (v.module().family != Family::TwoPoint)
        throw std::invalid_argument("apply_sugawara2: expects a two-point module");
    Vector out(v.module());
    for (const auto& [m, c] : v.terms()) {
        Vector mono = Vector::single(v.module(), m, c);
        const int hi = boson_energy(m, Family::TwoPoint) + 2;
        out += sum_over_range(mono, -hi, hi, 1,
                              [&](int d) { return sug2_term(HalfInt::of(d), mono); });
    }
    return out;
}

Vector apply_sugawara1(const Vector& v) {
    if (v.module().family == Family::TwoPoint)
        throw std::invalid_argument("apply_sugawara1: expects a one-point module");
    Vector out(v.module());
    for (const auto& [m, c] : v.terms()) {
        Vector mono = Vector::single(v.module(), m, c);
        const int hi = boson_energy(m, v.module().family) + 1;
        out += sum_over_range(mono, -2 * hi, 2 * hi, 2,
                              [&](int d) { return sug1_term(d / 2, mono); });
    }
    return out;
}

namespace {

// one pairing term of the normal-ordered fermion bilinear :psi psi*:(g):
// psi(z_m) psi*(k-th z-term of g w_{-m-1/2}); the annihilating factor acts
// first, with a sign when that reverses the written order
Vector bilinear_term2(HalfInt m, const RingElt& g, const Vector& mono) {
    Vector out(mono.module());
    RingElt partner = ring_mul(g, w_basis(HalfInt::of(-m.doubled - 1)));
    for (const auto& [k, c] : partner.terms()) {
        const bool left_ann = m.doubled >= 0;
        const bool right_ann = k.doubled >= 0;
        Vector t(mono.module());
        if (left_ann && !right_ann) {
            t = apply_mode(GenKind::Psi, m, mono);
            if (!t.is_zero()) t = apply_mode(GenKind::PsiStar, k, t);
            t = t.scaled(-c);
        } else {
            t = apply_mode(GenKind::PsiStar, k, mono);
            if (!t.is_zero()) t = apply_mode(GenKind::Psi, m, t);
            t = t.scaled(c);
        }
        out += t;
    }
    return out;
}

Vector bilinear_term1(int m, const LaurentElt& g, const Vector& mono) {
    Vector out(mono.module());
    LaurentElt partner = laurent_mul(g, LaurentElt::t(-m - 1));
    for (const auto& [k, c] : partner.terms()) {
        const bool left_ann = m >= 0;
        const bool right_ann = k >= 0;
        Vector t(mono.module());
        if (left_ann && !right_ann) {
            t = apply_mode(GenKind::Psi, HalfInt::whole(m), mono);
            if (!t.is_zero()) t = apply_mode(GenKind::PsiStar, HalfInt::whole(k), t);
            t = t.scaled(PolyA(-c));
        } else {
            t = apply_mode(GenKind::PsiStar, HalfInt::whole(k), mono);
            if (!t.is_zero()) t = apply_mode(GenKind::Psi, HalfInt::whole(m), t);
            t = t.scaled(PolyA(c));
        }
        out += t;
    }
    return out;
}

int ring_top_doubled(const RingElt& g) {
    int top = 0;
    for (const auto& [m, c] : g.terms()) top = std::max(top, m.doubled);
    return top;
}
int ring_bot_doubled(const RingElt& g) {
    int bot = 0;
    for (const auto& [m, c] : g.terms()) bot = std::min(bot, m.doubled);
    return bot;
}

}  // namespace

Vector apply_hatted_h(const RingElt& g, const Vector& v) {
    if (v.module().family != Family::TwoPoint)
        throw std::invalid_argument("apply_hatted_h: expects a two-point module");
    Vector out = apply_gen(GenKind::H, g, v);
    if (!v.module().with_fock) return out;
    for (const auto& [m, c] : v.terms()) {
        Vector mono = Vector::single(v.module(), m, c);
        // psi(z_m) branch bounds: contraction against existing fermions or
        // mixed creation pairs; generous on both sides
        const int lo = std::min({ring_bot_doubled(g) + min_psi_doubled(m) - 2,
                                 ring_bot_doubled(g) - 2, -2});
        const int hi = std::max({-min_psistar_doubled(m) + 2, ring_top_doubled(g) + 2, 2});
        Vector bil = sum_over_range(mono, lo, hi, 1,
                                    [&](int d) { return bilinear_term2(HalfInt::of(d), g, mono); });
        out += bil.scaled(PolyA(Rational(2)));
    }
    return out;
}

Vector apply_hatted_h1(const LaurentElt& g, const Vector& v) {
    if (v.module().family == Family::TwoPoint)
        throw std::invalid_argument("apply_hatted_h1: expects a one-point module");
    Vector out = apply_gen1(GenKind::H, g, v);
    if (!v.module().with_fock) return out;
    int gtop = 0, gbot = 0;
    for (const auto& [k, c] : g.terms()) {
        gtop = std::max(gtop, k);
        gbot = std::min(gbot, k);
    }
    for (const auto& [m, c] : v.terms()) {
        Vector mono = Vector::single(v.module(), m, c);
        const int lo = std::min({gbot + min_psi_doubled(m) / 2 - 1, gbot - 1, -1});
        const int hi = std::max({-min_psistar_doubled(m) / 2 + 1, gtop + 1, 1});
        Vector bil = sum_over_range(mono, 2 * lo, 2 * hi, 2,
                                    [&](int d) { return bilinear_term1(d / 2, g, mono); });
        out += bil.scaled(PolyA(Rational(2)));
    }
    return out;
}

Vector apply_d(const Vector& v) {
    return v.module().two_point() ? apply_d2(v) : apply_d1(v);
}
Vector apply_dstd(const Vector& v) {
    return v.module().two_point() ? apply_dstd2(v) : apply_dstd1(v);
}
Vector apply_chi(const Vector& v) {
    return v.module().two_point() ? apply_chi2(v) : apply_chi1(v);
}
Vector apply_sugawara(const Vector& v) {
    return v.module().two_point() ? apply_sugawara2(v) : apply_sugawara1(v);
}

bool is_odd(const OperatorHandle& op) {
    return std::visit(
        [](const auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, OpNamed>) {
                return node.tag != OpNamed::Sug;
            } else if constexpr (std::is_same_v<T, OpGen2>) {
                return is_fermionic(node.kind);
            } else if constexpr (std::is_same_v<T, OpGen1>) {
                return is_fermionic(node.kind);
            } else if constexpr (std::is_same_v<T, OpHatH2>) {
                return false;
            } else if constexpr (std::is_same_v<T, OpHatH1>) {
                return false;
            } else {
                const OpCommutator& c = node;
                return is_odd(*c.a) != is_odd(*c.b);
            }
        },
        op.node);
}

Vector apply_operator(const OperatorHandle& op, const Vector& v) {
    return std::visit(
        [&](const auto& node) -> Vector {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, OpNamed>) {
                switch (node.tag) {
                    case OpNamed::D: return apply_d(v);
                    case OpNamed::DStd: return apply_dstd(v);
                    case OpNamed::Chi: return apply_chi(v);
                    case OpNamed::Sug: return apply_sugawara(v);
                }
                throw std::logic_error("apply_operator: bad tag");
            } else if constexpr (std::is_same_v<T, OpGen2>) {
                return apply_gen(node.kind, node.f, v);
            } else if constexpr (std::is_same_v<T, OpGen1>) {
                return apply_gen1(node.kind, node.f, v);
            } else if constexpr (std::is_same_v<T, OpHatH2>) {
                return apply_hatted_h(node.g, v);
            } else if constexpr (std::is_same_v<T, OpHatH1>) {
                return apply_hatted_h1(node.g, v);
            } else {
                const OpCommutator& c = node;
                return op_commutator(*c.a, *c.b, v);
            }
        },
        op.node);
}

Vector op_commutator(const OperatorHandle& a, const OperatorHandle& b, const Vector& v) {
    Vector ab = apply_operator(a, apply_operator(b, v));
    Vector ba = apply_operator(b, apply_operator(a, v));
    if (is_odd(a) && is_odd(b)) return ab + ba;
    return ab - ba;
}

}  // namespace semicrit
