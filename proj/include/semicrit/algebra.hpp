#pragma once

#include <array>
#include <stdexcept>

#include "semicrit/ring.hpp"

namespace semicrit {

// Generators of the critical-level algebra for sl(2) and its Clifford factor.
// Psi is the fermion attached to e in n_+, PsiStar its dual. The central
// element is eliminated at construction time: every cocycle value already
// carries the critical factor -1/2.
enum class GenKind { E, H, F, Psi, PsiStar };

inline bool is_fermionic(GenKind k) { return k == GenKind::Psi || k == GenKind::PsiStar; }
inline bool is_bosonic(GenKind k) { return !is_fermionic(k); }

inline int charge_of(GenKind k) {
    if (k == GenKind::Psi) return -1;
    if (k == GenKind::PsiStar) return 1;
    return 0;
}

// h-weight: [h, x] = weight * x
inline int h_weight(GenKind k) {
    switch (k) {
        case GenKind::E: return 2;
        case GenKind::F: return -2;
        case GenKind::Psi: return 2;      // carries e
        case GenKind::PsiStar: return -2; // dual of e
        default: return 0;
    }
}

// Killing form of sl(2): kappa(e,f) = 4, kappa(h,h) = 8.
inline Rational killing(GenKind x, GenKind y) {
    if (is_fermionic(x) || is_fermionic(y))
        throw std::invalid_argument("killing: fermionic argument");
    if ((x == GenKind::E && y == GenKind::F) || (x == GenKind::F && y == GenKind::E))
        return Rational(4);
    if (x == GenKind::H && y == GenKind::H) return Rational(8);
    return Rational(0);
}

// [x, y] in sl(2) as coefficient * kind; zero coefficient means zero bracket.
struct Sl2Bracket {
    GenKind kind = GenKind::H;
    int coeff = 0;
};

inline Sl2Bracket sl2_bracket(GenKind x, GenKind y) {
    if (is_fermionic(x) || is_fermionic(y))
        throw std::invalid_argument("sl2_bracket: fermionic argument");
    if (x == y) return {};
    if (x == GenKind::E && y == GenKind::F) return {GenKind::H, 1};
    if (x == GenKind::F && y == GenKind::E) return {GenKind::H, -1};
    if (x == GenKind::H && y == GenKind::E) return {GenKind::E, 2};
    if (x == GenKind::E && y == GenKind::H) return {GenKind::E, -2};
    if (x == GenKind::H && y == GenKind::F) return {GenKind::F, -2};
    if (x == GenKind::F && y == GenKind::H) return {GenKind::F, 2};
    return {};
}

// Critical-level cocycle scalar of [x(f), y(g)]:
//   kappa(x,y) * Res_2((df) g) * (-1/2)
inline PolyA cocycle2(GenKind x, GenKind y, const RingElt& f, const RingElt& g) {
    const Rational k = killing(x, y);
    if (k.is_zero()) return PolyA();
    PolyA r = res2(ring_mul(ring_derive(f), g));
    return r * PolyA(k * Rational(-1, 2));
}

// One-point variant with Res_1.
inline Rational cocycle1(GenKind x, GenKind y, const LaurentElt& f, const LaurentElt& g) {
    const Rational k = killing(x, y);
    if (k.is_zero()) return Rational(0);
    LaurentElt df;
    for (const auto& [e, c] : f.terms())
        if (e != 0) df.add_term(e - 1, c * Rational(e));
    return res1(laurent_mul(df, g)) * k * Rational(-1, 2);
}

// Clifford anticommutator {psi(f), psi*(g)} = Res_2(f g); same-family pairs vanish.
inline PolyA anticommutator2(GenKind x, GenKind y, const RingElt& f, const RingElt& g) {
    if (!is_fermionic(x) || !is_fermionic(y))
        throw std::invalid_argument("anticommutator2: bosonic argument");
    if (x == y) return PolyA();
    return res2(ring_mul(f, g));
}

inline Rational anticommutator1(GenKind x, GenKind y, const LaurentElt& f, const LaurentElt& g) {
    if (!is_fermionic(x) || !is_fermionic(y))
        throw std::invalid_argument("anticommutator1: bosonic argument");
    if (x == y) return Rational(0);
    return res1(laurent_mul(f, g));
}

inline const char* kind_token(GenKind k) {
    switch (k) {
        case GenKind::E: return "e";
        case GenKind::H: return "h";
        case GenKind::F: return "f";
        case GenKind::Psi: return "ps";
        case GenKind::PsiStar: return "ps*";
    }
    return "?";
}

}  // namespace semicrit
