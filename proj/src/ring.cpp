#include "semicrit/ring.hpp"

namespace semicrit {

namespace {

// t^{+-1} * z_m and s^{+-1} * z_m in the z-basis. Derived from s = t - a:
//   t z_n       = z_{n+1/2}
//   t z_{n+1/2} = z_{n+1} + a z_{n+1/2}
//   s z_n       = z_{n+1/2} - a z_n
//   s z_{n+1/2} = z_{n+1}
// and the inverses
//   t^-1 z_n       = z_{n-1/2} - a z_{n-1}
//   t^-1 z_{n+1/2} = z_n
//   s^-1 z_n       = z_{n-1/2}
//   s^-1 z_{n+1/2} = z_n + a z_{n-1/2}
RingElt step(const RingElt& x, bool use_t, bool forward) {
    RingElt r;
    const PolyA a = PolyA::a();
    for (const auto& [m, c] : x.terms()) {
        const bool integral = m.is_integer();
        const HalfInt up = HalfInt::of(m.doubled + 1);
        const HalfInt dn = HalfInt::of(m.doubled - 1);
        if (forward) {
            if (use_t) {
                r.add_term(up, c);
                if (!integral) r.add_term(m, a * c);
            } else {
                r.add_term(up, c);
                if (integral) r.add_term(m, -(a * c));
            }
        } else {
            if (use_t) {
                r.add_term(dn, c);
                if (integral) r.add_term(HalfInt::of(m.doubled - 2), -(a * c));
            } else {
                r.add_term(dn, c);
                if (!integral) r.add_term(HalfInt::of(m.doubled - 2), a * c);
            }
        }
    }
    return r;
}

}  // namespace

RingElt from_ts_monomial(int i, int j) {
    RingElt r = RingElt::one();
    for (int k = 0; k < std::abs(i); ++k) r = step(r, true, i > 0);
    for (int k = 0; k < std::abs(j); ++k) r = step(r, false, j > 0);
    return r;
}

RingElt w_basis(HalfInt m) {
    RingElt r = RingElt::z(m);
    if (!m.is_integer()) {
        r.add_term(HalfInt::of(m.doubled - 1), -PolyA::a());
    }
    return r;
}

RingElt ring_mul(const RingElt& x, const RingElt& y) {
    // product of two z-monomials is a single t,s-monomial
    RingElt r;
    for (const auto& [m1, c1] : x.terms()) {
        for (const auto& [m2, c2] : y.terms()) {
            const int i = m1.ceil() + m2.ceil();
            const int j = m1.floor() + m2.floor();
            RingElt piece = from_ts_monomial(i, j).scaled(c1 * c2);
            r += piece;
        }
    }
    return r;
}

RingElt ring_derive(const RingElt& x) {
    // d z_n = n (2 z_{n-1/2} - a z_{n-1}),  d z_{n+1/2} = (2n+1) z_n + n a z_{n-1/2}
    RingElt r;
    for (const auto& [m, c] : x.terms()) {
        if (m.is_integer()) {
            const int n = m.as_integer();
            if (n == 0) continue;
            r.add_term(HalfInt::of(m.doubled - 1), c * PolyA(Rational(2 * n)));
            r.add_term(HalfInt::of(m.doubled - 2), c * PolyA::monomial(Rational(-n), 1));
        } else {
            const int n = m.floor();
            r.add_term(HalfInt::whole(n), c * PolyA(Rational(2 * n + 1)));
            if (n != 0)
                r.add_term(HalfInt::of(m.doubled - 2), c * PolyA::monomial(Rational(n), 1));
        }
    }
    return r;
}

PolyA res2_ts(int i, int j) {
    const int k = i + j + 1;
    if (k < 0) return PolyA();
    Rational b = binomial_general(j, k);
    if (b.is_zero()) return PolyA();
    if (k % 2 != 0) b = -b;  // (-a)^k
    return PolyA::monomial(b, k);
}

PolyA res2(const RingElt& x) {
    PolyA r;
    for (const auto& [m, c] : x.terms()) {
        PolyA piece = res2_ts(m.ceil(), m.floor());
        if (!piece.is_zero()) r += c * piece;
    }
    return r;
}

LaurentElt specialize_ring(const RingElt& x) {
    LaurentElt r;
    for (const auto& [m, c] : x.terms()) r.add_term(m.doubled, c.coeff(0));
    return r;
}

LaurentElt laurent_mul(const LaurentElt& x, const LaurentElt& y) {
    LaurentElt r;
    for (const auto& [k1, c1] : x.terms())
        for (const auto& [k2, c2] : y.terms()) r.add_term(k1 + k2, c1 * c2);
    return r;
}

Rational res1(const LaurentElt& x) { return x.coeff(-1); }

}  // namespace semicrit
