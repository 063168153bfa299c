#pragma once

#include <map>

#include "semicrit/halfint.hpp"
#include "semicrit/poly.hpp"

namespace semicrit {

// Element of the two-point function ring C[t,s][1/ts], written in the
// half-integer basis z_n = t^n s^n, z_{n+1/2} = t^{n+1} s^n over Q[a].
// The z-basis is the single internal normal form; w-elements are converted
// on construction.
class RingElt {
public:
    RingElt() = default;

    static RingElt zero() { return RingElt(); }
    static RingElt z(HalfInt m) {
        RingElt r;
        r.terms_[m] = PolyA(1);
        return r;
    }
    static RingElt one() { return z(HalfInt::whole(0)); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<HalfInt, PolyA>& terms() const { return terms_; }
    PolyA coeff(HalfInt m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? PolyA() : it->second;
    }

    void add_term(HalfInt m, const PolyA& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    RingElt& operator+=(const RingElt& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    RingElt& operator-=(const RingElt& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend RingElt operator+(RingElt a, const RingElt& b) { return a += b; }
    friend RingElt operator-(RingElt a, const RingElt& b) { return a -= b; }
    RingElt operator-() const {
        RingElt r;
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }
    RingElt scaled(const PolyA& f) const {
        RingElt r;
        if (f.is_zero()) return r;
        for (const auto& [m, c] : terms_) {
            PolyA p = c * f;
            if (!p.is_zero()) r.terms_[m] = p;
        }
        return r;
    }
    friend bool operator==(const RingElt& a, const RingElt& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const RingElt& a, const RingElt& b) { return !(a == b); }

private:
    std::map<HalfInt, PolyA> terms_;
};

// Element of the one-point Laurent ring C[t, 1/t].
class LaurentElt {
public:
    LaurentElt() = default;
    static LaurentElt t(int k) {
        LaurentElt r;
        r.terms_[k] = Rational(1);
        return r;
    }
    static LaurentElt one() { return t(0); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<int, Rational>& terms() const { return terms_; }
    Rational coeff(int k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    void add_term(int k, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_[k] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    LaurentElt& operator+=(const LaurentElt& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    friend LaurentElt operator+(LaurentElt a, const LaurentElt& b) { return a += b; }
    LaurentElt scaled(const Rational& c) const {
        LaurentElt r;
        if (c.is_zero()) return r;
        for (const auto& [k, v] : terms_) r.terms_[k] = v * c;
        return r;
    }
    friend bool operator==(const LaurentElt& a, const LaurentElt& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LaurentElt& a, const LaurentElt& b) { return !(a == b); }

private:
    std::map<int, Rational> terms_;
};

// z-basis expansion of the monomial t^i s^j (finite, via s = t - a).
RingElt from_ts_monomial(int i, int j);

// w_m: equal to z_m for integral m, z_m - a z_{m-1/2} otherwise.
RingElt w_basis(HalfInt m);

RingElt ring_mul(const RingElt& x, const RingElt& y);

// derivative with respect to the global coordinate t (so dt = ds = 1)
RingElt ring_derive(const RingElt& x);

// Res_2: sum of the local residues of f dt at t = 0 and t = a.
// On monomials: Res_2(t^i s^j) = binom(j, i+j+1) (-a)^{i+j+1} for i+j+1 >= 0.
PolyA res2(const RingElt& x);
PolyA res2_ts(int i, int j);

// Sp: a -> 0, z_m -> t^{2m}
LaurentElt specialize_ring(const RingElt& x);

// one-point helpers
LaurentElt laurent_mul(const LaurentElt& x, const LaurentElt& y);
Rational res1(const LaurentElt& x);  // coefficient of t^{-1}

}  // namespace semicrit
