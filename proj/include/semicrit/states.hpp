#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "semicrit/algebra.hpp"
#include "semicrit/halfint.hpp"
#include "semicrit/ring.hpp"

namespace semicrit {

enum class Family { TwoPoint, OnePointW, OnePointV };

// Which module a vector lives in. lambda/mu are the sl(2) highest weights
// (for OnePointV, lambda holds nu and mu is unused). with_fock selects the
// tensor factor Lambda carrying the fermions.
struct ModuleId {
    Family family = Family::TwoPoint;
    int lambda = 0;
    int mu = 0;
    bool with_fock = true;

    static ModuleId two_point(int l, int m, bool fock = true) { return {Family::TwoPoint, l, m, fock}; }
    static ModuleId one_point_w(int l, int m, bool fock = true) { return {Family::OnePointW, l, m, fock}; }
    static ModuleId one_point_v(int nu, bool fock = true) { return {Family::OnePointV, nu, 0, fock}; }

    bool two_point() const { return family == Family::TwoPoint; }
    friend bool operator==(const ModuleId& a, const ModuleId& b) {
        return a.family == b.family && a.lambda == b.lambda && a.mu == b.mu &&
               a.with_fock == b.with_fock;
    }
    friend bool operator!=(const ModuleId& a, const ModuleId& b) { return !(a == b); }
    std::string str() const;
};

// One generator with a single basis mode attached. For two-point modules the
// mode is the z-basis index; for one-point modules it is the exponent of t,
// stored as a whole HalfInt.
struct Op {
    GenKind kind;
    HalfInt mode;

    friend bool operator==(const Op& a, const Op& b) { return a.kind == b.kind && a.mode == b.mode; }
};

inline int boson_sort_key(GenKind k) {
    // F < H < E
    switch (k) {
        case GenKind::F: return 0;
        case GenKind::H: return 1;
        case GenKind::E: return 2;
        default: return 3;
    }
}

// PBW normal-form word indexing a basis vector of module (x) Fock factor:
// bosonic creation modes sorted by (mode, F<H<E), then psi modes, then
// psi* modes (each strictly increasing), over the ground vector
// f^gj v_lambda (x) f^gk v_mu.
struct Monomial {
    std::vector<Op> bosons;
    std::vector<HalfInt> psi;
    std::vector<HalfInt> psistar;
    int gj = 0;
    int gk = 0;

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.gj == b.gj && a.gk == b.gk && a.psi == b.psi && a.psistar == b.psistar &&
               bos_eq(a.bosons, b.bosons);
    }
    friend bool operator<(const Monomial& a, const Monomial& b);

private:
    static bool bos_eq(const std::vector<Op>& x, const std::vector<Op>& y) {
        if (x.size() != y.size()) return false;
        for (size_t i = 0; i < x.size(); ++i)
            if (!(x[i] == y[i])) return false;
        return true;
    }
};

inline bool op_less(const Op& a, const Op& b) {
    if (a.mode != b.mode) return a.mode < b.mode;
    return boson_sort_key(a.kind) < boson_sort_key(b.kind);
}

inline bool operator<(const Monomial& a, const Monomial& b) {
    if (a.bosons.size() != b.bosons.size()) return a.bosons.size() < b.bosons.size();
    for (size_t i = 0; i < a.bosons.size(); ++i) {
        if (!(a.bosons[i] == b.bosons[i])) return op_less(a.bosons[i], b.bosons[i]);
    }
    if (a.psi != b.psi) return a.psi < b.psi;
    if (a.psistar != b.psistar) return a.psistar < b.psistar;
    if (a.gj != b.gj) return a.gj < b.gj;
    return a.gk < b.gk;
}

// Sparse module element: monomial -> coefficient in Q[a].
class Vector {
public:
    Vector() = default;
    explicit Vector(ModuleId id) : id_(id) {}
    static Vector vacuum(ModuleId id) {
        Vector v(id);
        v.terms_[Monomial{}] = PolyA(1);
        return v;
    }
    static Vector single(ModuleId id, const Monomial& m, const PolyA& c = PolyA(1)) {
        Vector v(id);
        if (!c.is_zero()) v.terms_[m] = c;
        return v;
    }

    const ModuleId& module() const { return id_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::map<Monomial, PolyA>& terms() const { return terms_; }

    void add_term(const Monomial& m, const PolyA& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    Vector& operator+=(const Vector& o) {
        require_same_module(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Vector& operator-=(const Vector& o) {
        require_same_module(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Vector operator+(Vector a, const Vector& b) { return a += b; }
    friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
    Vector scaled(const PolyA& f) const {
        Vector r(id_);
        if (f.is_zero()) return r;
        for (const auto& [m, c] : terms_) r.add_term(m, c * f);
        return r;
    }
    friend bool operator==(const Vector& a, const Vector& b) {
        return a.id_ == b.id_ && a.terms_ == b.terms_;
    }

    void require_same_module(const Vector& o) const {
        if (!(id_ == o.id_)) throw std::invalid_argument("Vector: module mismatch");
    }

private:
    ModuleId id_;
    std::map<Monomial, PolyA> terms_;
};

// --- gradings -------------------------------------------------------------

inline int charge_of(const Monomial& m) {
    return int(m.psistar.size()) - int(m.psi.size());
}

// mode energy; the a-power tag of a slice cell contributes -1 each on top
int energy_of(const Monomial& m, Family f);

// bidegree (p, q) with p + q = charge; values are half-integers
std::pair<HalfInt, HalfInt> bidegree_of(const Monomial& m, const ModuleId& id);

// --- the PBW action engine -------------------------------------------------

// Apply the generator x(z_mode) (two-point) or x(t^mode) (one-point) to v.
Vector apply_mode(GenKind kind, HalfInt mode, const Vector& v);

// Linear extension to a ring element argument.
Vector apply_gen(GenKind kind, const RingElt& f, const Vector& v);
Vector apply_gen1(GenKind kind, const LaurentElt& f, const Vector& v);

// Sp on vectors: a -> 0, z_m -> t^{2m}; TwoPoint(l,m) -> OnePointW(l,m).
Vector specialize_vec(const Vector& v);

// Sp on generators, for intertwining checks.
inline LaurentElt specialize_arg(const RingElt& f) { return specialize_ring(f); }

// sl(2) ground action used by the evaluation rules (shared with tests):
// e.f^j v = j(l-j+1) f^{j-1} v, h.f^j v = (l-2j) f^j v, f.f^j v = f^{j+1} v.
struct GroundAction {
    int dj = 0;          // shift of the exponent
    Rational coeff;      // 0 if the action kills the vector
};
GroundAction sl2_ground(GenKind x, int j, int highest);

// enumeration --------------------------------------------------------------

enum class SliceFilter { Full, D, E };

struct BasisKey {
    Monomial mono;
    int apow = 0;  // the cell represents a^apow * mono
    friend bool operator<(const BasisKey& a, const BasisKey& b) {
        if (!(a.mono == b.mono)) return a.mono < b.mono;
        return a.apow < b.apow;
    }
    friend bool operator==(const BasisKey& a, const BasisKey& b) {
        return a.apow == b.apow && a.mono == b.mono;
    }
};

// Complete list of basis cells of the given charge with mode-energy minus
// a-power at most energy_bound and a-power below apow_bound. For the D filter
// the monomials index hatted words (F/H bosons, psi* fermions, any ground);
// for the E filter only E bosons and psi fermions over the vacuum ground.
std::vector<BasisKey> enumerate_basis(const ModuleId& id, int charge, int energy_bound,
                                      int apow_bound, SliceFilter filter = SliceFilter::Full);

}  // namespace semicrit
