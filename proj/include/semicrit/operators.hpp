#pragma once

#include <memory>
#include <string>
#include <variant>

#include "semicrit/states.hpp"

namespace semicrit {

// Widened effective-range re-checks for the formally infinite operator sums.
// Enabled by test mains and the d2check CLI path.
extern bool strict_range_checks;

// The boundary operator d = d_std + chi, its pieces, the Sugawara operators
// and the hatted h-field, all acting exactly on vectors. Two-point operators
// act on TwoPoint modules, one-point ones on OnePointW / OnePointV.
Vector apply_chi2(const Vector& v);
Vector apply_chi1(const Vector& v);
Vector apply_dstd2(const Vector& v);
Vector apply_dstd1(const Vector& v);
Vector apply_d2(const Vector& v);
Vector apply_d1(const Vector& v);
Vector apply_sugawara2(const Vector& v);
Vector apply_sugawara1(const Vector& v);
Vector apply_hatted_h(const RingElt& g, const Vector& v);
Vector apply_hatted_h1(const LaurentElt& g, const Vector& v);

// dispatch on the module family: d2/d1 etc.
Vector apply_d(const Vector& v);
Vector apply_dstd(const Vector& v);
Vector apply_chi(const Vector& v);
Vector apply_sugawara(const Vector& v);

// --- named operator handles -------------------------------------------------

struct OperatorHandle;
using OperatorPtr = std::shared_ptr<const OperatorHandle>;

struct OpNamed {
    enum Tag { D, DStd, Chi, Sug } tag;
};
struct OpGen2 {
    GenKind kind;
    RingElt f;
};
struct OpGen1 {
    GenKind kind;
    LaurentElt f;
};
struct OpHatH2 {
    RingElt g;
};
struct OpHatH1 {
    LaurentElt g;
};
struct OpCommutator {
    OperatorPtr a, b;
};

struct OperatorHandle {
    std::variant<OpNamed, OpGen2, OpGen1, OpHatH2, OpHatH1, OpCommutator> node;

    static OperatorPtr named(OpNamed::Tag t) {
        return std::make_shared<OperatorHandle>(OperatorHandle{OpNamed{t}});
    }
    static OperatorPtr gen2(GenKind k, RingElt f) {
        return std::make_shared<OperatorHandle>(OperatorHandle{OpGen2{k, std::move(f)}});
    }
    static OperatorPtr gen1(GenKind k, LaurentElt f) {
        return std::make_shared<OperatorHandle>(OperatorHandle{OpGen1{k, std::move(f)}});
    }
    static OperatorPtr hat_h2(RingElt g) {
        return std::make_shared<OperatorHandle>(OperatorHandle{OpHatH2{std::move(g)}});
    }
    static OperatorPtr hat_h1(LaurentElt g) {
        return std::make_shared<OperatorHandle>(OperatorHandle{OpHatH1{std::move(g)}});
    }
    static OperatorPtr commutator(OperatorPtr a, OperatorPtr b) {
        return std::make_shared<OperatorHandle>(OperatorHandle{OpCommutator{std::move(a), std::move(b)}});
    }
};

// odd operators contribute super-signs in commutators
bool is_odd(const OperatorHandle& op);

Vector apply_operator(const OperatorHandle& op, const Vector& v);

// (AB -+ BA)(v), super-bracket sign from the parities of A and B
Vector op_commutator(const OperatorHandle& a, const OperatorHandle& b, const Vector& v);

}  // namespace semicrit
