#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "semicrit/rational.hpp"

namespace semicrit {

// Univariate polynomial in the deformation parameter a, over the rationals.
// Dense coefficient vector; no trailing zero coefficients are stored.
class PolyA {
public:
    PolyA() = default;
    PolyA(const Rational& c) {
        if (!c.is_zero()) coeffs_.push_back(c);
    }
    PolyA(long n) : PolyA(Rational(n)) {}
    PolyA(int n) : PolyA(Rational(long(n))) {}

    static PolyA monomial(const Rational& c, int exp) {
        PolyA p;
        if (c.is_zero()) return p;
        if (exp < 0) throw std::invalid_argument("PolyA: negative exponent");
        p.coeffs_.assign(exp + 1, Rational(0));
        p.coeffs_[exp] = c;
        return p;
    }
    static PolyA a() { return monomial(Rational(1), 1); }

    bool is_zero() const { return coeffs_.empty(); }
    // degree of the zero polynomial is -1
    int degree() const { return int(coeffs_.size()) - 1; }
    Rational coeff(int exp) const {
        if (exp < 0 || exp >= int(coeffs_.size())) return Rational(0);
        return coeffs_[exp];
    }
    Rational leading() const {
        return coeffs_.empty() ? Rational(0) : coeffs_.back();
    }
    bool is_constant() const { return coeffs_.size() <= 1; }
    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }

    PolyA operator-() const {
        PolyA r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    PolyA& operator+=(const PolyA& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
        for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    PolyA& operator-=(const PolyA& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
        for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }
    PolyA& operator*=(const PolyA& o) { *this = *this * o; return *this; }

    friend PolyA operator+(PolyA x, const PolyA& y) { return x += y; }
    friend PolyA operator-(PolyA x, const PolyA& y) { return x -= y; }
    friend PolyA operator*(const PolyA& x, const PolyA& y) {
        PolyA r;
        if (x.is_zero() || y.is_zero()) return r;
        r.coeffs_.assign(x.coeffs_.size() + y.coeffs_.size() - 1, Rational(0));
        for (size_t i = 0; i < x.coeffs_.size(); ++i) {
            if (x.coeffs_[i].is_zero()) continue;
            for (size_t j = 0; j < y.coeffs_.size(); ++j)
                r.coeffs_[i + j] += x.coeffs_[i] * y.coeffs_[j];
        }
        r.trim();
        return r;
    }
    // scalar division
    PolyA operator/(const Rational& c) const {
        PolyA r = *this;
        for (auto& x : r.coeffs_) x /= c;
        return r;
    }

    friend bool operator==(const PolyA& x, const PolyA& y) { return x.coeffs_ == y.coeffs_; }
    friend bool operator!=(const PolyA& x, const PolyA& y) { return !(x == y); }
    friend bool operator<(const PolyA& x, const PolyA& y) {
        if (x.coeffs_.size() != y.coeffs_.size()) return x.coeffs_.size() < y.coeffs_.size();
        for (size_t i = x.coeffs_.size(); i-- > 0;) {
            if (x.coeffs_[i] != y.coeffs_[i]) return x.coeffs_[i] < y.coeffs_[i];
        }
        return false;
    }

    Rational evaluate(const Rational& at) const {
        Rational r(0);
        for (size_t i = coeffs_.size(); i-- > 0;) r = r * at + coeffs_[i];
        return r;
    }

    // multiply by a^k
    PolyA shifted(int k) const {
        if (is_zero() || k == 0) return *this;
        PolyA r;
        r.coeffs_.assign(coeffs_.size() + k, Rational(0));
        for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i + k] = coeffs_[i];
        return r;
    }

    // drop all terms of exponent >= n
    PolyA truncated(int n) const {
        PolyA r = *this;
        if (int(r.coeffs_.size()) > n) r.coeffs_.resize(std::max(n, 0));
        r.trim();
        return r;
    }

    // lowest exponent with nonzero coefficient; -1 for the zero polynomial
    int order() const {
        for (size_t i = 0; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero()) return int(i);
        return -1;
    }

    bool divisible_by_a_power(int k) const { return is_zero() || order() >= k; }

    // "3/2*a^2 - a + 1", highest power first
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (int e = degree(); e >= 0; --e) {
            const Rational c = coeff(e);
            if (c.is_zero()) continue;
            if (out.empty()) {
                if (c.sign() < 0) out += "-";
            } else {
                out += (c.sign() < 0) ? " - " : " + ";
            }
            const Rational ac = c.abs();
            if (e == 0) {
                out += ac.str();
            } else {
                if (!ac.is_one()) out += ac.str() + "*";
                out += (e == 1) ? "a" : ("a^" + std::to_string(e));
            }
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const PolyA& p);

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const PolyA& p) { return os << p.str(); }

// x = q*y + r with deg r < deg y (or r = 0). Requires y != 0.
inline std::pair<PolyA, PolyA> poly_divmod(const PolyA& x, const PolyA& y) {
    if (y.is_zero()) throw std::invalid_argument("poly_divmod: division by zero polynomial");
    PolyA q, r = x;
    const int dy = y.degree();
    const Rational ly = y.leading();
    while (!r.is_zero() && r.degree() >= dy) {
        const int k = r.degree() - dy;
        const Rational c = r.leading() / ly;
        q += PolyA::monomial(c, k);
        r -= PolyA::monomial(c, k) * y;
    }
    return {q, r};
}

inline PolyA poly_gcd(PolyA x, PolyA y) {
    while (!y.is_zero()) {
        PolyA r = poly_divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    if (!x.is_zero()) x = x / x.leading();  // monic normalization
    return x;
}

// Truncation of a PolyA modulo a^N. Stored reduced.
class PolyAModN {
public:
    PolyAModN(const PolyA& p, int n) : n_(n), p_(p.truncated(n)) {
        if (n <= 0) throw std::invalid_argument("PolyAModN: modulus must be positive");
    }
    int modulus() const { return n_; }
    const PolyA& value() const { return p_; }

    friend PolyAModN operator+(const PolyAModN& x, const PolyAModN& y) {
        check(x, y);
        return PolyAModN(x.p_ + y.p_, x.n_);
    }
    friend PolyAModN operator-(const PolyAModN& x, const PolyAModN& y) {
        check(x, y);
        return PolyAModN(x.p_ - y.p_, x.n_);
    }
    friend PolyAModN operator*(const PolyAModN& x, const PolyAModN& y) {
        check(x, y);
        return PolyAModN(x.p_ * y.p_, x.n_);
    }
    friend bool operator==(const PolyAModN& x, const PolyAModN& y) {
        return x.n_ == y.n_ && x.p_ == y.p_;
    }

private:
    static void check(const PolyAModN& x, const PolyAModN& y) {
        if (x.n_ != y.n_) throw std::invalid_argument("PolyAModN: modulus mismatch");
    }
    int n_;
    PolyA p_;
};

}  // namespace semicrit
