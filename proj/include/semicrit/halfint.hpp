#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace semicrit {

// Half-integer stored as its double, so arithmetic and hashing stay exact.
struct HalfInt {
    int doubled = 0;

    HalfInt() = default;
    static HalfInt of(int d) { HalfInt h; h.doubled = d; return h; }
    static HalfInt whole(int n) { return of(2 * n); }
    static HalfInt half_odd(int n) { return of(2 * n + 1); }

    bool is_integer() const { return doubled % 2 == 0; }
    int as_integer() const {
        if (!is_integer()) throw std::logic_error("HalfInt: not an integer");
        return doubled / 2;
    }
    // floor(m) and ceil(m)
    int floor() const { return (doubled >= 0) ? doubled / 2 : (doubled - 1) / 2; }
    int ceil() const { return (doubled >= 0) ? (doubled + 1) / 2 : doubled / 2; }

    friend HalfInt operator+(HalfInt a, HalfInt b) { return of(a.doubled + b.doubled); }
    friend HalfInt operator-(HalfInt a, HalfInt b) { return of(a.doubled - b.doubled); }
    friend HalfInt operator-(HalfInt a) { return of(-a.doubled); }
    friend bool operator==(HalfInt a, HalfInt b) { return a.doubled == b.doubled; }
    friend bool operator!=(HalfInt a, HalfInt b) { return a.doubled != b.doubled; }
    friend bool operator<(HalfInt a, HalfInt b) { return a.doubled < b.doubled; }
    friend bool operator<=(HalfInt a, HalfInt b) { return a.doubled <= b.doubled; }
    friend bool operator>(HalfInt a, HalfInt b) { return a.doubled > b.doubled; }
    friend bool operator>=(HalfInt a, HalfInt b) { return a.doubled >= b.doubled; }

    // "-3/2", "2"
    std::string str() const {
        if (is_integer()) return std::to_string(doubled / 2);
        return std::to_string(doubled) + "/2";
    }
};

}  // namespace semicrit
