#pragma once

#include <string>

#include "wittlab/integer.hpp"

namespace wittlab {

/// A place of Q: a finite prime or the real place.
struct Place {
    bool infinite = true;
    BigInt prime;

    static Place real() { return {}; }
    static Place finite(const BigInt& p) {
        if (!is_prime(p)) throw input_error("place " + p.str() + " is not a prime");
        return {false, p};
    }
    /// "inf" / "infinity" or a prime number.
    static Place parse(const std::string& s) {
        if (s == "inf" || s == "infinity" || s == "oo") return real();
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw input_error("place must be a prime or 'inf', got \"" + s + "\"");
        return finite(BigInt(s));
    }
    std::string to_string() const { return infinite ? "inf" : prime.str(); }
    bool operator==(const Place&) const = default;
};

namespace hilbert_detail {
inline BigInt integer_class(const Rational& r) { return numerator(r) * denominator(r); }
}  // namespace hilbert_detail

/// Hilbert symbol (a, b)_v in {+1, -1}: +1 iff z^2 = a x^2 + b y^2 has a nonzero
/// solution over Q_v.
inline int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
    if (a == 0 || b == 0) throw input_error("hilbert_symbol: zero argument");
    BigInt A = hilbert_detail::integer_class(a);
    BigInt B = hilbert_detail::integer_class(b);
    if (v.infinite) return (A < 0 && B < 0) ? -1 : 1;
    const BigInt& p = v.prime;
    int alpha = valuation(A, p), beta = valuation(B, p);
    BigInt u = A, w = B;
    for (int i = 0; i < alpha; ++i) u /= p;
    for (int i = 0; i < beta; ++i) w /= p;
    if (p == 2) {
        auto eps = [](const BigInt& x) { return mod(x, 4) == 3 ? 1 : 0; };
        auto omega = [](const BigInt& x) {
            auto r = mod(x, 8);
            return (r == 3 || r == 5) ? 1 : 0;
        };
        int e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
        return e % 2 ? -1 : 1;
    }
    int sign = 1;
    if ((alpha * beta) % 2 && mod(p, 4) == 3) sign = -sign;
    if (beta % 2) sign *= legendre(u, p);
    if (alpha % 2) sign *= legendre(w, p);
    return sign;
}

/// a is a square in Q_v (a nonzero).
inline bool is_local_square(const Rational& a, const Place& v) {
    BigInt A = hilbert_detail::integer_class(a);
    if (v.infinite) return A > 0;
    int alpha = valuation(A, v.prime);
    if (alpha % 2) return false;
    BigInt u = A;
    for (int i = 0; i < alpha; ++i) u /= v.prime;
    if (v.prime == 2) return mod(u, 8) == 1;
    return legendre(u, v.prime) == 1;
}

}  // namespace wittlab
