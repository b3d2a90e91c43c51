#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/errors.hpp"

namespace wittlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline std::string to_string(const BigInt& n) { return n.str(); }

inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Least nonnegative residue of a modulo m (m > 0).
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::int64_t mod(const BigInt& a, std::int64_t m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return static_cast<std::int64_t>(r);
}

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

inline std::int64_t powmod(std::int64_t base, std::uint64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    base = mod(base, m);
    while (e) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

/// Inverse modulo a prime p; a must be nonzero mod p.
inline std::int64_t invmod(std::int64_t a, std::int64_t p) {
    a = mod(a, p);
    if (a == 0) throw std::domain_error("inverse of zero");
    return powmod(a, static_cast<std::uint64_t>(p - 2), p);
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (std::int64_t f = 5; f * f <= n; f += 6)
        if (n % f == 0 || n % (f + 2) == 0) return false;
    return true;
}

inline bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    if (n < (BigInt(1) << 62)) return is_prime(static_cast<std::int64_t>(n));
    return boost::multiprecision::miller_rabin_test(n, 25);
}

inline BigInt isqrt(const BigInt& n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const BigInt& n) {
    if (n < 0) return false;
    BigInt r = isqrt(n);
    return r * r == n;
}

inline bool is_rational_square(const Rational& r) {
    return r >= 0 && is_perfect_square(numerator(r)) && is_perfect_square(denominator(r));
}

/// Prime factorisation of |n| (n != 0) by trial division. Cofactors that are
/// composite with both factors beyond the trial bound are rejected.
inline std::vector<std::pair<BigInt, int>> factorize(BigInt n) {
    if (n == 0) throw std::domain_error("factorize(0)");
    if (n < 0) n = -n;
    std::vector<std::pair<BigInt, int>> out;
    constexpr std::int64_t trial_bound = 1000000;
    auto take = [&](const BigInt& f) {
        int e = 0;
        while (n % f == 0) {
            n /= f;
            ++e;
        }
        if (e) out.emplace_back(f, e);
    };
    take(2);
    for (std::int64_t f = 3; f <= trial_bound && BigInt(f) * f <= n; f += 2) take(f);
    if (n > 1) {
        if (n <= BigInt(trial_bound) * trial_bound || is_prime(n)) {
            out.emplace_back(n, 1);
        } else if (is_perfect_square(n) && is_prime(isqrt(n))) {
            out.emplace_back(isqrt(n), 2);
        } else {
            throw unsupported_domain("integer too large to factor: " + n.str());
        }
    }
    return out;
}

/// Signed squarefree integer in the square class of n (n != 0).
inline BigInt squarefree_part(const BigInt& n) {
    BigInt out = n < 0 ? -1 : 1;
    for (const auto& [p, e] : factorize(n))
        if (e % 2) out *= p;
    return out;
}

/// Squarefree integer s with r = s * (square of a rational).
inline BigInt squarefree_part(const Rational& r) {
    return squarefree_part(BigInt(numerator(r) * denominator(r)));
}

/// p-adic valuation of a nonzero integer.
inline int valuation(BigInt n, const BigInt& p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/// Legendre symbol (a/p) for odd prime p, in {-1, 0, 1}.
inline int legendre(const BigInt& a, const BigInt& p) {
    BigInt r = a % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    BigInt e = boost::multiprecision::powm(r, BigInt((p - 1) / 2), p);
    return e == 1 ? 1 : -1;
}

}  // namespace wittlab
