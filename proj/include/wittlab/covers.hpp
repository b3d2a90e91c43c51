#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "wittlab/poly.hpp"

namespace wittlab {

/// odd: Kummer covers T^2 = 1/(t-a); two: Artin-Schreier covers T^2 - T = 1/(t-a).
enum class CharMode { odd, two };

inline CharMode parse_char_mode(const std::string& s) {
    if (s == "odd") return CharMode::odd;
    if (s == "two" || s == "2") return CharMode::two;
    throw input_error("char mode must be 'odd' or 'two', got \"" + s + "\"");
}

inline std::string to_string(CharMode m) { return m == CharMode::odd ? "odd" : "two"; }

/// Fiber product C_S of the covers C_a, a in S, over the projective t-line.
struct CoverSpec {
    CharMode mode;
    std::vector<std::string> branch;  // base-field elements, compared as written

    CoverSpec(CharMode m, std::vector<std::string> s) : mode(m), branch(std::move(s)) {
        for (std::size_t i = 0; i < branch.size(); ++i)
            for (std::size_t j = i + 1; j < branch.size(); ++j)
                if (branch[i] == branch[j]) throw input_error("duplicate branch point " + branch[i]);
    }

    /// Degree of the conductor of the character attached to a nonempty subset T.
    std::int64_t conductor_degree(std::size_t subset_size) const {
        if (mode == CharMode::two) return 2 * static_cast<std::int64_t>(subset_size);
        // tame at every a in T, and at infinity when |T| is odd
        return static_cast<std::int64_t>(subset_size) + static_cast<std::int64_t>(subset_size % 2);
    }
};

/// g_n = 2^(n-2)(n-3) + 1 (odd), 2^(n-1)(n-2) + 1 (two).
inline BigInt genus_closed_form(std::int64_t n, CharMode mode) {
    if (n < 1) throw input_error("genus_closed_form needs n >= 1");
    if (mode == CharMode::odd) {
        if (n == 1) return 0;  // 2^(-1) * (-2) + 1
        return (BigInt(1) << (n - 2)) * (n - 3) + 1;
    }
    return (BigInt(1) << (n - 1)) * (n - 2) + 1;
}

/// Conductor-discriminant formula: 2g - 2 = -2 * 2^n + sum over nonempty T of deg f(chi_T).
inline BigInt fiber_product_genus(const CoverSpec& spec, std::size_t max_n = 16) {
    const std::size_t n = spec.branch.size();
    if (n < 1) throw input_error("fiber_product_genus needs at least one branch point");
    if (n > max_n) throw input_error("fiber_product_genus: 2^n exceeds the cap (n <= " + std::to_string(max_n) + ")");
    BigInt sum = 0;
    for (std::uint64_t T = 1; T < (std::uint64_t{1} << n); ++T) sum += spec.conductor_degree(std::popcount(T));
    BigInt two_g = sum - 2 * (BigInt(1) << n) + 2;
    if (two_g < 0 || two_g % 2 != 0) throw std::logic_error("conductor sum has the wrong parity");
    return two_g / 2;
}

/// Genus of y^2 = f(t), f squarefree: floor((deg f - 1)/2).
inline std::int64_t hyperelliptic_oracle(const Poly& f) {
    if (f.nvars() != 1) throw input_error("hyperelliptic_oracle needs a univariate polynomial");
    if (f.field()->characteristic() == 2) throw unsupported_domain("y^2 = f(t) is inseparable in characteristic 2");
    if (f.is_zero()) throw input_error("f must be nonzero");
    Poly g = gcd(f, derivative(f, 0));
    if (g.degree_in(0) > 0) throw input_error("f is not squarefree");
    const int deg = f.degree_in(0);
    if (deg < 1) return 0;
    return (deg - 1) / 2;
}

/// The bound c = g + 2 on |S_x|.
inline BigInt sx_bound(const BigInt& g) {
    if (g < 0) throw input_error("genus must be nonnegative");
    return g + 2;
}

/// Largest n with g_n <= g; asserts n <= g_n + 2 <= g + 2 along the way.
inline std::int64_t max_cover_size(const BigInt& g, CharMode mode) {
    if (g < 0) throw input_error("genus must be nonnegative");
    std::int64_t best = 0;
    // g_n is nondecreasing from n = 1 on, and strictly increasing from n = 3
    for (std::int64_t n = 1;; ++n) {
        BigInt gn = genus_closed_form(n, mode);
        if (gn > g) break;
        if (!(n <= gn + 2 && gn + 2 <= g + 2)) throw std::logic_error("cover bound violated at n = " + std::to_string(n));
        best = n;
    }
    return best;
}

}  // namespace wittlab
