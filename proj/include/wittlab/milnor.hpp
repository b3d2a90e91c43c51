#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/pfister.hpp"

namespace wittlab {

// ---- Kummer classes ----

/// Class of a in K^x / (K^x)^ell: exponents of the uniformizers mod ell, then the
/// discrete log of the unit part mod ell.
struct KummerClass {
    std::int64_t ell;
    std::vector<std::int64_t> vec;
    FieldDescriptor ambient;
};

namespace milnor_detail {

inline const BaseField& finite_base(const FieldDescriptor& F, const char* what) {
    if (F.is_function_field() || !F.base->is_finite())
        throw unsupported_domain(std::string(what) + " needs a Laurent tower over a finite field, got " + F.to_string());
    return *F.base;
}

/// (unit scalar, exponents) of a tower monomial or base scalar.
inline std::pair<Scalar, std::vector<int>> split(const FieldDescriptor& F, const FieldElement& a) {
    if (a.is_zero()) throw input_error("zero has no class");
    if (a.is_scalar()) return {a.scalar(), std::vector<int>(F.depth(), 0)};
    if (!a.is_monomial()) throw input_error("expected a tower monomial");
    return {a.monomial().scalar, a.monomial().exponents};
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t ell) { return invmod(mod(a, ell), ell); }

}  // namespace milnor_detail

/// With require_mu_2ell the stronger hypothesis 2*ell | q-1 is enforced.
inline KummerClass kummer_class(const FieldDescriptor& F, const FieldElement& a, std::int64_t ell, bool require_mu_2ell = false) {
    const auto& B = milnor_detail::finite_base(F, "kummer_class");
    if (!is_prime(ell)) throw input_error(std::to_string(ell) + " is not prime");
    const std::int64_t q1 = B.order() - 1;
    if (q1 % ell != 0) throw input_error("mu_" + std::to_string(ell) + " is not in " + B.name() + " (" + std::to_string(ell) + " does not divide q-1)");
    if (require_mu_2ell && q1 % (2 * ell) != 0)
        throw input_error("mu_" + std::to_string(2 * ell) + " is not in " + B.name() + " (" + std::to_string(2 * ell) + " does not divide q-1)");
    auto [u, e] = milnor_detail::split(F, a);
    KummerClass k{ell, {}, F};
    for (int x : e) k.vec.push_back(milnor_detail::mod(x, ell));
    k.vec.push_back(B.log_mod(u, ell));
    return k;
}

/// Rank over F_ell of the given vectors.
inline std::size_t rank_mod(std::vector<std::vector<std::int64_t>> rows, std::int64_t ell) {
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && milnor_detail::mod(rows[piv][c], ell) == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        std::int64_t inv = milnor_detail::inverse_mod(rows[rank][c], ell);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank) continue;
            std::int64_t f = milnor_detail::mod(rows[r][c] * inv, ell);
            if (!f) continue;
            for (std::size_t k = c; k < cols; ++k) rows[r][k] = milnor_detail::mod(rows[r][k] - f * rows[rank][k], ell);
        }
        ++rank;
    }
    return rank;
}

enum class CupVerdict { nonzero, zero, indeterminate };

inline std::string to_string(CupVerdict v) {
    switch (v) {
        case CupVerdict::nonzero:
            return "nonzero";
        case CupVerdict::zero:
            return "zero";
        default:
            return "indeterminate";
    }
}

/// Decides chi_1 u ... u chi_n from the rank of the degree-one classes where possible.
inline CupVerdict cup_rank(const std::vector<std::vector<std::int64_t>>& classes, std::int64_t ell) {
    if (!is_prime(ell)) throw input_error(std::to_string(ell) + " is not prime");
    for (const auto& c : classes)
        if (c.size() != classes[0].size()) throw input_error("cup_rank: classes of different lengths");
    if (rank_mod(classes, ell) == classes.size()) return CupVerdict::nonzero;
    return ell == 2 ? CupVerdict::indeterminate : CupVerdict::zero;
}

inline CupVerdict cup_rank(const std::vector<KummerClass>& classes) {
    if (classes.empty()) return CupVerdict::nonzero;
    std::vector<std::vector<std::int64_t>> v;
    for (const auto& k : classes) {
        if (k.ell != classes[0].ell) throw input_error("cup_rank: classes with different ell");
        v.push_back(k.vec);
    }
    return cup_rank(v, classes[0].ell);
}

// ---- mod 2 Milnor symbols ----

/// {a1,...,an} in K^M_n(K)/2. The empty symbol is the generator of K_0/2.
struct MilnorSymbol {
    FieldDescriptor ambient;
    std::vector<FieldElement> entries;

    MilnorSymbol(FieldDescriptor F, std::vector<FieldElement> e) : ambient(std::move(F)), entries(std::move(e)) {
        for (const auto& a : entries)
            if (a.is_zero()) throw input_error("symbol entries must be nonzero");
    }

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < entries.size(); ++i) s += (i ? ", " : "") + wittlab::to_string(ambient, entries[i]);
        return s + "}";
    }
};

struct SymbolResidue {
    std::optional<MilnorSymbol> tame;  // residue along the outermost uniformizer; empty when it is 0
    MilnorSymbol unramified;           // specialization
};

namespace milnor_detail {

inline void require_symbol_domain(const FieldDescriptor& F) {
    const auto& B = finite_base(F, "mod 2 symbols");
    if (B.characteristic() == 2) throw unsupported_domain("mod 2 symbols need odd residue characteristic");
}

/// Unit part of u*t^e (e even) in the residue tower.
inline FieldElement residue_unit(const FieldDescriptor& F, const FieldElement& a) {
    const auto& m = a.monomial();
    if (F.depth() == 1) return m.scalar;
    auto r = m;
    r.exponents.pop_back();
    return r;
}

}  // namespace milnor_detail

/// Splits s along the outermost uniformizer t. The first entry of odd t-valuation is
/// the pivot a; every other odd entry b becomes -b/a (so {a,b} = {a,-b/a}); then
/// s = {u_a, w...} + {t, w...}.
inline SymbolResidue symbol_residue(const MilnorSymbol& s) {
    const auto& F = s.ambient;
    milnor_detail::require_symbol_domain(F);
    if (!F.is_tower()) throw input_error("symbol_residue needs at least one uniformizer");
    for (const auto& a : s.entries)
        if (!a.is_monomial()) throw input_error("symbol entries must be tower monomials");
    const FieldDescriptor R = F.residue();
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < s.entries.size(); ++i)
        if (s.entries[i].monomial().exponents.back() % 2 != 0) {
            pivot = i;
            break;
        }
    if (!pivot) {
        std::vector<FieldElement> units;
        for (const auto& a : s.entries) units.push_back(milnor_detail::residue_unit(F, a));
        return {std::nullopt, MilnorSymbol(R, std::move(units))};
    }
    const FieldElement& a = s.entries[*pivot];
    std::vector<FieldElement> rest;
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
        if (i == *pivot) continue;
        const auto& b = s.entries[i];
        FieldElement w = b.monomial().exponents.back() % 2 ? neg(div(b, a)) : b;
        rest.push_back(milnor_detail::residue_unit(F, w));
    }
    FieldElement ua = mul(a, pow(uniformizer(F, F.depth() - 1), -a.monomial().exponents.back()));
    std::vector<FieldElement> unram{milnor_detail::residue_unit(F, ua)};
    unram.insert(unram.end(), rest.begin(), rest.end());
    return {MilnorSymbol(R, std::move(rest)), MilnorSymbol(R, std::move(unram))};
}

/// Iterated residues down to F_q, where K_n/2 = 0 for n >= 2 and K_1/2 is the square class.
inline bool symbol_is_zero_mod2(const MilnorSymbol& s) {
    const auto& F = s.ambient;
    milnor_detail::require_symbol_domain(F);
    if (!F.is_tower()) {
        const auto& B = *F.base;
        if (s.entries.empty()) return false;
        if (s.entries.size() >= 2) return true;
        return B.is_square(s.entries[0].scalar());
    }
    auto r = symbol_residue(s);
    return (!r.tame || symbol_is_zero_mod2(*r.tame)) && symbol_is_zero_mod2(r.unramified);
}

/// <<a1,...,an>> -> {-a1,...,-an}.
inline MilnorSymbol e_n_map(const PfisterSpec& spec) {
    std::vector<FieldElement> e;
    for (const auto& a : spec.generators) e.push_back(neg(a));
    return MilnorSymbol(spec.ambient, std::move(e));
}

// ---- vcd detection ----

struct VcdResult {
    std::size_t m = 0;
    std::vector<FieldElement> witness;
    std::vector<KummerClass> classes;
    CupVerdict witness_cup = CupVerdict::indeterminate;
    /// dimension of the space of Kummer class vectors; bounds the rank of any m+1 classes
    std::size_t class_space_dimension = 0;
    std::optional<std::size_t> tagged_d;
    bool consistent = true;
};

/// m = vcd_ell = #uniformizers + 1, with the uniformizers and a non-ell-th-power unit as witness.
/// tagged_d marks the tower as a d-dimensional arithmetic model (u = d + 1).
inline VcdResult detect_vcd(const FieldDescriptor& F, std::int64_t ell, std::optional<std::size_t> tagged_d = std::nullopt) {
    const auto& B = milnor_detail::finite_base(F, "detect_vcd");
    if (!F.is_tower()) throw input_error("detect_vcd: u >= 1 uniformizer required");
    VcdResult r;
    const std::size_t u = F.depth();
    for (std::size_t i = 0; i < u; ++i) r.witness.push_back(uniformizer(F, i));
    std::optional<Scalar> unit;
    for (const auto& x : B.elements()) {
        if (B.is_zero(x)) continue;
        auto kc = kummer_class(F, from_scalar(F, x), ell, true);
        if (kc.vec.back() != 0) {
            unit = x;
            break;
        }
    }
    if (!unit) throw std::logic_error("no non-ell-th-power unit");
    r.witness.push_back(from_scalar(F, *unit));
    for (const auto& w : r.witness) r.classes.push_back(kummer_class(F, w, ell, true));
    r.witness_cup = cup_rank(r.classes);
    if (r.witness_cup != CupVerdict::nonzero) throw std::logic_error("vcd witness has vanishing cup product");
    r.m = u + 1;
    r.class_space_dimension = u + 1;
    if (tagged_d) {
        if (*tagged_d + 1 != u) throw input_error("a d-dimensional arithmetic model has d+1 uniformizers");
        r.tagged_d = tagged_d;
        r.consistent = (*tagged_d + 2 == r.m);
    }
    return r;
}

// ---- cup products on (Z/ell)^m via the bar complex ----

struct FiniteGroupCohSpec {
    std::int64_t ell;
    int m;
    std::vector<std::vector<std::int64_t>> characters;  // rows of length m
};

struct CupBarResult {
    bool nonzero = false;
    /// (n-1)-cochain f with df = chi_1 u ... u chi_n, indexed by tuples (g1 least significant)
    std::vector<std::uint8_t> bounding_cochain;
};

/// Solves df = chi_1(g1)...chi_n(gn) over F_ell in the inhomogeneous bar complex.
inline CupBarResult cup_product_bar(const FiniteGroupCohSpec& spec, std::int64_t cap = 729) {
    const std::int64_t ell = spec.ell;
    const int m = spec.m;
    const int n = static_cast<int>(spec.characters.size());
    if (!is_prime(ell) || ell > 7) throw input_error("cup_product_bar: ell must be a prime <= 7");
    if (m < 1 || m > 3) throw input_error("cup_product_bar: group rank m must be in 1..3");
    if (n < 1 || n > 3) throw input_error("cup_product_bar: need 1 to 3 characters");
    for (const auto& c : spec.characters)
        if (static_cast<int>(c.size()) != m) throw input_error("cup_product_bar: character length must be m");
    std::int64_t G = 1;
    for (int i = 0; i < m; ++i) G *= ell;
    std::int64_t N = 1;
    for (int i = 1; i < n; ++i) N *= G;
    if (N > cap) throw input_error("cup_product_bar: ell^(m(n-1)) = " + std::to_string(N) + " exceeds the cap " + std::to_string(cap));

    std::vector<std::int64_t> add(G * G);
    for (std::int64_t a = 0; a < G; ++a)
        for (std::int64_t b = 0; b < G; ++b) {
            std::int64_t x = a, y = b, s = 0, w = 1;
            for (int k = 0; k < m; ++k, x /= ell, y /= ell, w *= ell) s += ((x % ell + y % ell) % ell) * w;
            add[a * G + b] = s;
        }
    std::vector<std::vector<std::uint8_t>> chi(n, std::vector<std::uint8_t>(G));
    for (int i = 0; i < n; ++i)
        for (std::int64_t g = 0; g < G; ++g) {
            std::int64_t x = g, v = 0;
            for (int k = 0; k < m; ++k, x /= ell) v += milnor_detail::mod(spec.characters[i][k], ell) * (x % ell);
            chi[i][g] = static_cast<std::uint8_t>(v % ell);
        }
    auto index = [&](const std::vector<std::int64_t>& t) {
        std::int64_t idx = 0;
        for (auto it = t.rbegin(); it != t.rend(); ++it) idx = idx * G + *it;
        return idx;
    };
    auto reduce = [ell](std::uint8_t& a, std::uint8_t f, std::uint8_t b) { a = static_cast<std::uint8_t>((a + f * b) % ell); };

    // incremental reduced row echelon form; column N holds the right-hand side
    std::vector<std::vector<std::uint8_t>> pivots;
    std::vector<std::int64_t> pivot_col;
    std::vector<std::int64_t> col_owner(N, -1);
    std::int64_t total = N * G;
    std::vector<std::int64_t> g(n), face(n > 0 ? n - 1 : 0);
    auto equation = [&](std::vector<std::pair<std::int64_t, std::int64_t>>& terms) {
        terms.clear();
        auto put = [&](std::int64_t col, std::int64_t sign) { terms.emplace_back(col, sign); };
        // f(g2..gn)
        for (int i = 1; i < n; ++i) face[i - 1] = g[i];
        put(index(face), 1);
        for (int i = 1; i < n; ++i) {
            for (int k = 0, j = 0; k < n; ++k) {
                if (k == i) continue;
                face[j++] = (k == i - 1) ? add[g[i - 1] * G + g[i]] : g[k];
            }
            put(index(face), i % 2 ? -1 : 1);
        }
        for (int i = 0; i + 1 < n; ++i) face[i] = g[i];
        put(index(face), n % 2 ? -1 : 1);
    };
    std::vector<std::pair<std::int64_t, std::int64_t>> terms;
    std::vector<std::uint8_t> row(N + 1);
    for (std::int64_t t = 0; t < total; ++t) {
        std::int64_t x = t;
        for (int i = 0; i < n; ++i, x /= G) g[i] = x % G;
        equation(terms);
        std::fill(row.begin(), row.end(), 0);
        std::int64_t rhs = 1;
        for (int i = 0; i < n; ++i) rhs *= chi[i][g[i]];
        row[N] = static_cast<std::uint8_t>(rhs % ell);
        for (auto [c, s] : terms) row[c] = static_cast<std::uint8_t>(milnor_detail::mod(row[c] + s, ell));
        for (auto [c, s] : terms) {
            if (row[c] == 0 || col_owner[c] < 0) continue;
            const auto& p = pivots[col_owner[c]];
            std::uint8_t f = static_cast<std::uint8_t>(ell - row[c]);
            for (std::int64_t k = 0; k <= N; ++k)
                if (p[k]) reduce(row[k], f, p[k]);
        }
        std::int64_t lead = -1;
        for (std::int64_t k = 0; k < N; ++k)
            if (row[k]) {
                lead = k;
                break;
            }
        if (lead < 0) {
            if (row[N]) return {true, {}};
            continue;
        }
        std::uint8_t inv = static_cast<std::uint8_t>(milnor_detail::inverse_mod(row[lead], ell));
        for (auto& v : row) v = static_cast<std::uint8_t>((v * inv) % ell);
        for (auto& p : pivots) {
            if (!p[lead]) continue;
            std::uint8_t f = static_cast<std::uint8_t>(ell - p[lead]);
            for (std::int64_t k = 0; k <= N; ++k)
                if (row[k]) reduce(p[k], f, row[k]);
        }
        col_owner[lead] = static_cast<std::int64_t>(pivots.size());
        pivots.push_back(row);
        pivot_col.push_back(lead);
    }
    CupBarResult res;
    res.bounding_cochain.assign(N, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) res.bounding_cochain[pivot_col[i]] = pivots[i][N];
    // check df = cocycle on every tuple
    for (std::int64_t t = 0; t < total; ++t) {
        std::int64_t x = t;
        for (int i = 0; i < n; ++i, x /= G) g[i] = x % G;
        equation(terms);
        std::int64_t lhs = 0, rhs = 1;
        for (auto [c, s] : terms) lhs += s * res.bounding_cochain[c];
        for (int i = 0; i < n; ++i) rhs *= chi[i][g[i]];
        if (milnor_detail::mod(lhs - rhs, ell) != 0) throw std::logic_error("bounding cochain check failed");
    }
    return res;
}

// ---- the three-way equivalence ----

struct LinkageReport {
    bool represents_minus_a = false;  // <<a1..an>> represents -a
    bool hyperbolic = false;          // <<a1..an,a>> is hyperbolic
    bool symbol_zero = false;         // {-a1,...,-an,-a} = 0 mod 2
    bool agree() const { return represents_minus_a == hyperbolic && hyperbolic == symbol_zero; }
};

/// Evaluates the three legs independently; the ambient must be a tower (possibly of
/// depth 0) over a finite field of odd characteristic.
inline LinkageReport linkage_check(const PfisterSpec& spec, const FieldElement& a) {
    const auto& F = spec.ambient;
    milnor_detail::require_symbol_domain(F);
    if (a.is_zero()) throw input_error("linkage_check: a must be nonzero");
    LinkageReport r;
    r.represents_minus_a = represents(pfister(spec), neg(a));
    auto gens = spec.generators;
    gens.push_back(a);
    r.hyperbolic = is_hyperbolic_pfister(PfisterSpec(F, gens));
    r.symbol_zero = symbol_is_zero_mod2(e_n_map(PfisterSpec(F, gens)));
    return r;
}

}  // namespace wittlab
