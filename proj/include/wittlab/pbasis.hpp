#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wittlab/field.hpp"

namespace wittlab {

/// f = sum_j r_j^p x^j over the multi-indices j in [0,p)^d, x1 the least significant digit.
struct PCoordinates {
    int p = 0;
    std::size_t d = 0;
    std::vector<FieldElement> r;
};

namespace pbasis_detail {

inline void require_char_p_function_field(const FieldDescriptor& K) {
    if (!K.is_function_field() || K.is_tower()) throw input_error("expected a rational function field F_q(x1,...,xd), got " + K.to_string());
    if (K.characteristic() == 0) throw input_error("p-bases need positive characteristic, got " + K.to_string());
}

inline std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

inline Exponents digits(std::size_t idx, int p, std::size_t len) {
    Exponents e(len);
    for (std::size_t i = 0; i < len; ++i, idx /= p) e[i] = static_cast<int>(idx % p);
    return e;
}

inline FieldElement x_power(const FieldDescriptor& K, const Exponents& j) {
    return RatFunc(Poly::monomial(K.base, j, K.base->one()));
}

}  // namespace pbasis_detail

/// Coordinates of f over K^p, read off from f = g h^(p-1) / h^p.
inline PCoordinates coords_over_pth_powers(const FieldDescriptor& K, const FieldElement& f) {
    pbasis_detail::require_char_p_function_field(K);
    const int p = static_cast<int>(K.characteristic());
    const std::size_t d = K.function_vars.size();
    const std::size_t n = pbasis_detail::ipow(p, d);
    PCoordinates out{p, d, {}};
    const RatFunc& F = f.ratfunc();
    Poly N = F.num() * F.den().pow(p - 1);
    std::vector<Poly> parts(n, Poly(K.base, d));
    for (const auto& [e, c] : N.terms()) {
        std::size_t j = 0;
        Exponents rest = e;
        for (std::size_t i = d; i-- > 0;) {
            j = j * p + static_cast<std::size_t>(e[i] % p);
            rest[i] -= e[i] % p;
        }
        parts[j].add_term(std::move(rest), c);
    }
    for (std::size_t j = 0; j < n; ++j) out.r.emplace_back(RatFunc(pth_root(parts[j]), F.den()));

    FieldElement sum = zero(K);
    for (std::size_t j = 0; j < n; ++j) sum = sum + pow(out.r[j], p) * pbasis_detail::x_power(K, pbasis_detail::digits(j, p, d));
    if (!(sum == f)) throw std::logic_error("p-coordinates do not reconstruct " + to_string(K, f));
    return out;
}

/// Rank of a polynomial matrix by fraction-free elimination; the pivot is the first
/// nonzero entry of the lowest-index remaining row. Returns the pivot rows in order.
inline std::vector<std::size_t> fraction_free_pivots(std::vector<std::vector<Poly>> M) {
    std::vector<std::size_t> order;
    if (M.empty()) return order;
    const std::size_t R = M.size(), C = M[0].size();
    std::vector<bool> used(R, false);
    Poly prev = Poly::constant(M[0][0].field(), M[0][0].nvars(), M[0][0].field()->one());
    while (true) {
        std::size_t pr = R, pc = C;
        for (std::size_t i = 0; i < R && pr == R; ++i) {
            if (used[i]) continue;
            for (std::size_t j = 0; j < C; ++j)
                if (!M[i][j].is_zero()) {
                    pr = i;
                    pc = j;
                    break;
                }
        }
        if (pr == R) break;
        used[pr] = true;
        order.push_back(pr);
        const Poly piv = M[pr][pc];
        for (std::size_t k = 0; k < R; ++k) {
            if (used[k]) continue;
            const Poly m = M[k][pc];
            for (std::size_t j = 0; j < C; ++j) {
                Poly v = piv * M[k][j];
                if (!m.is_zero() && !M[pr][j].is_zero()) v -= m * M[pr][j];
                M[k][j] = exact_div(v, prev);
            }
        }
        prev = piv;
    }
    return order;
}

/// Rows of rational functions: each row is scaled by the lcm of its denominators.
inline std::vector<std::vector<Poly>> clear_denominators(const std::vector<std::vector<RatFunc>>& rows) {
    std::vector<std::vector<Poly>> out;
    for (const auto& row : rows) {
        Poly l = row.at(0).den();
        for (const auto& x : row) l = exact_div(l * x.den(), gcd(l, x.den()));
        std::vector<Poly> pr;
        for (const auto& x : row) pr.push_back(x.num() * exact_div(l, x.den()));
        out.push_back(std::move(pr));
    }
    return out;
}

/// A relation t^lhs = sum_k lambda_k^p t^k over K^p between the monomials of B.
struct PDependence {
    std::size_t lhs = 0;
    std::vector<std::pair<std::size_t, FieldElement>> terms;
    std::string text;
};

struct PIndependence {
    bool independent = false;
    std::size_t rank = 0;
    std::size_t rows = 0;
    std::optional<PDependence> dependence;
    std::string reason;
};

struct PBasisOptions {
    std::size_t cap = 4096;
};

namespace pbasis_detail {

/// First row of the coordinate matrix lying in the K-span of the earlier rows.
inline std::optional<PDependence> first_dependence(const FieldDescriptor& K, const std::vector<FieldElement>& monos,
                                                   const std::vector<std::vector<RatFunc>>& rows) {
    const std::size_t R = rows.size(), C = rows[0].size();
    auto zero_rf = zero(K).ratfunc();
    auto one_rf = one(K).ratfunc();
    // echelon rows with their combination of original rows
    std::vector<std::vector<RatFunc>> ech, combo;
    std::vector<std::size_t> lead;
    for (std::size_t i = 0; i < R; ++i) {
        std::vector<RatFunc> v = rows[i];
        std::vector<RatFunc> c(R, zero_rf);
        c[i] = one_rf;
        for (std::size_t k = 0; k < ech.size(); ++k) {
            if (v[lead[k]].is_zero()) continue;
            RatFunc f = v[lead[k]] / ech[k][lead[k]];
            for (std::size_t j = 0; j < C; ++j)
                if (!ech[k][j].is_zero()) v[j] = v[j] - f * ech[k][j];
            for (std::size_t j = 0; j < R; ++j)
                if (!combo[k][j].is_zero()) c[j] = c[j] - f * combo[k][j];
        }
        std::size_t l = C;
        for (std::size_t j = 0; j < C; ++j)
            if (!v[j].is_zero()) {
                l = j;
                break;
            }
        if (l < C) {
            ech.push_back(std::move(v));
            combo.push_back(std::move(c));
            lead.push_back(l);
            continue;
        }
        // sum_k c_k row_k = 0 with c_i = 1, so row_i = sum_{k<i} (-c_k) row_k
        const int p = static_cast<int>(K.characteristic());
        PDependence dep;
        dep.lhs = i;
        dep.text = to_string(K, monos[i]) + " =";
        FieldElement check = zero(K);
        bool first = true;
        for (std::size_t k = 0; k < i; ++k) {
            if (c[k].is_zero()) continue;
            FieldElement lam = -c[k];
            dep.terms.emplace_back(k, lam);
            check = check + pow(lam, p) * monos[k];
            std::string mono = to_string(K, monos[k]);
            std::string term = lam == one(K) ? mono : "(" + to_string(K, lam) + ")^" + std::to_string(p) + (mono == "1" ? "" : "*" + mono);
            dep.text += (first ? " " : " + ") + term;
            first = false;
        }
        if (first) dep.text += " 0";
        if (!(check == monos[i])) throw std::logic_error("p-dependence certificate does not verify");
        return dep;
    }
    return std::nullopt;
}

}  // namespace pbasis_detail

/// The monomials t^i (i in [0,p)^r) of B are linearly independent over K^p.
inline PIndependence is_p_independent(const FieldDescriptor& K, const std::vector<FieldElement>& B, const PBasisOptions& opt = {}) {
    pbasis_detail::require_char_p_function_field(K);
    if (B.empty()) throw input_error("is_p_independent needs at least one element");
    for (const auto& t : B)
        if (t.is_zero()) return {false, 0, 0, std::nullopt, "zero is never p-independent"};
    const int p = static_cast<int>(K.characteristic());
    const std::size_t r = B.size(), d = K.function_vars.size();
    double size = std::pow(double(p), double(r + d));
    if (size > double(opt.cap))
        throw input_error("p^(r+d) = " + std::to_string(static_cast<long long>(size)) + " exceeds the cap " + std::to_string(opt.cap));
    const std::size_t R = pbasis_detail::ipow(p, r);
    std::vector<FieldElement> monos;
    std::vector<std::vector<RatFunc>> rows;
    for (std::size_t i = 0; i < R; ++i) {
        auto e = pbasis_detail::digits(i, p, r);
        FieldElement m = one(K);
        for (std::size_t k = 0; k < r; ++k) m = m * pow(B[k], e[k]);
        monos.push_back(m);
        std::vector<RatFunc> row;
        for (const auto& c : coords_over_pth_powers(K, m).r) row.push_back(c.ratfunc());
        rows.push_back(std::move(row));
    }
    PIndependence out;
    out.rows = R;
    out.rank = fraction_free_pivots(clear_denominators(rows)).size();
    out.independent = out.rank == R;
    if (!out.independent) {
        out.dependence = pbasis_detail::first_dependence(K, monos, rows);
        out.reason = "rank " + std::to_string(out.rank) + " < " + std::to_string(R);
    }
    return out;
}

/// B (|B| = d) is a p-basis: the p^d x p^d coordinate matrix is nonsingular.
inline PIndependence is_p_basis(const FieldDescriptor& K, const std::vector<FieldElement>& B, const PBasisOptions& opt = {}) {
    pbasis_detail::require_char_p_function_field(K);
    if (B.size() != K.function_vars.size())
        throw input_error("a p-basis of " + K.to_string() + " has exactly " + std::to_string(K.function_vars.size()) + " elements, got " +
                          std::to_string(B.size()));
    return is_p_independent(K, B, opt);
}

}  // namespace wittlab
