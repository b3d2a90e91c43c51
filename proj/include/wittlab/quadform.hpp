#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/field.hpp"
#include "wittlab/hilbert.hpp"

namespace wittlab {

/// Diagonal form sum c_i X_i^degree over `ambient`; degree 2 for quadratic forms.
struct DiagonalForm {
    FieldDescriptor ambient;
    std::vector<FieldElement> coeffs;
    int degree = 2;

    DiagonalForm(FieldDescriptor F, std::vector<FieldElement> c, int deg = 2)
        : ambient(std::move(F)), coeffs(std::move(c)), degree(deg) {
        for (const auto& x : coeffs)
            if (x.is_zero()) throw input_error("form coefficients must be nonzero");
        if (degree < 2) throw input_error("form degree must be at least 2");
    }

    std::size_t dim() const { return coeffs.size(); }

    std::vector<std::string> coefficient_strings() const {
        std::vector<std::string> out;
        for (const auto& c : coeffs) out.push_back(wittlab::to_string(ambient, c));
        return out;
    }

    std::string to_string() const {
        std::string s = "<";
        for (std::size_t i = 0; i < coeffs.size(); ++i) s += (i ? "," : "") + wittlab::to_string(ambient, coeffs[i]);
        return s + ">";
    }

    /// Orthogonal sum.
    DiagonalForm operator+(const DiagonalForm& o) const {
        auto c = coeffs;
        c.insert(c.end(), o.coeffs.begin(), o.coeffs.end());
        return DiagonalForm(ambient, std::move(c), degree);
    }

    DiagonalForm scaled(const FieldElement& s) const {
        std::vector<FieldElement> c;
        for (const auto& x : coeffs) c.push_back(mul(s, x));
        return DiagonalForm(ambient, std::move(c), degree);
    }
};

/// Parses "c1,c2,..." in the element DSL of F.
inline DiagonalForm parse_form(const FieldDescriptor& F, std::string_view text, int degree = 2) {
    return DiagonalForm(F, parse_list(F, text), degree);
}

/// Anisotropy trace: the form at this node, the rule that decided it, and for
/// Springer nodes the even and odd residue forms.
struct Certificate {
    std::string method;
    std::string form;
    std::string detail;
    std::string uniformizer;
    std::vector<Certificate> children;
    // Hasse-Minkowski data: squarefree-reduced coefficients and the obstructing place
    std::vector<BigInt> reduced;
    std::optional<Place> place;
};

struct IsotropyVerdict {
    bool isotropic = false;
    std::optional<std::vector<FieldElement>> witness;
    std::optional<Certificate> certificate;
};

struct QuadOptions {
    /// coordinate height for the witness search over Q
    BigInt search_height{10000};
    /// candidate evaluations allowed in that search
    std::uint64_t search_budget = 2'000'000;
    /// skip witnesses and certificates; only the verdict is computed
    bool verdict_only = false;
};

/// q(x) == 0 exactly.
inline bool vanishes_at(const DiagonalForm& q, const std::vector<FieldElement>& x) {
    if (x.size() != q.dim()) throw input_error("witness length does not match the form");
    const auto& F = q.ambient;
    if (F.is_tower()) {
        std::map<std::vector<int>, Scalar> acc;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i].is_zero()) continue;
            auto t = mul(q.coeffs[i], pow(x[i], q.degree)).monomial();
            auto [it, ins] = acc.try_emplace(t.exponents, t.scalar);
            if (!ins) {
                it->second = F.base->add(it->second, t.scalar);
                if (F.base->is_zero(it->second)) acc.erase(it);
            }
        }
        return acc.empty();
    }
    FieldElement s = zero(F);
    for (std::size_t i = 0; i < x.size(); ++i) s = add(s, mul(q.coeffs[i], pow(x[i], q.degree)));
    return s.is_zero();
}

namespace quad_detail {

inline void require_quadratic(const DiagonalForm& q) {
    if (q.degree != 2) throw input_error("isotropy needs a quadratic form (degree 2)");
    if (q.ambient.characteristic() == 2)
        throw unsupported_domain("quadratic forms in characteristic 2 are not supported; use the p-basis route");
    if (q.ambient.is_function_field())
        throw unsupported_domain("no isotropy decision procedure over rational function fields");
}

inline std::int64_t floor_half(int e) { return e >= 0 ? e / 2 : -((-e + 1) / 2); }

inline std::vector<FieldElement> zeros(const FieldDescriptor& F, std::size_t n) { return std::vector<FieldElement>(n, zero(F)); }

inline IsotropyVerdict anisotropic(const DiagonalForm& q, std::string method, std::string detail) {
    Certificate c;
    c.method = std::move(method);
    c.form = q.to_string();
    c.detail = std::move(detail);
    return {false, std::nullopt, std::move(c)};
}

// ---- finite fields ----

inline IsotropyVerdict finite_isotropy(const DiagonalForm& q) {
    const auto& B = *q.ambient.base;
    const auto n = q.dim();
    auto c = [&](std::size_t i) { return q.coeffs[i].scalar(); };
    if (n == 0) return anisotropic(q, "dimension", "the zero form");
    if (n == 1) return anisotropic(q, "dimension", "one-dimensional");
    Scalar r = B.neg(B.div(c(1), c(0)));  // x0^2 = -c1/c0 with x1 = 1
    if (auto s = B.sqrt(r)) {
        auto w = zeros(q.ambient, n);
        w[0] = *s;
        w[1] = B.one();
        return {true, w, std::nullopt};
    }
    if (n == 2) return anisotropic(q, "finite-field", "-c1*c2 is not a square in " + B.name());
    // c0 x^2 + c1 y^2 = -c2 always has a solution over F_q
    for (const auto& x : B.elements()) {
        Scalar rhs = B.div(B.sub(B.neg(c(2)), B.mul(c(0), B.square(x))), c(1));
        if (auto y = B.sqrt(rhs)) {
            auto w = zeros(q.ambient, n);
            w[0] = x;
            w[1] = *y;
            w[2] = B.one();
            return {true, w, std::nullopt};
        }
    }
    throw std::logic_error("ternary form over a finite field without a zero");
}

// ---- algebraically closed ----

inline IsotropyVerdict ac_isotropy(const DiagonalForm& q) {
    const auto& B = *q.ambient.base;
    const auto n = q.dim();
    if (n == 0) return anisotropic(q, "dimension", "the zero form");
    if (n == 1) return anisotropic(q, "dimension", "one-dimensional");
    auto w = zeros(q.ambient, n);
    w[0] = *B.sqrt(B.neg(B.div(q.coeffs[1].scalar(), q.coeffs[0].scalar())));
    w[1] = B.one();
    return {true, w, std::nullopt};
}

// ---- rationals: Hasse-Minkowski ----

struct SquarefreeReduction {
    std::vector<BigInt> s;       // squarefree integers
    std::vector<Rational> root;  // c_i = s_i * root_i^2
};

inline SquarefreeReduction reduce_squarefree(const DiagonalForm& q) {
    SquarefreeReduction r;
    for (const auto& c : q.coeffs) {
        const Rational& v = c.scalar().value.index() == 1 ? std::get<Rational>(c.scalar().value) : throw std::logic_error("not rational");
        BigInt s = squarefree_part(v);
        Rational m2 = v / Rational(s);
        r.s.push_back(s);
        r.root.emplace_back(isqrt(numerator(m2)), isqrt(denominator(m2)));
    }
    return r;
}

inline std::vector<Place> relevant_places(const std::vector<BigInt>& s) {
    std::vector<Place> out{Place::real(), Place::finite(2)};
    std::vector<BigInt> primes;
    for (const auto& x : s)
        for (const auto& [p, e] : factorize(x))
            if (p != 2 && std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    for (const auto& p : primes) out.push_back(Place::finite(p));
    return out;
}

/// Local isotropy of <s_1,...,s_n> (n in {2,3,4}) at v, via discriminant and Hasse invariant.
inline bool locally_isotropic(const std::vector<BigInt>& s, const Place& v, std::string& why) {
    Rational d = 1;
    for (const auto& x : s) d *= Rational(x);
    int eps = 1;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) eps *= hilbert_symbol(Rational(s[i]), Rational(s[j]), v);
    const std::size_t n = s.size();
    bool iso = false;
    if (n == 2) {
        iso = is_local_square(-d, v);
        why = "-d is not a square";
    } else if (n == 3) {
        iso = hilbert_symbol(-1, -d, v) == eps;
        why = "(-1,-d) = " + std::to_string(hilbert_symbol(-1, -d, v)) + " differs from the Hasse invariant " + std::to_string(eps);
    } else {
        bool dsq = is_local_square(d, v);
        iso = !dsq || eps == hilbert_symbol(-1, -1, v);
        why = "d is a square and the Hasse invariant " + std::to_string(eps) + " differs from (-1,-1) = " +
              std::to_string(hilbert_symbol(-1, -1, v));
    }
    return iso;
}

/// Primitive integer zero of sum s_i X_i^2, searched in shells of growing max-norm
/// over the first n-1 coordinates.
inline std::optional<std::vector<BigInt>> search_integer_zero(const std::vector<BigInt>& s, const QuadOptions& opt) {
    const std::size_t n = s.size();
    std::uint64_t budget = opt.search_budget;
    std::vector<BigInt> x(n, 0);
    std::optional<std::vector<BigInt>> found;
    // enumerate x[0..n-2] in [0,h]^(n-1) with max == h
    std::function<bool(std::size_t, const BigInt&, bool)> rec = [&](std::size_t i, const BigInt& h, bool hit) -> bool {
        if (i + 1 == n) {
            if (!hit) return false;
            if (budget-- == 0) return true;
            BigInt acc = 0;
            for (std::size_t k = 0; k + 1 < n; ++k) acc += s[k] * x[k] * x[k];
            if (acc % s[n - 1] != 0) return false;
            BigInt t = -acc / s[n - 1];
            if (!is_perfect_square(t)) return false;
            x[n - 1] = isqrt(t);
            found = x;
            return true;
        }
        for (BigInt v = 0; v <= h; ++v) {
            x[i] = v;
            if (rec(i + 1, h, hit || v == h)) return true;
        }
        return false;
    };
    if (n == 1) return std::nullopt;
    for (BigInt h = 1; h <= opt.search_height; ++h) {
        if (rec(0, h, false)) return found;
        if (budget == 0 || budget > opt.search_budget) return std::nullopt;
    }
    return std::nullopt;
}

inline IsotropyVerdict rational_isotropy(const DiagonalForm& q, const QuadOptions& opt) {
    const auto n = q.dim();
    if (n == 0) return anisotropic(q, "dimension", "the zero form");
    auto red = reduce_squarefree(q);
    auto cert = [&](std::string detail, std::optional<Place> place) {
        auto v = anisotropic(q, "hasse-minkowski", std::move(detail));
        v.certificate->reduced = red.s;
        v.certificate->place = std::move(place);
        return v;
    };
    if (n == 1) return cert("one-dimensional", std::nullopt);
    bool pos = false, negv = false;
    for (const auto& x : red.s) (x > 0 ? pos : negv) = true;
    if (n == 2) {
        BigInt t = -red.s[0] * red.s[1];
        if (!is_perfect_square(t)) {
            // a place where -d is not a local square exists by the local-global principle for squares
            for (const auto& v : relevant_places(red.s))
                if (!is_local_square(Rational(t), v)) return cert("-c1*c2 is not a square in Q_" + v.to_string(), v);
            return cert("-c1*c2 is not a square", std::nullopt);
        }
    } else if (n <= 4) {
        for (const auto& v : relevant_places(red.s)) {
            std::string why;
            if (!locally_isotropic(red.s, v, why)) return cert("anisotropic over Q_" + v.to_string() + ": " + why, v);
        }
    } else if (!(pos && negv)) {
        return cert("definite over R", Place::real());
    }
    IsotropyVerdict out{true, std::nullopt, std::nullopt};
    if (opt.verdict_only) return out;
    if (auto z = search_integer_zero(red.s, opt)) {
        std::vector<FieldElement> w;
        for (std::size_t i = 0; i < n; ++i) w.emplace_back(q.ambient.base->from_rational(Rational((*z)[i]) / red.root[i]));
        out.witness = std::move(w);
    }
    return out;
}

inline IsotropyVerdict base_isotropy(const DiagonalForm& q, const QuadOptions& opt) {
    switch (q.ambient.base->kind()) {
        case BaseKind::SymbolicAC:
            return ac_isotropy(q);
        case BaseKind::Rationals:
            return rational_isotropy(q, opt);
        default:
            return finite_isotropy(q);
    }
}

}  // namespace quad_detail

/// Residue forms of q over the outermost uniformizer t: c*t^e goes to the even
/// part (e even) or the odd part (e odd) with its t-power removed.
struct SpringerSplit {
    DiagonalForm even;
    DiagonalForm odd;
    std::vector<std::size_t> even_index;  // positions in q
    std::vector<std::size_t> odd_index;
};

inline SpringerSplit springer_split(const DiagonalForm& q) {
    if (!q.ambient.is_tower()) throw input_error("springer_split needs a tower with at least one uniformizer");
    FieldDescriptor R = q.ambient.residue();
    std::vector<FieldElement> ev, od;
    SpringerSplit out{DiagonalForm(R, {}, q.degree), DiagonalForm(R, {}, q.degree), {}, {}};
    for (std::size_t i = 0; i < q.dim(); ++i) {
        const auto& c = q.coeffs[i];
        if (!c.is_monomial()) throw input_error("springer_split: coefficient is not a tower monomial");
        int e = c.monomial().exponents.back();
        FieldElement r = drop_outer(c);
        if (!R.is_tower()) r = c.monomial().scalar;
        if (e % 2 == 0) {
            ev.push_back(r);
            out.even_index.push_back(i);
        } else {
            od.push_back(r);
            out.odd_index.push_back(i);
        }
    }
    out.even = DiagonalForm(R, std::move(ev), q.degree);
    out.odd = DiagonalForm(R, std::move(od), q.degree);
    return out;
}

/// Exact isotropy decision with a witness (lifted residue zero) or an anisotropy trace.
inline IsotropyVerdict is_isotropic(const DiagonalForm& q, const QuadOptions& opt = {}) {
    quad_detail::require_quadratic(q);
    if (!q.ambient.is_tower()) {
        auto v = quad_detail::base_isotropy(q, opt);
        if (v.witness && !vanishes_at(q, *v.witness)) throw std::logic_error("isotropy witness does not vanish");
        return v;
    }
    if (q.dim() == 0) return quad_detail::anisotropic(q, "dimension", "the zero form");
    if (opt.verdict_only) {
        // iterated Springer: one residue form per exponent parity vector
        std::map<std::vector<int>, std::vector<FieldElement>> residues;
        for (const auto& c : q.coeffs) {
            std::vector<int> parity;
            for (int e : c.monomial().exponents) parity.push_back(e & 1);
            residues[parity].push_back(c.monomial().scalar);
        }
        const FieldDescriptor base{q.ambient.base, {}, {}};
        for (auto& [parity, cs] : residues)
            if (quad_detail::base_isotropy(DiagonalForm(base, std::move(cs)), opt).isotropic) return {true, std::nullopt, std::nullopt};
        return {false, std::nullopt, std::nullopt};
    }
    auto sp = springer_split(q);
    const auto& F = q.ambient;
    auto lift = [&](const IsotropyVerdict& part, const std::vector<std::size_t>& index) {
        IsotropyVerdict out{true, std::nullopt, std::nullopt};
        if (!part.witness) return out;
        auto w = quad_detail::zeros(F, q.dim());
        for (std::size_t j = 0; j < index.size(); ++j) {
            int e = q.coeffs[index[j]].monomial().exponents.back();
            w[index[j]] = lift_outer(F, (*part.witness)[j], static_cast<int>(-quad_detail::floor_half(e)));
        }
        if (!vanishes_at(q, w)) throw std::logic_error("lifted isotropy witness does not vanish");
        out.witness = std::move(w);
        return out;
    };
    auto ve = is_isotropic(sp.even, opt);
    if (ve.isotropic) return lift(ve, sp.even_index);
    auto vo = is_isotropic(sp.odd, opt);
    if (vo.isotropic) return lift(vo, sp.odd_index);
    Certificate c;
    c.method = "springer";
    c.form = q.to_string();
    c.uniformizer = F.tower.back();
    c.detail = "even and odd residue forms are anisotropic";
    c.children.push_back(std::move(*ve.certificate));
    c.children.push_back(std::move(*vo.certificate));
    return {false, std::nullopt, std::move(c)};
}

/// a is a nonzero value of q.
inline bool represents(const DiagonalForm& q, const FieldElement& a, QuadOptions opt = {}) {
    if (a.is_zero()) throw input_error("represents: the value must be nonzero");
    opt.verdict_only = true;
    if (is_isotropic(q, opt).isotropic) return true;
    return is_isotropic(q + DiagonalForm(q.ambient, {neg(a)}), opt).isotropic;
}

/// q represents every square class of its ambient field.
inline bool is_universal(const DiagonalForm& q, QuadOptions opt = {}) {
    quad_detail::require_quadratic(q);
    opt.verdict_only = true;
    auto reps = square_class_reps(q.ambient);
    if (is_isotropic(q, opt).isotropic) return true;
    for (const auto& s : reps)
        if (!is_isotropic(q + DiagonalForm(q.ambient, {neg(s)}), opt).isotropic) return false;
    return true;
}

struct WittDecomposition {
    std::size_t witt_index = 0;
    DiagonalForm kernel;
    bool hyperbolic() const { return kernel.dim() == 0; }
};

/// q = witt_index hyperbolic planes + anisotropic kernel.
inline WittDecomposition witt_decompose(const DiagonalForm& q, const QuadOptions& opt = {}) {
    quad_detail::require_quadratic(q);
    const auto& F = q.ambient;
    const auto& B = *F.base;
    if (B.kind() == BaseKind::Rationals) throw unsupported_domain("witt_decompose over Q is not supported");
    if (!is_isotropic(q, opt).isotropic) return {0, q};
    if (F.is_tower()) {
        auto sp = springer_split(q);
        auto de = witt_decompose(sp.even, opt);
        auto dd = witt_decompose(sp.odd, opt);
        std::vector<FieldElement> k;
        for (const auto& c : de.kernel.coeffs) k.push_back(lift_outer(F, c, 0));
        for (const auto& c : dd.kernel.coeffs) k.push_back(lift_outer(F, c, 1));
        return {de.witt_index + dd.witt_index, DiagonalForm(F, std::move(k))};
    }
    const std::size_t n = q.dim();
    if (B.kind() == BaseKind::SymbolicAC) {
        std::vector<FieldElement> k;
        if (n % 2) k.push_back(q.coeffs[0]);
        return {n / 2, DiagonalForm(F, std::move(k))};
    }
    // finite field: the Witt class is fixed by dimension parity and signed discriminant
    Scalar d = B.one();
    for (const auto& c : q.coeffs) d = B.mul(d, c.scalar());
    Scalar signed_d = (n / 2) % 2 ? B.neg(d) : d;
    if (n % 2) return {(n - 1) / 2, DiagonalForm(F, {FieldElement(signed_d)})};
    if (B.is_square(signed_d)) return {n / 2, DiagonalForm(F, {})};
    return {(n - 2) / 2, DiagonalForm(F, {FieldElement(B.one()), FieldElement(B.neg(signed_d))})};
}

}  // namespace wittlab
