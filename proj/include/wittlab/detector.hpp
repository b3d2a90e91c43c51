#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/pbasis.hpp"
#include "wittlab/pfister.hpp"

namespace wittlab {

/// A rational function field K = k(x1,...,xd) with an optional candidate basis.
struct Presentation {
    FieldDescriptor field;
    std::optional<std::vector<FieldElement>> candidate;
    /// x_i -> x_i - a_i before building the tower (AC and Q bases)
    std::optional<std::vector<Scalar>> translation;
    /// residue characteristic and nonsquare of the arithmetic model (Q base); 0 = default
    std::int64_t model_p = 0;
    std::int64_t model_u = 0;

    explicit Presentation(FieldDescriptor F) : field(std::move(F)) {
        if (!field.is_function_field() || field.is_tower())
            throw input_error("a presentation is a rational function field k(x1,...,xd), got " + field.to_string());
    }
    std::size_t d() const { return field.function_vars.size(); }
};

struct Verdict {
    std::size_t tdeg = 0;
    std::string method;  // p-basis, pfister-tower, arithmetic-model, jacobian
    bool certified = false;
    std::string witness;
    std::vector<std::pair<std::string, std::string>> details;
    std::optional<Certificate> trace;
};

namespace detector_detail {

/// Least odd prime p >= 5 with 2*ell | p - 1.
inline std::int64_t default_model_prime(std::int64_t ell = 2) {
    for (std::int64_t p = 5;; p += 2)
        if (is_prime(p) && (p - 1) % (2 * ell) == 0) return p;
}

struct TowerWitness {
    FieldDescriptor tower;
    PfisterSpec spec;
    IsotropyVerdict verdict;
    bool universal = false;
};

/// <<y1,...,yd>> over k((y1))...((yd)) for an AC base, or <<y1,...,yd,pi,u>> over
/// F_p((pi))((y1))...((yd)) for the arithmetic model.
inline TowerWitness tower_witness(const Presentation& P, const std::vector<std::string>& names, bool check_universal) {
    const auto& B = *P.field.base;
    FieldDescriptor T;
    std::vector<FieldElement> gens;
    if (B.kind() == BaseKind::SymbolicAC) {
        T.base = P.field.base;
        T.tower = names;
        for (std::size_t i = 0; i < names.size(); ++i) gens.push_back(uniformizer(T, i));
    } else if (B.kind() == BaseKind::Rationals) {
        std::int64_t p = P.model_p ? P.model_p : default_model_prime();
        if (p < 3 || !is_prime(p)) throw input_error("model prime must be an odd prime");
        T.base = BaseField::prime_finite(p);
        std::int64_t u = P.model_u ? P.model_u : mod(BigInt(T.base->to_string(T.base->least_nonsquare())), p);
        if (T.base->is_square(T.base->from_int(u))) throw input_error("model unit " + std::to_string(u) + " is a square mod " + std::to_string(p));
        T.tower.push_back("pi");
        for (const auto& n : names) T.tower.push_back(n);
        for (std::size_t i = 1; i < T.tower.size(); ++i) gens.push_back(uniformizer(T, i));
        gens.push_back(uniformizer(T, 0));
        gens.push_back(from_int(T, u));
    } else {
        throw unsupported_domain("no Pfister tower witness over " + B.name());
    }
    PfisterSpec spec(T, gens);
    auto q = pfister(spec);
    TowerWitness w{T, spec, is_isotropic(q), false};
    if (check_universal && !w.verdict.isotropic) w.universal = is_universal(q);
    return w;
}

inline std::string model_label(const TowerWitness& w) {
    // prints pi as the prime it stands for
    std::string s = "<<";
    for (std::size_t i = 0; i < w.spec.generators.size(); ++i) {
        std::string g = to_string(w.tower, w.spec.generators[i]);
        if (g == "pi") g = std::to_string(w.tower.base->characteristic());
        s += (i ? "," : "") + g;
    }
    return s + ">>";
}

inline void attach(Verdict& v, const TowerWitness& w, bool arithmetic) {
    v.details.emplace_back("tower", w.tower.to_string());
    v.details.emplace_back("form", pfister(w.spec).to_string());
    v.details.emplace_back("anisotropic", w.verdict.isotropic ? "false" : "true");
    if (arithmetic) v.details.emplace_back("pi", "models the prime " + std::to_string(w.tower.base->characteristic()));
    v.trace = w.verdict.certificate;
}

inline RatFunc partial(const RatFunc& f, std::size_t j) {
    const Poly& n = f.num();
    const Poly& d = f.den();
    return RatFunc(derivative(n, j) * d - n * derivative(d, j), d * d);
}

inline RatFunc determinant(std::vector<std::vector<RatFunc>> M) {
    const std::size_t n = M.size();
    RatFunc det = RatFunc(Poly::constant(M[0][0].num().field(), M[0][0].num().nvars(), M[0][0].num().field()->one()));
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && M[p][c].is_zero()) ++p;
        if (p == n) return RatFunc(Poly(M[0][0].num().field(), M[0][0].num().nvars()));
        if (p != c) {
            std::swap(M[p], M[c]);
            det = -det;
        }
        det = det * M[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (M[r][c].is_zero()) continue;
            RatFunc f = M[r][c] / M[c][c];
            for (std::size_t k = c; k < n; ++k) M[r][k] = M[r][k] - f * M[c][k];
        }
    }
    return det;
}

/// Index sigma(i) when every t_i = c*x_sigma(i) + a with sigma a permutation.
inline std::optional<std::vector<std::size_t>> translated_coordinates(const Presentation& P, const std::vector<FieldElement>& t) {
    const std::size_t d = P.d();
    std::vector<std::size_t> sigma;
    std::vector<bool> hit(d, false);
    for (const auto& e : t) {
        if (!e.is_ratfunc() || !e.ratfunc().is_polynomial()) return std::nullopt;
        const Poly& f = e.ratfunc().num();
        if (f.total_degree() != 1) return std::nullopt;
        std::optional<std::size_t> var;
        for (const auto& [ex, c] : f.terms()) {
            int s = 0;
            for (int x : ex) s += x;
            if (s == 0) continue;
            if (var) return std::nullopt;
            var = static_cast<std::size_t>(std::find(ex.begin(), ex.end(), 1) - ex.begin());
        }
        if (!var || hit[*var]) return std::nullopt;
        hit[*var] = true;
        sigma.push_back(*var);
    }
    return sigma;
}

inline std::vector<std::string> tower_names(const Presentation& P, Verdict& v) {
    std::vector<std::string> names = P.field.function_vars;
    if (!P.translation) return names;
    if (P.translation->size() != P.d()) throw input_error("translation needs one constant per variable");
    const auto& B = *P.field.base;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const Scalar& a = (*P.translation)[i];
        if (B.is_zero(a)) continue;
        std::string y = "y" + std::to_string(i + 1);
        std::string as = B.to_string(a);
        bool wrap = B.is_compound(a) || as[0] == '-';
        v.details.emplace_back(y, names[i] + "-" + (wrap ? "(" + as + ")" : as));
        names[i] = y;
    }
    return names;
}

}  // namespace detector_detail

/// Transcendence degree with a consistency certificate from the characterization that
/// applies to the base field.
inline Verdict tdeg(const Presentation& P) {
    const auto& B = *P.field.base;
    const std::size_t d = P.d();
    Verdict v;
    v.tdeg = d;
    if (B.characteristic() > 0) {
        std::vector<FieldElement> coords;
        for (std::size_t i = 0; i < d; ++i) coords.push_back(variable(P.field, i));
        auto r = is_p_basis(P.field, coords);
        v.method = "p-basis";
        v.certified = r.independent;
        std::size_t n = r.rows;
        v.witness = "p-basis matrix " + std::to_string(n) + "x" + std::to_string(n) + " of rank " + std::to_string(r.rank);
        return v;
    }
    auto names = detector_detail::tower_names(P, v);
    if (B.kind() == BaseKind::SymbolicAC) {
        auto w = detector_detail::tower_witness(P, names, true);
        v.method = "pfister-tower";
        v.certified = !w.verdict.isotropic && w.universal;
        v.witness = pfister(w.spec).to_string();
        detector_detail::attach(v, w, false);
        v.details.emplace_back("universal", w.universal ? "true" : "false");
        return v;
    }
    if (B.kind() == BaseKind::Rationals) {
        auto w = detector_detail::tower_witness(P, names, false);
        v.method = "arithmetic-model";
        v.certified = !w.verdict.isotropic;
        v.witness = detector_detail::model_label(w);
        detector_detail::attach(v, w, true);
        return v;
    }
    throw unsupported_domain("tdeg: unsupported base " + B.name());
}

/// Decides whether the candidate is a (separating) transcendence basis.
inline Verdict certify_basis(const Presentation& P) {
    if (!P.candidate) throw input_error("certify_basis needs a candidate");
    const auto& t = *P.candidate;
    const std::size_t d = P.d();
    if (t.size() != d) throw input_error("candidate has " + std::to_string(t.size()) + " elements, expected " + std::to_string(d));
    const auto& K = P.field;
    Verdict v;
    v.tdeg = d;
    if (K.characteristic() > 0) {
        auto r = is_p_basis(K, t);
        v.method = "p-basis";
        v.certified = r.independent;
        v.witness = r.independent ? "p-basis matrix of rank " + std::to_string(r.rank)
                                  : (r.dependence ? r.dependence->text : "rank " + std::to_string(r.rank));
        v.details.emplace_back("rank", std::to_string(r.rank));
        return v;
    }
    std::vector<std::vector<RatFunc>> J;
    for (const auto& e : t) {
        std::vector<RatFunc> row;
        for (std::size_t j = 0; j < d; ++j) row.push_back(detector_detail::partial(e.ratfunc(), j));
        J.push_back(std::move(row));
    }
    std::size_t rank = fraction_free_pivots(clear_denominators(J)).size();
    v.method = "jacobian";
    v.certified = rank == d;
    v.details.emplace_back("jacobian_rank", std::to_string(rank));
    if (v.certified) {
        auto det = detector_detail::determinant(J);
        v.witness = "jacobian determinant " + det.to_string(K.function_vars);
        if (detector_detail::translated_coordinates(P, t)) {
            std::vector<std::string> names;
            for (std::size_t i = 0; i < d; ++i) {
                names.push_back("y" + std::to_string(i + 1));
                v.details.emplace_back(names.back(), to_string(K, t[i]));
            }
            Presentation Q(K);
            Q.model_p = P.model_p;
            Q.model_u = P.model_u;
            auto w = detector_detail::tower_witness(Q, names, false);
            detector_detail::attach(v, w, K.base->kind() == BaseKind::Rationals);
            v.details.emplace_back("pfister_witness", K.base->kind() == BaseKind::Rationals ? detector_detail::model_label(w) : pfister(w.spec).to_string());
        }
    } else {
        v.witness = "jacobian rank " + std::to_string(rank) + " < " + std::to_string(d);
    }
    return v;
}

}  // namespace wittlab
