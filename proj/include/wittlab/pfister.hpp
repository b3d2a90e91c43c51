#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "wittlab/quadform.hpp"

namespace wittlab {

/// <<a1,...,an>> = <1,a1> (x) ... (x) <1,an>.
struct PfisterSpec {
    FieldDescriptor ambient;
    std::vector<FieldElement> generators;

    PfisterSpec(FieldDescriptor F, std::vector<FieldElement> g) : ambient(std::move(F)), generators(std::move(g)) {
        for (const auto& a : generators)
            if (a.is_zero()) throw input_error("Pfister generators must be nonzero");
    }

    std::string to_string() const {
        std::string s = "<<";
        for (std::size_t i = 0; i < generators.size(); ++i) s += (i ? "," : "") + wittlab::to_string(ambient, generators[i]);
        return s + ">>";
    }
};

/// The system B_r = (t1,...,tr) and the exponent p of the degree-p form built from it.
struct PFormSpec {
    FieldDescriptor ambient;
    std::vector<FieldElement> basis_candidates;
    int p;

    PFormSpec(FieldDescriptor F, std::vector<FieldElement> b, int prime) : ambient(std::move(F)), basis_candidates(std::move(b)), p(prime) {
        if (basis_candidates.empty()) throw input_error("char_p_form needs at least one element");
        for (const auto& a : basis_candidates)
            if (a.is_zero()) throw input_error("char_p_form entries must be nonzero");
        if (!is_prime(std::int64_t{p})) throw input_error(std::to_string(p) + " is not prime");
        auto c = ambient.characteristic();
        if (c != 0 && c != p) throw input_error("char_p_form: field characteristic must be 0 or p");
    }
};

/// Coefficients are subset products in binary counting order (bit i = generator i).
inline DiagonalForm pfister(const PfisterSpec& spec) {
    if (spec.ambient.characteristic() == 2) throw unsupported_domain("Pfister forms in characteristic 2 are not supported");
    const auto n = spec.generators.size();
    if (n > 20) throw input_error("Pfister form too large (n > 20)");
    std::vector<FieldElement> c{one(spec.ambient)};
    c.reserve(std::size_t{1} << n);
    for (const auto& a : spec.generators) {
        const auto half = c.size();
        for (std::size_t s = 0; s < half; ++s) c.push_back(mul(c[s], a));
    }
    return DiagonalForm(spec.ambient, std::move(c));
}

/// sum over i in [0,p)^r of t^i X_i^p, multi-indices in base-p counting order (i1 least significant).
inline DiagonalForm char_p_form(const PFormSpec& spec) {
    const auto r = spec.basis_candidates.size();
    double size = std::pow(double(spec.p), double(r));
    if (size > (1 << 20)) throw input_error("char_p_form too large");
    std::vector<FieldElement> c{one(spec.ambient)};
    for (const auto& t : spec.basis_candidates) {
        const auto block = c.size();
        std::vector<FieldElement> next;
        next.reserve(block * spec.p);
        // digit of this candidate is more significant than all earlier ones
        FieldElement power = one(spec.ambient);
        for (int k = 0; k < spec.p; ++k) {
            for (std::size_t s = 0; s < block; ++s) next.push_back(mul(c[s], power));
            power = mul(power, t);
        }
        c = std::move(next);
    }
    return DiagonalForm(spec.ambient, std::move(c), spec.p);
}

inline bool is_hyperbolic_pfister(const PfisterSpec& spec, const QuadOptions& opt = {}) {
    auto q = pfister(spec);
    bool iso = is_isotropic(q, opt).isotropic;
    if (spec.ambient.base->kind() != BaseKind::Rationals) {
        if (witt_decompose(q, opt).hyperbolic() != iso)
            throw std::logic_error("Pfister form " + spec.to_string() + " is isotropic but not hyperbolic");
    }
    return iso;
}

}  // namespace wittlab
