#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wittlab/base_field.hpp"

namespace wittlab {

using Exponents = std::vector<int>;

/// Sparse multivariate polynomial over a base field, terms kept in lex order
/// (x1 > x2 > ...), leading term first.
class Poly {
   public:
    using TermMap = std::map<Exponents, Scalar, std::greater<>>;

    Poly(BaseFieldPtr field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {}

    static Poly constant(BaseFieldPtr field, std::size_t nvars, const Scalar& c) {
        Poly p(std::move(field), nvars);
        p.add_term(Exponents(nvars, 0), c);
        return p;
    }

    static Poly variable(BaseFieldPtr field, std::size_t nvars, std::size_t i) {
        Poly p(field, nvars);
        Exponents e(nvars, 0);
        e[i] = 1;
        p.add_term(e, field->one());
        return p;
    }

    static Poly monomial(BaseFieldPtr field, Exponents e, const Scalar& c) {
        Poly p(std::move(field), e.size());
        p.add_term(std::move(e), c);
        return p;
    }

    const BaseFieldPtr& field() const { return field_; }
    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(), [](int e) { return e == 0; }));
    }
    Scalar constant_term() const {
        auto it = terms_.find(Exponents(nvars_, 0));
        return it == terms_.end() ? field_->zero() : it->second;
    }

    const Exponents& leading_exponents() const { return terms_.begin()->first; }
    const Scalar& leading_coeff() const { return terms_.begin()->second; }

    void add_term(Exponents e, const Scalar& c) {
        if (field_->is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second = field_->add(it->second, c);
            if (field_->is_zero(it->second)) terms_.erase(it);
        }
    }

    int degree_in(std::size_t v) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
        return d;
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    Poly operator-() const {
        Poly r(field_, nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, field_->neg(c));
        return r;
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, field_->neg(c));
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r(a.field_, a.nvars_);
        const auto& F = *a.field_;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(a.nvars_);
                for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(std::move(e), F.mul(ca, cb));
            }
        return r;
    }

    Poly scaled(const Scalar& c) const {
        Poly r(field_, nvars_);
        if (field_->is_zero(c)) return r;
        for (const auto& [e, x] : terms_) r.terms_.emplace(e, field_->mul(x, c));
        return r;
    }

    Poly shifted(const Exponents& by) const {
        Poly r(field_, nvars_);
        for (const auto& [e, c] : terms_) {
            Exponents f = e;
            for (std::size_t i = 0; i < nvars_; ++i) f[i] += by[i];
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }

    Poly pow(unsigned n) const {
        Poly r = constant(field_, nvars_, field_->one());
        Poly b = *this;
        while (n) {
            if (n & 1) r = r * b;
            n >>= 1;
            if (n) b = b * b;
        }
        return r;
    }

    /// Coefficient of x_v^k, as a polynomial free of x_v.
    Poly coeff_in(std::size_t v, int k) const {
        Poly r(field_, nvars_);
        for (const auto& [e, c] : terms_)
            if (e[v] == k) {
                Exponents f = e;
                f[v] = 0;
                r.terms_.emplace(std::move(f), c);
            }
        return r;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(field_->inv(leading_coeff()));
    }

    std::string to_string(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        const auto& F = *field_;
        std::string s;
        for (const auto& [e, c] : terms_) {
            std::string mono;
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (!e[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += names[i];
                if (e[i] != 1) mono += "^" + std::to_string(e[i]);
            }
            std::string cs = F.to_string(c);
            bool negative = !cs.empty() && cs[0] == '-';
            std::string term;
            if (mono.empty()) {
                term = cs;
            } else if (cs == "1") {
                term = mono;
            } else if (cs == "-1") {
                term = "-" + mono;
            } else if (F.is_compound(c) && !(negative && F.kind() == BaseKind::Rationals)) {
                term = "(" + cs + ")*" + mono;
            } else {
                term = cs + "*" + mono;
            }
            if (!s.empty() && term[0] != '-') s += "+";
            s += term;
        }
        return s;
    }

   private:
    BaseFieldPtr field_;
    std::size_t nvars_;
    TermMap terms_;
};

namespace poly_detail {
inline bool divides(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}
}  // namespace poly_detail

/// Multivariate division by a single divisor in lex order: a = q*b + r.
inline std::pair<Poly, Poly> divide(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const auto& F = *a.field();
    Poly q(a.field(), a.nvars()), r(a.field(), a.nvars()), p = a;
    const Exponents& lb = b.leading_exponents();
    Scalar lc_inv = F.inv(b.leading_coeff());
    while (!p.is_zero()) {
        const Exponents lp = p.leading_exponents();
        const Scalar lc = p.leading_coeff();
        if (poly_detail::divides(lb, lp)) {
            Exponents d(a.nvars());
            for (std::size_t i = 0; i < d.size(); ++i) d[i] = lp[i] - lb[i];
            Scalar c = F.mul(lc, lc_inv);
            q.add_term(d, c);
            p -= b.shifted(d).scaled(c);
        } else {
            r.add_term(lp, lc);
            p.add_term(lp, F.neg(lc));
        }
    }
    return {std::move(q), std::move(r)};
}

inline Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divide(a, b);
    if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
    return q;
}

inline bool divisible(const Poly& a, const Poly& b) { return divide(a, b).second.is_zero(); }

namespace poly_detail {

inline Poly lc_in(const Poly& a, std::size_t v) { return a.coeff_in(v, a.degree_in(v)); }

/// Sparse pseudo-remainder of a by b with respect to x_v.
inline Poly prem(Poly a, const Poly& b, std::size_t v) {
    const int db = b.degree_in(v);
    const Poly lb = lc_in(b, v);
    while (!a.is_zero() && a.degree_in(v) >= db) {
        const int da = a.degree_in(v);
        Poly la = lc_in(a, v);
        Exponents sh(a.nvars(), 0);
        sh[v] = da - db;
        a = lb * a - (la * b).shifted(sh);
    }
    return a;
}

}  // namespace poly_detail

Poly gcd(const Poly& a, const Poly& b);

/// gcd of the coefficients of a viewed as a polynomial in x_v.
inline Poly content_in(const Poly& a, std::size_t v) {
    Poly g(a.field(), a.nvars());
    for (int k = a.degree_in(v); k >= 0; --k) {
        Poly c = a.coeff_in(v, k);
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

/// Monic gcd (leading lex coefficient 1); gcd(0, 0) = 0.
inline Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    const auto& field = a.field();
    const std::size_t n = a.nvars();
    Poly one = Poly::constant(field, n, field->one());
    if (a.is_constant() || b.is_constant()) return one;
    // monomial shortcut
    if (a.terms().size() == 1 && b.terms().size() == 1) {
        Exponents e(n);
        for (std::size_t i = 0; i < n; ++i) e[i] = std::min(a.leading_exponents()[i], b.leading_exponents()[i]);
        return Poly::monomial(field, e, field->one());
    }
    std::size_t v = n;
    for (std::size_t i = n; i-- > 0;)
        if (a.degree_in(i) > 0 || b.degree_in(i) > 0) {
            v = i;
            break;
        }
    const bool in_a = a.degree_in(v) > 0, in_b = b.degree_in(v) > 0;
    if (!in_a) return gcd(a, content_in(b, v));
    if (!in_b) return gcd(content_in(a, v), b);
    Poly ca = content_in(a, v), cb = content_in(b, v);
    Poly g = gcd(ca, cb);
    Poly pa = exact_div(a, ca), pb = exact_div(b, cb);
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    while (true) {
        Poly r = poly_detail::prem(pa, pb, v);
        if (r.is_zero()) break;
        if (r.degree_in(v) <= 0) return g.monic();
        pa = std::move(pb);
        pb = exact_div(r, content_in(r, v));
    }
    pb = exact_div(pb, content_in(pb, v));
    return (g * pb).monic();
}

inline Poly derivative(const Poly& a, std::size_t v) {
    const auto& F = *a.field();
    Poly r(a.field(), a.nvars());
    for (const auto& [e, c] : a.terms()) {
        if (e[v] == 0) continue;
        Exponents f = e;
        f[v] -= 1;
        r.add_term(std::move(f), F.mul(c, F.from_int(e[v])));
    }
    return r;
}

/// Coefficient-wise inverse Frobenius; every exponent must be divisible by p.
inline Poly pth_root(const Poly& a) {
    const auto& F = *a.field();
    const std::int64_t p = F.characteristic();
    if (p == 0) throw input_error("p-th roots need positive characteristic");
    Poly r(a.field(), a.nvars());
    for (const auto& [e, c] : a.terms()) {
        Exponents f = e;
        for (auto& x : f) {
            if (x % p != 0) throw input_error("exponent " + std::to_string(x) + " not divisible by p = " + std::to_string(p));
            x /= static_cast<int>(p);
        }
        r.add_term(std::move(f), F.frobenius_root(c));
    }
    return r;
}

}  // namespace wittlab
