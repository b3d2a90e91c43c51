#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wittlab/poly.hpp"

namespace wittlab {

/// Reduced fraction num/den of multivariate polynomials; den is monic in lex order.
class RatFunc {
   public:
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }
    explicit RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), num_.nvars(), num_.field()->one())) {}

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    RatFunc operator-() const { return RatFunc(-num_, den_, already_reduced{}); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        // cross-cancel first to keep the gcd work small
        if (a.is_zero() || b.is_zero()) return RatFunc(Poly(a.num_.field(), a.num_.nvars()));
        Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        return RatFunc(exact_div(a.num_, g1) * exact_div(b.num_, g2), exact_div(a.den_, g2) * exact_div(b.den_, g1));
    }
    RatFunc inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero rational function");
        return RatFunc(den_, num_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

    RatFunc pow(int n) const {
        if (n < 0) return inverse().pow(-n);
        return RatFunc(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)), already_reduced{});
    }

    std::string to_string(const std::vector<std::string>& names) const {
        std::string n = num_.to_string(names);
        if (den_.is_constant()) return n;
        auto wrap = [](const Poly& p, const std::string& s) {
            return (p.terms().size() > 1 || s.find('*') != std::string::npos || s[0] == '-') ? "(" + s + ")" : s;
        };
        return wrap(num_, n) + "/" + wrap(den_, den_.to_string(names));
    }

   private:
    struct already_reduced {};
    RatFunc(Poly num, Poly den, already_reduced) : num_(std::move(num)), den_(std::move(den)) {}

    void reduce() {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        const auto& F = *num_.field();
        if (num_.is_zero()) {
            den_ = Poly::constant(num_.field(), num_.nvars(), F.one());
            return;
        }
        if (!den_.is_constant()) {
            Poly g = gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = exact_div(num_, g);
                den_ = exact_div(den_, g);
            }
        }
        Scalar lc_inv = F.inv(den_.leading_coeff());
        num_ = num_.scaled(lc_inv);
        den_ = den_.scaled(lc_inv);
    }

    Poly num_, den_;
};

}  // namespace wittlab
