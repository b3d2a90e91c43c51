#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wittlab/errors.hpp"
#include "wittlab/integer.hpp"

namespace wittlab {

enum class BaseKind { PrimeFinite, FiniteExt, Rationals, SymbolicAC };

/// Element of F_q = F_p[y]/(modulus): residue coefficients, low degree first,
/// always of length deg(modulus).
struct FqElem {
    std::vector<std::int64_t> coeffs;
    bool operator==(const FqElem&) const = default;
};

/// Unit bookkeeping in an algebraically closed field: the value coeff * sqrt(radicand),
/// where coeff and radicand live in the prime subfield (Q, or residues mod p stored as
/// integers). radicand == 1 marks a plain prime-subfield value. Only squares of
/// non-plain values are ever needed (witness evaluation).
struct ACScalar {
    Rational coeff;
    Rational radicand{1};
    bool operator==(const ACScalar&) const = default;
};

class BaseField;
using BaseFieldPtr = std::shared_ptr<const BaseField>;

/// A value in a base field. Carries its field so that operators work directly.
struct Scalar {
    using Value = std::variant<FqElem, Rational, ACScalar>;
    BaseFieldPtr field;
    Value value;

    bool operator==(const Scalar& o) const { return value == o.value; }
};

class BaseField : public std::enable_shared_from_this<BaseField> {
   public:
    static BaseFieldPtr prime_finite(std::int64_t p) {
        if (!is_prime(p)) throw input_error("characteristic " + std::to_string(p) + " is not prime");
        if (p >= (std::int64_t{1} << 31)) throw input_error("prime too large: " + std::to_string(p));
        auto f = std::shared_ptr<BaseField>(new BaseField());
        f->kind_ = BaseKind::PrimeFinite;
        f->p_ = p;
        f->degree_ = 1;
        f->modulus_ = {0, 1};
        f->q_ = p;
        return f;
    }

    /// modulus: coefficients mod p, low degree first; must be monic-able and irreducible.
    static BaseFieldPtr finite_ext(std::int64_t p, std::vector<std::int64_t> modulus, std::string generator) {
        if (!is_prime(p)) throw input_error("characteristic " + std::to_string(p) + " is not prime");
        if (p >= (std::int64_t{1} << 31)) throw input_error("prime too large: " + std::to_string(p));
        for (auto& c : modulus) c = mod(c, p);
        while (!modulus.empty() && modulus.back() == 0) modulus.pop_back();
        if (modulus.size() < 2) throw input_error("modulus must have positive degree");
        std::int64_t lc_inv = invmod(modulus.back(), p);
        for (auto& c : modulus) c = mulmod(c, lc_inv, p);
        if (!is_irreducible_mod_p(modulus, p)) throw input_error("modulus is reducible over F" + std::to_string(p));
        auto f = std::shared_ptr<BaseField>(new BaseField());
        f->kind_ = modulus.size() == 2 ? BaseKind::PrimeFinite : BaseKind::FiniteExt;
        f->p_ = p;
        f->degree_ = static_cast<int>(modulus.size()) - 1;
        f->modulus_ = std::move(modulus);
        f->generator_ = std::move(generator);
        BigInt q = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(f->degree_));
        if (q > (BigInt(1) << 40)) throw input_error("finite field too large (q > 2^40)");
        f->q_ = static_cast<std::int64_t>(q);
        if (f->kind_ == BaseKind::PrimeFinite) {
            // a linear modulus still presents F_p; keep the canonical prime-field layout
            f->modulus_ = {0, 1};
            f->generator_.clear();
        }
        return f;
    }

    static BaseFieldPtr rationals() {
        auto f = std::shared_ptr<BaseField>(new BaseField());
        f->kind_ = BaseKind::Rationals;
        return f;
    }

    static BaseFieldPtr symbolic_ac(std::int64_t characteristic) {
        if (characteristic != 0 && !is_prime(characteristic))
            throw input_error("characteristic " + std::to_string(characteristic) + " is not prime");
        auto f = std::shared_ptr<BaseField>(new BaseField());
        f->kind_ = BaseKind::SymbolicAC;
        f->p_ = characteristic;
        return f;
    }

    /// Irreducibility over F_p by gcd(x^(p^i) - x, f) = 1 for i <= deg/2.
    static bool is_irreducible_mod_p(const std::vector<std::int64_t>& f, std::int64_t p) {
        using Vec = std::vector<std::int64_t>;
        const int n = static_cast<int>(f.size()) - 1;
        if (n <= 0) return false;
        if (n == 1) return true;
        auto trim = [](Vec& a) {
            while (!a.empty() && a.back() == 0) a.pop_back();
        };
        auto rem = [&](Vec a, const Vec& b) {
            trim(a);
            std::int64_t inv = invmod(b.back(), p);
            while (a.size() >= b.size()) {
                std::int64_t c = mulmod(a.back(), inv, p);
                std::size_t shift = a.size() - b.size();
                for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = mod(a[shift + i] - mulmod(c, b[i], p), p);
                trim(a);
            }
            return a;
        };
        auto mulmodf = [&](const Vec& a, const Vec& b) {
            if (a.empty() || b.empty()) return Vec{};
            Vec r(a.size() + b.size() - 1, 0);
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + mulmod(a[i], b[j], p), p);
            return rem(r, f);
        };
        auto powf = [&](Vec base, std::uint64_t e) {
            Vec r{1};
            while (e) {
                if (e & 1) r = mulmodf(r, base);
                base = mulmodf(base, base);
                e >>= 1;
            }
            return r;
        };
        auto gcd = [&](Vec a, Vec b) {
            trim(a);
            trim(b);
            while (!b.empty()) {
                Vec r = rem(a, b);
                a = std::move(b);
                b = std::move(r);
            }
            return a;
        };
        Vec xp{0, 1};
        for (int i = 1; i <= n / 2; ++i) {
            xp = powf(xp, static_cast<std::uint64_t>(p));
            Vec d = xp;
            if (d.size() < 2) d.resize(2, 0);
            d[1] = mod(d[1] - 1, p);
            if (gcd(f, d).size() > 1) return false;
        }
        return true;
    }

    BaseKind kind() const { return kind_; }
    bool is_finite() const { return kind_ == BaseKind::PrimeFinite || kind_ == BaseKind::FiniteExt; }
    /// 0 for Q and AC0.
    std::int64_t characteristic() const { return p_; }
    int degree() const { return degree_; }
    std::int64_t order() const {
        if (!is_finite()) throw unsupported_domain("order of an infinite field");
        return q_;
    }
    const std::vector<std::int64_t>& modulus() const { return modulus_; }
    const std::string& generator_name() const { return generator_; }

    std::string name() const {
        switch (kind_) {
            case BaseKind::PrimeFinite:
                return "F" + std::to_string(p_);
            case BaseKind::FiniteExt: {
                std::string s = "F" + std::to_string(q_) + "=F" + std::to_string(p_) + "[";
                bool first = true;
                for (int i = degree_; i >= 0; --i) {
                    std::int64_t c = modulus_[i];
                    if (c == 0) continue;
                    if (!first) s += "+";
                    first = false;
                    if (i == 0) {
                        s += std::to_string(c);
                        continue;
                    }
                    if (c != 1) s += std::to_string(c) + "*";
                    s += generator_;
                    if (i > 1) s += "^" + std::to_string(i);
                }
                return s + "]";
            }
            case BaseKind::Rationals:
                return "Q";
            case BaseKind::SymbolicAC:
                return "AC" + std::to_string(p_);
        }
        return "?";
    }

    // ---- construction of values ----

    Scalar make(Scalar::Value v) const { return Scalar{shared_from_this(), std::move(v)}; }

    Scalar zero() const { return from_int(0); }
    Scalar one() const { return from_int(1); }

    Scalar from_int(const BigInt& n) const {
        switch (kind_) {
            case BaseKind::PrimeFinite:
            case BaseKind::FiniteExt: {
                FqElem e{std::vector<std::int64_t>(degree_, 0)};
                e.coeffs[0] = mod(n, p_);
                return make(e);
            }
            case BaseKind::Rationals:
                return make(Rational(n));
            case BaseKind::SymbolicAC:
                return make(ACScalar{prime_subfield(Rational(n)), 1});
        }
        throw std::logic_error("unreachable");
    }

    Scalar from_rational(const Rational& r) const {
        if (kind_ == BaseKind::Rationals) return make(r);
        return div(from_int(numerator(r)), from_int(denominator(r)));
    }

    Scalar generator() const {
        if (kind_ != BaseKind::FiniteExt) throw input_error("field " + name() + " has no named generator");
        FqElem e{std::vector<std::int64_t>(degree_, 0)};
        e.coeffs[1] = 1;
        return make(e);
    }

    Scalar from_coeffs(std::vector<std::int64_t> c) const {
        c.resize(degree_, 0);
        for (auto& x : c) x = mod(x, p_);
        return make(FqElem{std::move(c)});
    }

    // ---- arithmetic ----

    bool is_zero(const Scalar& a) const {
        return std::visit(
            [](const auto& v) -> bool {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, FqElem>) {
                    for (auto c : v.coeffs)
                        if (c) return false;
                    return true;
                } else if constexpr (std::is_same_v<T, Rational>) {
                    return v == 0;
                } else {
                    return v.coeff == 0;
                }
            },
            a.value);
    }

    bool is_one(const Scalar& a) const { return a == one(); }

    Scalar add(const Scalar& a, const Scalar& b) const {
        if (is_finite()) {
            auto x = std::get<FqElem>(a.value);
            const auto& y = std::get<FqElem>(b.value);
            for (int i = 0; i < degree_; ++i) x.coeffs[i] = mod(x.coeffs[i] + y.coeffs[i], p_);
            return make(std::move(x));
        }
        if (kind_ == BaseKind::Rationals) return make(std::get<Rational>(a.value) + std::get<Rational>(b.value));
        const auto& x = std::get<ACScalar>(a.value);
        const auto& y = std::get<ACScalar>(b.value);
        if (x.coeff == 0) return b;
        if (y.coeff == 0) return a;
        if (x.radicand != y.radicand) throw unsupported_domain("sum of incommensurable symbolic square roots");
        Rational c = prime_subfield(x.coeff + y.coeff);
        return make(ACScalar{c, c == 0 ? Rational(1) : x.radicand});
    }

    Scalar neg(const Scalar& a) const {
        if (is_finite()) {
            auto x = std::get<FqElem>(a.value);
            for (auto& c : x.coeffs) c = mod(-c, p_);
            return make(std::move(x));
        }
        if (kind_ == BaseKind::Rationals) return make(Rational(-std::get<Rational>(a.value)));
        auto x = std::get<ACScalar>(a.value);
        x.coeff = prime_subfield(-x.coeff);
        if (x.coeff == 0) x.radicand = 1;
        return make(std::move(x));
    }

    Scalar sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

    Scalar mul(const Scalar& a, const Scalar& b) const {
        if (is_finite()) {
            const auto& x = std::get<FqElem>(a.value).coeffs;
            const auto& y = std::get<FqElem>(b.value).coeffs;
            if (degree_ == 1) return make(FqElem{{mulmod(x[0], y[0], p_)}});
            std::vector<std::int64_t> r(2 * degree_ - 1, 0);
            for (int i = 0; i < degree_; ++i) {
                if (!x[i]) continue;
                for (int j = 0; j < degree_; ++j) r[i + j] = mod(r[i + j] + mulmod(x[i], y[j], p_), p_);
            }
            for (int i = 2 * degree_ - 2; i >= degree_; --i) {
                std::int64_t c = r[i];
                if (!c) continue;
                r[i] = 0;
                for (int j = 0; j < degree_; ++j) r[i - degree_ + j] = mod(r[i - degree_ + j] - mulmod(c, modulus_[j], p_), p_);
            }
            r.resize(degree_);
            return make(FqElem{std::move(r)});
        }
        if (kind_ == BaseKind::Rationals) return make(std::get<Rational>(a.value) * std::get<Rational>(b.value));
        const auto& x = std::get<ACScalar>(a.value);
        const auto& y = std::get<ACScalar>(b.value);
        Rational c = prime_subfield(x.coeff * y.coeff);
        if (c == 0) return zero();
        if (x.radicand == 1) return make(ACScalar{c, y.radicand});
        if (y.radicand == 1) return make(ACScalar{c, x.radicand});
        if (x.radicand == y.radicand) return make(ACScalar{prime_subfield(c * x.radicand), 1});
        throw unsupported_domain("product of distinct symbolic square roots");
    }

    Scalar inv(const Scalar& a) const {
        if (is_zero(a)) throw std::domain_error("inverse of zero");
        if (is_finite()) {
            if (degree_ == 1) return make(FqElem{{invmod(std::get<FqElem>(a.value).coeffs[0], p_)}});
            return pow(a, BigInt(q_ - 2));
        }
        if (kind_ == BaseKind::Rationals) return make(Rational(1 / std::get<Rational>(a.value)));
        const auto& x = std::get<ACScalar>(a.value);
        // 1/(c*sqrt(r)) = sqrt(r) / (c*r)
        return make(ACScalar{prime_subfield_inv(prime_subfield(x.coeff * x.radicand)), x.radicand});
    }

    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    Scalar pow(Scalar a, BigInt e) const {
        if (e < 0) {
            a = inv(a);
            e = -e;
        }
        Scalar r = one();
        while (e > 0) {
            if ((e & 1) != 0) r = mul(r, a);
            e >>= 1;
            if (e > 0) a = mul(a, a);
        }
        return r;
    }

    Scalar square(const Scalar& a) const { return mul(a, a); }

    // ---- square classes ----

    bool is_square(const Scalar& a) const {
        if (is_zero(a)) throw input_error("is_square: zero element");
        switch (kind_) {
            case BaseKind::PrimeFinite:
            case BaseKind::FiniteExt:
                if (p_ == 2) return true;
                return is_one(pow(a, BigInt((q_ - 1) / 2)));
            case BaseKind::Rationals:
                return is_rational_square(std::get<Rational>(a.value));
            case BaseKind::SymbolicAC:
                return true;
        }
        return false;
    }

    /// A square root when one exists in the field (always for AC, via a symbolic root).
    std::optional<Scalar> sqrt(const Scalar& a) const {
        if (is_zero(a)) return zero();
        switch (kind_) {
            case BaseKind::PrimeFinite:
            case BaseKind::FiniteExt:
                return finite_sqrt(a);
            case BaseKind::Rationals: {
                const auto& r = std::get<Rational>(a.value);
                if (!is_rational_square(r)) return std::nullopt;
                return make(Rational(isqrt(numerator(r)), isqrt(denominator(r))));
            }
            case BaseKind::SymbolicAC: {
                const auto& x = std::get<ACScalar>(a.value);
                if (x.radicand != 1) throw unsupported_domain("square root of a symbolic square root");
                return normalize_ac(ACScalar{1, x.coeff});
            }
        }
        return std::nullopt;
    }

    /// Element with index i in the fixed order: base-p digits of i are the
    /// coefficients of 1, y, y^2, ...
    Scalar element_at(std::int64_t i) const {
        std::vector<std::int64_t> c(degree_, 0);
        for (int j = 0; j < degree_; ++j) {
            c[j] = i % p_;
            i /= p_;
        }
        return make(FqElem{std::move(c)});
    }

    std::int64_t index_of(const Scalar& a) const {
        const auto& c = std::get<FqElem>(a.value).coeffs;
        std::int64_t i = 0;
        for (int j = degree_ - 1; j >= 0; --j) i = i * p_ + c[j];
        return i;
    }

    std::vector<Scalar> elements() const {
        require_finite("elements");
        if (q_ > (1 << 20)) throw input_error("field too large to enumerate");
        std::vector<Scalar> out;
        out.reserve(static_cast<std::size_t>(q_));
        for (std::int64_t i = 0; i < q_; ++i) out.push_back(element_at(i));
        return out;
    }

    /// Least nonsquare in the fixed element order (odd q).
    Scalar least_nonsquare() const {
        require_finite("least_nonsquare");
        if (p_ == 2) throw unsupported_domain("every element of a characteristic-2 finite field is a square");
        for (std::int64_t i = 1; i < q_; ++i) {
            Scalar a = element_at(i);
            if (!is_square(a)) return a;
        }
        throw std::logic_error("no nonsquare found");
    }

    /// Least generator of the cyclic group F_q^x in the fixed element order.
    Scalar primitive_element() const {
        require_finite("primitive_element");
        std::vector<std::int64_t> primes;
        for (const auto& [f, e] : factorize(BigInt(q_ - 1))) primes.push_back(static_cast<std::int64_t>(f));
        for (std::int64_t i = 1; i < q_; ++i) {
            Scalar a = element_at(i);
            bool ok = true;
            for (auto f : primes)
                if (is_one(pow(a, BigInt((q_ - 1) / f)))) {
                    ok = false;
                    break;
                }
            if (ok) return a;
        }
        throw std::logic_error("no primitive element found");
    }

    /// Discrete logarithm of a unit to the primitive element, reduced mod ell (ell | q-1).
    /// a is an ell-th power iff the result is 0.
    std::int64_t log_mod(const Scalar& a, std::int64_t ell) const {
        require_finite("log_mod");
        if ((q_ - 1) % ell != 0) throw input_error("ell does not divide q-1");
        // a^((q-1)/ell) = g^(k (q-1)/ell) determines k mod ell
        Scalar target = pow(a, BigInt((q_ - 1) / ell));
        Scalar zeta = pow(primitive_element(), BigInt((q_ - 1) / ell));
        Scalar cur = one();
        for (std::int64_t k = 0; k < ell; ++k) {
            if (cur == target) return k;
            cur = mul(cur, zeta);
        }
        throw std::logic_error("log_mod: not found");
    }

    /// Inverse Frobenius a -> a^(p^(k-1)); identity on prime subfields.
    Scalar frobenius_root(const Scalar& a) const {
        if (p_ == 0) throw input_error("p-th roots need positive characteristic");
        if (kind_ == BaseKind::SymbolicAC) {
            const auto& x = std::get<ACScalar>(a.value);
            if (x.radicand != 1) throw unsupported_domain("p-th root of a symbolic square root");
            return a;
        }
        return pow(a, boost::multiprecision::pow(BigInt(p_), static_cast<unsigned>(degree_ - 1)));
    }

    std::string to_string(const Scalar& a) const {
        return std::visit(
            [this](const auto& v) -> std::string {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, FqElem>) {
                    if (degree_ == 1) return std::to_string(v.coeffs[0]);
                    std::string s;
                    for (int i = degree_ - 1; i >= 0; --i) {
                        std::int64_t c = v.coeffs[i];
                        if (!c) continue;
                        if (!s.empty()) s += "+";
                        if (i == 0) {
                            s += std::to_string(c);
                            continue;
                        }
                        if (c != 1) s += std::to_string(c) + "*";
                        s += generator_;
                        if (i > 1) s += "^" + std::to_string(i);
                    }
                    return s.empty() ? "0" : s;
                } else if constexpr (std::is_same_v<T, Rational>) {
                    return wittlab::to_string(v);
                } else {
                    if (v.radicand == 1) return wittlab::to_string(v.coeff);
                    std::string r = "sqrt(" + wittlab::to_string(v.radicand) + ")";
                    if (v.coeff == 1) return r;
                    return wittlab::to_string(v.coeff) + "*" + r;
                }
            },
            a.value);
    }

    /// True when the printed form needs parentheses as a factor.
    bool is_compound(const Scalar& a) const {
        std::string s = to_string(a);
        return s.find_first_of("+*/") != std::string::npos || (s.size() > 1 && s[0] == '-' && kind_ != BaseKind::Rationals);
    }

   private:
    BaseField() = default;

    void require_finite(const char* what) const {
        if (!is_finite()) throw unsupported_domain(std::string(what) + " needs a finite base field, got " + name());
    }

    /// Prime-subfield normalisation for AC values: residues mod p in char p.
    Rational prime_subfield(const Rational& r) const {
        if (p_ == 0) return r;
        std::int64_t n = mod(numerator(r), p_);
        std::int64_t d = mod(denominator(r), p_);
        if (d == 0) throw std::domain_error("denominator divisible by the characteristic");
        return Rational(mulmod(n, invmod(d, p_), p_));
    }

    Rational prime_subfield_inv(const Rational& r) const {
        if (p_ == 0) return 1 / r;
        return Rational(invmod(static_cast<std::int64_t>(numerator(r)), p_));
    }

    std::optional<Scalar> finite_sqrt(const Scalar& a) const {
        if (p_ == 2) return frobenius_root_2(a);
        if (!is_square(a)) return std::nullopt;
        // Tonelli-Shanks in the cyclic group F_q^x
        std::int64_t m = q_ - 1;
        int s = 0;
        while (m % 2 == 0) {
            m /= 2;
            ++s;
        }
        Scalar z = pow(least_nonsquare(), BigInt(m));
        Scalar x = pow(a, BigInt((m + 1) / 2));
        Scalar t = pow(a, BigInt(m));
        int r = s;
        while (!is_one(t)) {
            int i = 0;
            Scalar t2 = t;
            while (!is_one(t2)) {
                t2 = mul(t2, t2);
                ++i;
            }
            Scalar b = z;
            for (int j = 0; j < r - i - 1; ++j) b = mul(b, b);
            x = mul(x, b);
            z = mul(b, b);
            t = mul(t, z);
            r = i;
        }
        // canonical choice: the root with the smaller index
        Scalar y = neg(x);
        return index_of(y) < index_of(x) ? y : x;
    }

    Scalar frobenius_root_2(const Scalar& a) const { return pow(a, BigInt(q_ / 2)); }

    BaseKind kind_{BaseKind::Rationals};
    std::int64_t p_{0};
    int degree_{1};
    std::int64_t q_{0};
    std::vector<std::int64_t> modulus_;
    std::string generator_;

   public:
    /// Canonical symbolic root: radicand reduced to a squarefree integer (char 0)
    /// or to {1, least nonsquare} (char p).
    Scalar normalize_ac(ACScalar x) const {
        if (x.coeff == 0) return make(ACScalar{0, 1});
        if (x.radicand == 1) return make(std::move(x));
        if (p_ == 0) {
            BigInt s = squarefree_part(x.radicand);
            // radicand = s * m^2 with m > 0
            Rational m2 = x.radicand / Rational(s);
            Rational m(isqrt(numerator(m2)), isqrt(denominator(m2)));
            return make(ACScalar{x.coeff * m, Rational(s)});
        }
        auto fp = BaseField::prime_finite(p_);
        Scalar r = fp->from_int(numerator(x.radicand));
        Scalar c = fp->from_int(numerator(x.coeff));
        if (fp->is_square(r)) {
            Scalar root = *fp->sqrt(r);
            return make(ACScalar{Rational(std::get<FqElem>(fp->mul(c, root).value).coeffs[0]), 1});
        }
        Scalar u = fp->least_nonsquare();
        Scalar m = *fp->sqrt(fp->div(r, u));
        return make(ACScalar{Rational(std::get<FqElem>(fp->mul(c, m).value).coeffs[0]),
                             Rational(std::get<FqElem>(u.value).coeffs[0])});
    }
};

inline Scalar operator+(const Scalar& a, const Scalar& b) { return a.field->add(a, b); }
inline Scalar operator-(const Scalar& a, const Scalar& b) { return a.field->sub(a, b); }
inline Scalar operator*(const Scalar& a, const Scalar& b) { return a.field->mul(a, b); }
inline Scalar operator/(const Scalar& a, const Scalar& b) { return a.field->div(a, b); }
inline Scalar operator-(const Scalar& a) { return a.field->neg(a); }
inline bool is_zero(const Scalar& a) { return a.field->is_zero(a); }
inline std::string to_string(const Scalar& a) { return a.field->to_string(a); }

}  // namespace wittlab
