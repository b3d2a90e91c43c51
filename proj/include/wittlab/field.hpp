#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wittlab/base_field.hpp"
#include "wittlab/expr.hpp"
#include "wittlab/ratfunc.hpp"

namespace wittlab {

/// c * t1^e1 * ... * tk^ek over a Laurent tower. The zero element is the
/// monomial with zero scalar and zero exponents; every other scalar is nonzero.
struct TowerMonomial {
    Scalar scalar;
    std::vector<int> exponents;
    bool operator==(const TowerMonomial&) const = default;
};

class FieldElement {
   public:
    using Value = std::variant<Scalar, RatFunc, TowerMonomial>;

    FieldElement(Scalar s) : value_(std::move(s)) {}
    FieldElement(RatFunc f) : value_(std::move(f)) {}
    FieldElement(TowerMonomial m) : value_(normalized(std::move(m))) {}

    const Value& value() const { return value_; }
    bool is_scalar() const { return std::holds_alternative<Scalar>(value_); }
    bool is_ratfunc() const { return std::holds_alternative<RatFunc>(value_); }
    bool is_monomial() const { return std::holds_alternative<TowerMonomial>(value_); }
    const Scalar& scalar() const { return std::get<Scalar>(value_); }
    const RatFunc& ratfunc() const { return std::get<RatFunc>(value_); }
    const TowerMonomial& monomial() const { return std::get<TowerMonomial>(value_); }

    bool is_zero() const {
        return std::visit(
            [](const auto& v) -> bool {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Scalar>)
                    return v.field->is_zero(v);
                else if constexpr (std::is_same_v<T, RatFunc>)
                    return v.is_zero();
                else
                    return v.scalar.field->is_zero(v.scalar);
            },
            value_);
    }

    bool operator==(const FieldElement& o) const { return value_ == o.value_; }

   private:
    static TowerMonomial normalized(TowerMonomial m) {
        if (m.scalar.field->is_zero(m.scalar)) std::fill(m.exponents.begin(), m.exponents.end(), 0);
        return m;
    }
    Value value_;
};

/// The algebraic home of a computation: a base field, optionally extended by a
/// rational-function layer or by a Laurent tower (innermost uniformizer first).
struct FieldDescriptor {
    BaseFieldPtr base;
    std::vector<std::string> function_vars;
    std::vector<std::string> tower;

    bool is_function_field() const { return !function_vars.empty(); }
    bool is_tower() const { return !tower.empty(); }
    std::size_t depth() const { return tower.size(); }
    std::int64_t characteristic() const { return base->characteristic(); }

    std::string to_string() const {
        std::string s = base->name();
        if (is_function_field()) {
            s += "(";
            for (std::size_t i = 0; i < function_vars.size(); ++i) s += (i ? "," : "") + function_vars[i];
            s += ")";
        }
        for (const auto& t : tower) s += "((" + t + "))";
        return s;
    }

    /// The residue field of the outermost valuation.
    FieldDescriptor residue() const {
        if (tower.empty()) throw input_error("field " + to_string() + " has no uniformizer");
        FieldDescriptor r = *this;
        r.tower.pop_back();
        return r;
    }

    FieldDescriptor with_outer_uniformizer(std::string name) const {
        FieldDescriptor r = *this;
        r.tower.push_back(std::move(name));
        return r;
    }

    bool operator==(const FieldDescriptor& o) const {
        return base->name() == o.base->name() && function_vars == o.function_vars && tower == o.tower;
    }
};

// ---- element construction ----

inline FieldElement from_scalar(const FieldDescriptor& F, const Scalar& c) {
    if (F.is_function_field()) return RatFunc(Poly::constant(F.base, F.function_vars.size(), c));
    if (F.is_tower()) return TowerMonomial{c, std::vector<int>(F.depth(), 0)};
    return c;
}

inline FieldElement from_int(const FieldDescriptor& F, const BigInt& n) { return from_scalar(F, F.base->from_int(n)); }
inline FieldElement one(const FieldDescriptor& F) { return from_int(F, 1); }
inline FieldElement zero(const FieldDescriptor& F) { return from_int(F, 0); }

inline FieldElement uniformizer(const FieldDescriptor& F, std::size_t i) {
    std::vector<int> e(F.depth(), 0);
    e.at(i) = 1;
    return TowerMonomial{F.base->one(), std::move(e)};
}

inline FieldElement variable(const FieldDescriptor& F, std::size_t i) {
    return RatFunc(Poly::variable(F.base, F.function_vars.size(), i));
}

inline FieldElement tower_monomial(const Scalar& c, std::vector<int> exps) { return TowerMonomial{c, std::move(exps)}; }

// ---- arithmetic ----

inline FieldElement mul(const FieldElement& a, const FieldElement& b) {
    if (a.is_scalar()) return a.scalar() * b.scalar();
    if (a.is_ratfunc()) return a.ratfunc() * b.ratfunc();
    const auto& x = a.monomial();
    const auto& y = b.monomial();
    std::vector<int> e(x.exponents.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = x.exponents[i] + y.exponents[i];
    return TowerMonomial{x.scalar * y.scalar, std::move(e)};
}

inline FieldElement neg(const FieldElement& a) {
    if (a.is_scalar()) return -a.scalar();
    if (a.is_ratfunc()) return -a.ratfunc();
    return TowerMonomial{-a.monomial().scalar, a.monomial().exponents};
}

inline FieldElement inv(const FieldElement& a) {
    if (a.is_zero()) throw input_error("inverse of zero");
    if (a.is_scalar()) return a.scalar().field->inv(a.scalar());
    if (a.is_ratfunc()) return a.ratfunc().inverse();
    std::vector<int> e = a.monomial().exponents;
    for (auto& x : e) x = -x;
    return TowerMonomial{a.monomial().scalar.field->inv(a.monomial().scalar), std::move(e)};
}

inline FieldElement div(const FieldElement& a, const FieldElement& b) { return mul(a, inv(b)); }

/// Sum; over a tower only for like monomials (or a zero summand).
inline FieldElement add(const FieldElement& a, const FieldElement& b) {
    if (a.is_scalar()) return a.scalar() + b.scalar();
    if (a.is_ratfunc()) return a.ratfunc() + b.ratfunc();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.monomial().exponents != b.monomial().exponents)
        throw unsupported_domain("sum of unlike tower monomials is not a monomial");
    return TowerMonomial{a.monomial().scalar + b.monomial().scalar, a.monomial().exponents};
}

inline FieldElement sub(const FieldElement& a, const FieldElement& b) { return add(a, neg(b)); }

inline FieldElement pow(const FieldElement& a, long n) {
    if (n < 0) return pow(inv(a), -n);
    if (a.is_ratfunc()) return a.ratfunc().pow(static_cast<int>(n));
    FieldElement r = a.is_scalar() ? FieldElement(a.scalar().field->one())
                                   : FieldElement(TowerMonomial{a.monomial().scalar.field->one(), std::vector<int>(a.monomial().exponents.size(), 0)});
    FieldElement b = a;
    while (n) {
        if (n & 1) r = mul(r, b);
        n >>= 1;
        if (n) b = mul(b, b);
    }
    return r;
}

inline FieldElement square(const FieldElement& a) { return mul(a, a); }

inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return mul(a, b); }
inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return add(a, b); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return sub(a, b); }
inline FieldElement operator-(const FieldElement& a) { return neg(a); }
inline FieldElement operator/(const FieldElement& a, const FieldElement& b) { return div(a, b); }

/// Element of the residue tower: drops the outermost exponent.
inline FieldElement drop_outer(const FieldElement& a) {
    auto m = a.monomial();
    m.exponents.pop_back();
    return m;
}

/// Embeds an element of the residue tower, with outermost exponent e.
inline FieldElement lift_outer(const FieldDescriptor& F, const FieldElement& a, int e) {
    if (F.depth() == 1) {
        if (a.is_zero()) return zero(F);
        return TowerMonomial{a.scalar(), std::vector<int>{e}};
    }
    auto m = a.monomial();
    if (a.is_zero()) return zero(F);
    m.exponents.push_back(e);
    return m;
}

// ---- printing ----

inline std::string to_string(const FieldDescriptor& F, const FieldElement& a) {
    if (a.is_scalar()) return F.base->to_string(a.scalar());
    if (a.is_ratfunc()) return a.ratfunc().to_string(F.function_vars);
    const auto& m = a.monomial();
    const auto& B = *F.base;
    if (B.is_zero(m.scalar)) return "0";
    std::string mono;
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
        if (!m.exponents[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += F.tower[i];
        if (m.exponents[i] != 1) mono += "^" + std::to_string(m.exponents[i]);
    }
    std::string cs = B.to_string(m.scalar);
    if (mono.empty()) return cs;
    if (cs == "1") return mono;
    if (cs == "-1") return "-" + mono;
    if (B.is_compound(m.scalar) && !(B.kind() == BaseKind::Rationals && cs.find_first_of("+*") == std::string::npos))
        return "(" + cs + ")*" + mono;
    return cs + "*" + mono;
}

// ---- DSL ----

namespace field_detail {

inline bool is_ident(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

/// Univariate integer polynomial (dense, low degree first) in one named variable.
struct UniOps {
    using T = std::vector<BigInt>;
    std::string var;
    T number(const BigInt& n) { return {n}; }
    T name(const std::string& s) {
        if (var.empty()) var = s;
        if (s != var) throw input_error("modulus must be univariate, found '" + var + "' and '" + s + "'");
        return {0, 1};
    }
    static T trim(T a) {
        while (a.size() > 1 && a.back() == 0) a.pop_back();
        return a;
    }
    T add(const T& a, const T& b) {
        T r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
        return trim(r);
    }
    T neg(T a) {
        for (auto& c : a) c = -c;
        return a;
    }
    T sub(const T& a, const T& b) { return add(a, neg(b)); }
    T mul(const T& a, const T& b) {
        T r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        return trim(r);
    }
    T div(const T&, const T&) { throw input_error("division is not allowed in a modulus"); }
    T pow(const T& a, long n) {
        if (n < 0) throw input_error("negative exponent in a modulus");
        T r{1};
        for (long i = 0; i < n; ++i) r = mul(r, a);
        return r;
    }
};

struct ScalarOps {
    const BaseField& B;
    Scalar number(const BigInt& n) { return B.from_int(n); }
    Scalar name(const std::string& s) {
        if (B.kind() == BaseKind::FiniteExt && s == B.generator_name()) return B.generator();
        throw input_error("unknown name '" + s + "' in " + B.name());
    }
    Scalar add(const Scalar& a, const Scalar& b) { return B.add(a, b); }
    Scalar sub(const Scalar& a, const Scalar& b) { return B.sub(a, b); }
    Scalar mul(const Scalar& a, const Scalar& b) { return B.mul(a, b); }
    Scalar div(const Scalar& a, const Scalar& b) {
        if (B.is_zero(b)) throw input_error("division by zero");
        return B.div(a, b);
    }
    Scalar neg(const Scalar& a) { return B.neg(a); }
    Scalar pow(const Scalar& a, long n) {
        if (n < 0 && B.is_zero(a)) throw input_error("division by zero");
        return B.pow(a, BigInt(n));
    }
};

struct RatFuncOps {
    const FieldDescriptor& F;
    RatFunc number(const BigInt& n) { return RatFunc(Poly::constant(F.base, F.function_vars.size(), F.base->from_int(n))); }
    RatFunc name(const std::string& s) {
        for (std::size_t i = 0; i < F.function_vars.size(); ++i)
            if (F.function_vars[i] == s) return RatFunc(Poly::variable(F.base, F.function_vars.size(), i));
        ScalarOps so{*F.base};
        return RatFunc(Poly::constant(F.base, F.function_vars.size(), so.name(s)));
    }
    RatFunc add(const RatFunc& a, const RatFunc& b) { return a + b; }
    RatFunc sub(const RatFunc& a, const RatFunc& b) { return a - b; }
    RatFunc mul(const RatFunc& a, const RatFunc& b) { return a * b; }
    RatFunc div(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw input_error("division by zero");
        return a / b;
    }
    RatFunc neg(const RatFunc& a) { return -a; }
    RatFunc pow(const RatFunc& a, long n) {
        if (n < 0 && a.is_zero()) throw input_error("division by zero");
        return a.pow(static_cast<int>(n));
    }
};

/// Finite sums of tower monomials; the final value must be a single monomial.
struct LaurentOps {
    using T = std::map<std::vector<int>, Scalar>;
    const FieldDescriptor& F;
    T single(std::vector<int> e, const Scalar& c) {
        T r;
        if (!F.base->is_zero(c)) r.emplace(std::move(e), c);
        return r;
    }
    T number(const BigInt& n) { return single(std::vector<int>(F.depth(), 0), F.base->from_int(n)); }
    T name(const std::string& s) {
        for (std::size_t i = 0; i < F.depth(); ++i)
            if (F.tower[i] == s) {
                std::vector<int> e(F.depth(), 0);
                e[i] = 1;
                return single(e, F.base->one());
            }
        ScalarOps so{*F.base};
        return single(std::vector<int>(F.depth(), 0), so.name(s));
    }
    T add(T a, const T& b) {
        for (const auto& [e, c] : b) {
            auto [it, ins] = a.try_emplace(e, c);
            if (!ins) {
                it->second = F.base->add(it->second, c);
                if (F.base->is_zero(it->second)) a.erase(it);
            }
        }
        return a;
    }
    T neg(T a) {
        for (auto& [e, c] : a) c = F.base->neg(c);
        return a;
    }
    T sub(const T& a, const T& b) { return add(a, neg(b)); }
    T mul(const T& a, const T& b) {
        T r;
        for (const auto& [ea, ca] : a)
            for (const auto& [eb, cb] : b) {
                std::vector<int> e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r = add(r, single(e, F.base->mul(ca, cb)));
            }
        return r;
    }
    T inverse(const T& a) {
        if (a.empty()) throw input_error("division by zero");
        if (a.size() != 1) throw unsupported_domain("inverse of a non-monomial tower element");
        const auto& [e, c] = *a.begin();
        std::vector<int> f = e;
        for (auto& x : f) x = -x;
        return single(f, F.base->inv(c));
    }
    T div(const T& a, const T& b) { return mul(a, inverse(b)); }
    T pow(const T& a, long n) {
        T base = n < 0 ? inverse(a) : a;
        T r = number(1);
        for (long i = 0; i < std::abs(n); ++i) r = mul(r, base);
        return r;
    }
};

inline std::int64_t parse_int(std::string_view s, std::size_t& pos, const std::string& text) {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos || pos - start > 12) throw input_error("expected an integer in field \"" + text + "\"");
    return std::stoll(std::string(s.substr(start, pos - start)));
}

}  // namespace field_detail

/// Parses the field-descriptor DSL:
///   base  := "F" INT [ "[" polynomial "]" ] | "Q" | "AC" INT   (optionally "Fq=" before "F" INT "[")
///   field := base | base "(" IDENT ("," IDENT)* ")" | base ("((" IDENT "))")+
inline FieldDescriptor make_field(std::string_view text_in) {
    std::string text;
    for (char c : text_in)
        if (!std::isspace(static_cast<unsigned char>(c))) text += c;
    std::string_view s = text;
    std::size_t pos = 0;
    FieldDescriptor F;
    auto fail = [&](const std::string& msg) -> void { throw input_error("field \"" + text + "\": " + msg); };

    if (s.substr(0, 2) == "AC") {
        pos = 2;
        F.base = BaseField::symbolic_ac(field_detail::parse_int(s, pos, text));
    } else if (s.substr(0, 1) == "Q") {
        pos = 1;
        F.base = BaseField::rationals();
    } else if (s.substr(0, 1) == "F") {
        pos = 1;
        std::int64_t n = field_detail::parse_int(s, pos, text);
        std::optional<std::int64_t> alias;
        if (pos < s.size() && s[pos] == '=') {
            alias = n;
            ++pos;
            if (pos >= s.size() || s[pos] != 'F') fail("expected 'F' after '='");
            ++pos;
            n = field_detail::parse_int(s, pos, text);
        }
        if (!is_prime(n)) fail("characteristic " + std::to_string(n) + " is not prime");
        if (pos < s.size() && s[pos] == '[') {
            std::size_t close = s.find(']', pos);
            if (close == std::string_view::npos) fail("missing ']'");
            std::string poly(s.substr(pos + 1, close - pos - 1));
            pos = close + 1;
            field_detail::UniOps ops;
            auto coeffs = expr::evaluate(*expr::parse(poly), ops);
            std::vector<std::int64_t> m;
            for (const auto& c : coeffs) m.push_back(mod(c, n));
            while (!m.empty() && m.back() == 0) m.pop_back();
            if (m.size() < 2) fail("modulus must have positive degree");
            if (ops.var.empty()) fail("modulus has no variable");
            F.base = BaseField::finite_ext(n, m, ops.var);
            if (alias && *alias != F.base->order())
                fail("F" + std::to_string(*alias) + " does not match a modulus of degree " + std::to_string(F.base->degree()));
        } else {
            if (alias && *alias != n) fail("F" + std::to_string(*alias) + " needs an explicit modulus");
            F.base = BaseField::prime_finite(n);
        }
    } else {
        fail("unknown base field");
    }

    std::vector<std::string> names;
    if (pos < s.size() && s.substr(pos, 2) != "((" && s[pos] == '(') {
        std::size_t close = s.find(')', pos);
        if (close == std::string_view::npos) fail("missing ')'");
        std::string inner(s.substr(pos + 1, close - pos - 1));
        pos = close + 1;
        for (const auto& v : expr::split_list(inner)) F.function_vars.push_back(v);
        if (F.function_vars.empty()) fail("empty variable list");
    }
    while (pos < s.size() && s.substr(pos, 2) == "((") {
        std::size_t close = s.find("))", pos);
        if (close == std::string_view::npos) fail("missing '))'");
        F.tower.emplace_back(s.substr(pos + 2, close - pos - 2));
        pos = close + 2;
    }
    if (pos != s.size()) {
        if (F.is_function_field() || F.is_tower()) fail("mixed function-field and tower layers are not supported");
        fail("unexpected trailing text");
    }
    if (F.is_function_field() && F.is_tower()) fail("mixed function-field and tower layers are not supported");

    std::set<std::string> seen;
    if (F.base->kind() == BaseKind::FiniteExt) seen.insert(F.base->generator_name());
    for (const auto& v : F.function_vars) names.push_back(v);
    for (const auto& v : F.tower) names.push_back(v);
    for (const auto& v : names) {
        if (!field_detail::is_ident(v)) fail("'" + v + "' is not an identifier");
        if (!seen.insert(v).second) fail("duplicate name '" + v + "'");
    }
    return F;
}

/// Parses one element in the DSL of F.
inline FieldElement parse_element(const FieldDescriptor& F, std::string_view text) {
    auto node = expr::parse(text);
    if (F.is_function_field()) {
        field_detail::RatFuncOps ops{F};
        return expr::evaluate(*node, ops);
    }
    if (F.is_tower()) {
        field_detail::LaurentOps ops{F};
        auto sum = expr::evaluate(*node, ops);
        if (sum.empty()) return zero(F);
        if (sum.size() != 1)
            throw unsupported_domain("tower element \"" + std::string(text) + "\" is not a monomial");
        return TowerMonomial{sum.begin()->second, sum.begin()->first};
    }
    field_detail::ScalarOps ops{*F.base};
    return expr::evaluate(*node, ops);
}

inline std::vector<FieldElement> parse_list(const FieldDescriptor& F, std::string_view text) {
    std::vector<FieldElement> out;
    for (const auto& s : expr::split_list(text)) out.push_back(parse_element(F, s));
    return out;
}

// ---- square classes ----

/// a = b^2 for some b in F; defined for base fields and towers over them.
inline bool is_square(const FieldDescriptor& F, const FieldElement& a) {
    if (a.is_zero()) throw input_error("is_square: zero element");
    if (a.is_ratfunc()) throw unsupported_domain("square test over rational function fields is not supported");
    if (a.is_scalar()) return F.base->is_square(a.scalar());
    const auto& m = a.monomial();
    if (F.characteristic() == 2)
        throw unsupported_domain("square classes of a characteristic-2 tower are not finitely enumerable");
    for (int e : m.exponents)
        if (e % 2) return false;
    return F.base->is_square(m.scalar);
}

/// One representative per square class: base representatives {1} (AC) or
/// {1, least nonsquare} (finite odd), times every product of a subset of the
/// uniformizers; subset-major, binary counting with bit i for tower[i].
inline std::vector<FieldElement> square_class_reps(const FieldDescriptor& F) {
    if (F.is_function_field()) throw unsupported_domain("rational function fields have infinitely many square classes");
    const auto& B = *F.base;
    std::vector<Scalar> base_reps;
    switch (B.kind()) {
        case BaseKind::Rationals:
            throw unsupported_domain("Q has infinitely many square classes");
        case BaseKind::SymbolicAC:
            if (B.characteristic() == 2 && F.is_tower())
                throw unsupported_domain("square classes of a characteristic-2 tower are not finitely enumerable");
            base_reps = {B.one()};
            break;
        default:
            if (B.characteristic() == 2) {
                if (F.is_tower())
                    throw unsupported_domain("square classes of a characteristic-2 tower are not finitely enumerable");
                base_reps = {B.one()};
            } else {
                base_reps = {B.one(), B.least_nonsquare()};
            }
    }
    if (F.depth() > 20) throw input_error("tower too deep to enumerate square classes");
    std::vector<FieldElement> out;
    const std::size_t subsets = std::size_t{1} << F.depth();
    for (std::size_t mask = 0; mask < subsets; ++mask)
        for (const auto& b : base_reps) {
            if (!F.is_tower()) {
                out.emplace_back(b);
                continue;
            }
            std::vector<int> e(F.depth(), 0);
            for (std::size_t i = 0; i < F.depth(); ++i) e[i] = (mask >> i) & 1;
            out.emplace_back(TowerMonomial{b, e});
        }
    return out;
}

// ---- inverse Frobenius ----

/// r with r^p = a, where p = char F > 0.
inline FieldElement pth_root(const FieldDescriptor& F, const FieldElement& a) {
    const std::int64_t p = F.characteristic();
    if (p == 0) throw input_error("p-th roots need positive characteristic");
    if (a.is_scalar()) return F.base->frobenius_root(a.scalar());
    if (a.is_ratfunc()) return RatFunc(pth_root(a.ratfunc().num()), pth_root(a.ratfunc().den()));
    auto m = a.monomial();
    if (a.is_zero()) return a;
    for (auto& e : m.exponents) {
        if (e % p != 0) throw input_error("exponent " + std::to_string(e) + " not divisible by p = " + std::to_string(p));
        e /= static_cast<int>(p);
    }
    m.scalar = F.base->frobenius_root(m.scalar);
    return m;
}

}  // namespace wittlab
