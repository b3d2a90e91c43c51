#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wittlab/errors.hpp"
#include "wittlab/integer.hpp"

namespace wittlab::expr {

/// Parsed arithmetic expression of the element DSL: integers, identifiers,
/// + - * / and integer powers.
struct Node {
    enum class Op { Number, Name, Add, Sub, Mul, Div, Neg, Pow };
    Op op;
    BigInt number;
    std::string name;
    long exponent = 0;
    std::shared_ptr<const Node> lhs, rhs;
};
using NodePtr = std::shared_ptr<const Node>;

namespace detail {

class Parser {
   public:
    explicit Parser(std::string_view s) : s_(s) {}

    NodePtr parse() {
        NodePtr n = parse_sum();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return n;
    }

   private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw input_error("cannot parse \"" + std::string(s_) + "\" at position " + std::to_string(pos_) + ": " + msg);
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    static NodePtr make(Node::Op op, NodePtr l = nullptr, NodePtr r = nullptr) {
        auto n = std::make_shared<Node>();
        n->op = op;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    NodePtr parse_sum() {
        NodePtr n = parse_product();
        while (true) {
            if (eat('+'))
                n = make(Node::Op::Add, n, parse_product());
            else if (eat('-'))
                n = make(Node::Op::Sub, n, parse_product());
            else
                return n;
        }
    }
    NodePtr parse_product() {
        NodePtr n = parse_unary();
        while (true) {
            if (eat('*'))
                n = make(Node::Op::Mul, n, parse_unary());
            else if (eat('/'))
                n = make(Node::Op::Div, n, parse_unary());
            else
                return n;
        }
    }
    NodePtr parse_unary() {
        if (eat('-')) return make(Node::Op::Neg, parse_unary());
        if (eat('+')) return parse_unary();
        return parse_power();
    }
    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (!eat('^')) return base;
        bool negative = eat('-');
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer exponent");
        if (pos_ - start > 6) fail("exponent too large");
        auto n = std::make_shared<Node>();
        n->op = Node::Op::Pow;
        n->lhs = std::move(base);
        n->exponent = std::stol(std::string(s_.substr(start, pos_ - start)));
        if (negative) n->exponent = -n->exponent;
        return n;
    }
    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr n = parse_sum();
            if (!eat(')')) fail("expected ')'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            auto n = std::make_shared<Node>();
            n->op = Node::Op::Number;
            n->number = BigInt(std::string(s_.substr(start, pos_ - start)));
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            auto n = std::make_shared<Node>();
            n->op = Node::Op::Name;
            n->name = std::string(s_.substr(start, pos_ - start));
            return n;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline NodePtr parse(std::string_view text) { return detail::Parser(text).parse(); }

/// Evaluates an expression in an algebra. Ops must provide number(BigInt),
/// name(string), add, sub, mul, div, neg and pow(T, long).
template <class Ops>
auto evaluate(const Node& n, Ops& ops) -> decltype(ops.number(BigInt())) {
    using Op = Node::Op;
    switch (n.op) {
        case Op::Number:
            return ops.number(n.number);
        case Op::Name:
            return ops.name(n.name);
        case Op::Add:
            return ops.add(evaluate(*n.lhs, ops), evaluate(*n.rhs, ops));
        case Op::Sub:
            return ops.sub(evaluate(*n.lhs, ops), evaluate(*n.rhs, ops));
        case Op::Mul:
            return ops.mul(evaluate(*n.lhs, ops), evaluate(*n.rhs, ops));
        case Op::Div:
            return ops.div(evaluate(*n.lhs, ops), evaluate(*n.rhs, ops));
        case Op::Neg:
            return ops.neg(evaluate(*n.lhs, ops));
        case Op::Pow:
            return ops.pow(evaluate(*n.lhs, ops), n.exponent);
    }
    throw std::logic_error("unreachable");
}

/// Splits a comma-separated list at parenthesis depth zero.
inline std::vector<std::string> split_list(std::string_view text, char sep = ',') {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    for (auto& s : out) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    }
    if (out.size() == 1 && out[0].empty()) out.clear();
    for (const auto& s : out)
        if (s.empty()) throw input_error("empty entry in list \"" + std::string(text) + "\"");
    return out;
}

}  // namespace wittlab::expr
