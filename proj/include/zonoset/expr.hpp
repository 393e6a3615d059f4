#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zonoset {

/// Scalar expression tree over variables x1..xN.
struct Expr {
    enum class Op { variable, constant, neg, add, sub, mul, pow, div_const, sin, cos, exp };

    Op op = Op::constant;
    double value = 0.0;       // constant value, or the denominator of div_const
    std::uint32_t index = 0;  // 1-based variable index
    unsigned exponent = 0;    // pow exponent
    std::vector<Expr> args;

    static Expr var(std::uint32_t i) {
        if (i == 0) throw std::invalid_argument("Expr: variable indices start at 1");
        Expr e;
        e.op = Op::variable;
        e.index = i;
        return e;
    }
    static Expr constant(double v) {
        Expr e;
        e.value = v;
        return e;
    }
    static Expr unary(Op op, Expr a) {
        Expr e;
        e.op = op;
        e.args.push_back(std::move(a));
        return e;
    }
    /// n-ary for add and mul, binary for sub.
    static Expr nary(Op op, std::vector<Expr> args) {
        if (args.empty()) throw std::invalid_argument("Expr: operator without operands");
        if (op == Op::sub && args.size() != 2) throw std::invalid_argument("Expr: '-' takes two operands");
        Expr e;
        e.op = op;
        e.args = std::move(args);
        return e;
    }
    static Expr power(Expr base, unsigned k) {
        Expr e = unary(Op::pow, std::move(base));
        e.exponent = k;
        return e;
    }
    static Expr divide(Expr num, double den) {
        if (den == 0.0) throw std::invalid_argument("Expr: division by zero");
        Expr e = unary(Op::div_const, std::move(num));
        e.value = den;
        return e;
    }

    std::size_t node_count() const {
        std::size_t n = 1;
        for (const auto& a : args) n += a.node_count();
        return n;
    }

    /// Largest variable index used, 0 for constant expressions.
    std::uint32_t max_variable() const {
        std::uint32_t m = op == Op::variable ? index : 0;
        for (const auto& a : args) m = std::max(m, a.max_variable());
        return m;
    }

    bool is_constant() const { return max_variable() == 0; }

    friend bool operator==(const Expr&, const Expr&) = default;
};

inline Expr operator+(Expr a, Expr b) { return Expr::nary(Expr::Op::add, {std::move(a), std::move(b)}); }
inline Expr operator-(Expr a, Expr b) { return Expr::nary(Expr::Op::sub, {std::move(a), std::move(b)}); }
inline Expr operator*(Expr a, Expr b) { return Expr::nary(Expr::Op::mul, {std::move(a), std::move(b)}); }
inline Expr operator-(Expr a) { return Expr::unary(Expr::Op::neg, std::move(a)); }
inline Expr operator/(Expr a, double d) { return Expr::divide(std::move(a), d); }
inline Expr pow(Expr a, unsigned k) { return Expr::power(std::move(a), k); }
inline Expr sin(Expr a) { return Expr::unary(Expr::Op::sin, std::move(a)); }
inline Expr cos(Expr a) { return Expr::unary(Expr::Op::cos, std::move(a)); }
inline Expr exp(Expr a) { return Expr::unary(Expr::Op::exp, std::move(a)); }

/// Pointwise value; x[0] is x1.
inline double evaluate(const Expr& e, std::span<const double> x) {
    using Op = Expr::Op;
    switch (e.op) {
        case Op::variable:
            if (e.index > x.size()) throw std::invalid_argument("evaluate: variable x" + std::to_string(e.index) + " unbound");
            return x[e.index - 1];
        case Op::constant: return e.value;
        case Op::neg: return -evaluate(e.args[0], x);
        case Op::add: {
            double s = 0.0;
            for (const auto& a : e.args) s += evaluate(a, x);
            return s;
        }
        case Op::sub: return evaluate(e.args[0], x) - evaluate(e.args[1], x);
        case Op::mul: {
            double s = 1.0;
            for (const auto& a : e.args) s *= evaluate(a, x);
            return s;
        }
        case Op::pow: {
            const double b = evaluate(e.args[0], x);
            double r = 1.0;
            for (unsigned i = 0; i < e.exponent; ++i) r *= b;
            return r;
        }
        case Op::div_const: return evaluate(e.args[0], x) / e.value;
        case Op::sin: return std::sin(evaluate(e.args[0], x));
        case Op::cos: return std::cos(evaluate(e.args[0], x));
        case Op::exp: return std::exp(evaluate(e.args[0], x));
    }
    throw std::logic_error("evaluate: unknown node");
}

}  // namespace zonoset
