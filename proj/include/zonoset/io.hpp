#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "core.hpp"
#include "expr.hpp"

namespace zonoset {

/// Syntax error with a 1-based source position.
class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

/// A syntactically valid file describing an invalid set.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(std::vector<std::string> violations)
        : std::invalid_argument("invalid set: " + join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "; " : "") + v[i];
        return s;
    }
    std::vector<std::string> violations_;
};

/// Shortest form of v with at most 17 significant digits; reads back
/// bit-exactly.
inline std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    std::string s(buf, res.ptr);
    // prefer the shortest representation that still round-trips
    res = std::to_chars(buf, buf + sizeof buf, v);
    std::string shortest(buf, res.ptr);
    return shortest.size() <= s.size() ? shortest : s;
}

namespace detail {

struct Token {
    std::string_view text;
    std::size_t line = 0;
    std::size_t column = 0;
};

/// Lines of whitespace-separated tokens with comments and blank lines removed.
inline std::vector<std::vector<Token>> tokenize_lines(std::string_view src) {
    std::vector<std::vector<Token>> lines;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= src.size()) {
        std::size_t eol = src.find('\n', pos);
        if (eol == std::string_view::npos) eol = src.size();
        std::string_view line = src.substr(pos, eol - pos);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::vector<Token> toks;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            const std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
            if (i > start) toks.push_back({line.substr(start, i - start), line_no, start + 1});
        }
        if (!toks.empty()) lines.push_back(std::move(toks));
        if (eol == src.size()) break;
        pos = eol + 1;
    }
    return lines;
}

inline double to_double(const Token& t) {
    double v = 0.0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw parse_error(t.line, t.column, "expected a finite number, got '" + std::string(t.text) + "'");
    return v;
}

inline std::uint64_t to_count(const Token& t) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size())
        throw parse_error(t.line, t.column, "expected a nonnegative integer, got '" + std::string(t.text) + "'");
    return v;
}

/// Walks the line list, checking keywords and arities.
class LineReader {
public:
    explicit LineReader(std::string_view src) : lines_(tokenize_lines(src)) {}

    bool done() const { return next_ >= lines_.size(); }
    const std::vector<Token>& peek() const { return lines_[next_]; }

    const std::vector<Token>& expect(std::string_view keyword) {
        if (done()) throw parse_error(last_line(), 1, "unexpected end of input, expected '" + std::string(keyword) + "'");
        const auto& l = lines_[next_];
        if (l.front().text != keyword)
            throw parse_error(l.front().line, l.front().column,
                              "expected '" + std::string(keyword) + "', got '" + std::string(l.front().text) + "'");
        ++next_;
        return l;
    }

    static void arity(const std::vector<Token>& l, std::size_t n) {
        if (l.size() == n + 1) return;
        const Token& at = l.size() > n + 1 ? l[n + 1] : l.back();
        throw parse_error(at.line, at.column,
                          "'" + std::string(l.front().text) + "' takes " + std::to_string(n) + " value(s), got " +
                              std::to_string(l.size() - 1));
    }

    std::uint64_t count_line(std::string_view keyword) {
        const auto& l = expect(keyword);
        arity(l, 1);
        return to_count(l[1]);
    }

    Vec real_line(std::string_view keyword, std::size_t n) {
        const auto& l = expect(keyword);
        arity(l, n);
        Vec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = to_double(l[i + 1]);
        return v;
    }

private:
    std::size_t last_line() const { return lines_.empty() ? 1 : lines_.back().front().line; }

    std::vector<std::vector<Token>> lines_;
    std::size_t next_ = 0;
};

inline void append_reals(std::string& out, std::span<const double> v) {
    for (double x : v) {
        out += ' ';
        out += format_double(x);
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// ZPolytope
// ---------------------------------------------------------------------------

/// Syntax-only parse; the result may violate set invariants.
inline ZPolytope parse_zpoly_unchecked(std::string_view text) {
    detail::LineReader in(text);
    detail::LineReader::arity(in.expect("zpoly"), 0);
    ZPolytope P;
    P.dim = in.count_line("dim");
    P.num_factors = in.count_line("factors");
    if (P.dim == 0) throw parse_error(1, 1, "dimension must be positive");
    P.center = in.real_line("center", P.dim);
    while (!in.done()) {
        const auto& l = in.expect("gen");
        if (l.size() < P.dim + 2 || l[P.dim + 1].text != ":") {
            const auto& at = l.size() > P.dim + 1 ? l[P.dim + 1] : l.back();
            throw parse_error(at.line, at.column,
                              "'gen' needs " + std::to_string(P.dim) + " value(s) followed by ':'");
        }
        Vec g(P.dim);
        for (std::size_t i = 0; i < P.dim; ++i) g[i] = detail::to_double(l[i + 1]);
        std::vector<IndexList::value_type> idx;
        for (std::size_t i = P.dim + 2; i < l.size(); ++i) {
            const auto k = detail::to_count(l[i]);
            if (k > std::numeric_limits<IndexList::value_type>::max())
                throw parse_error(l[i].line, l[i].column, "factor index too large");
            idx.push_back(static_cast<IndexList::value_type>(k));
        }
        P.generators.push_back(std::move(g));
        P.exponents.emplace_back(std::move(idx));
    }
    return P;
}

/// Parses and validates; throws validation_error for a well-formed file that
/// describes an invalid set.
inline ZPolytope parse_zpoly(std::string_view text) {
    ZPolytope P = parse_zpoly_unchecked(text);
    if (auto v = validate(P); !v.empty()) throw validation_error(std::move(v));
    return P;
}

inline std::string serialize_zpoly(const ZPolytope& P) {
    std::string out = "zpoly\ndim " + std::to_string(P.dim) + "\nfactors " + std::to_string(P.num_factors) + "\ncenter";
    detail::append_reals(out, P.center);
    out += '\n';
    for (std::size_t i = 0; i < P.generators.size(); ++i) {
        out += "gen";
        detail::append_reals(out, P.generators[i]);
        out += " :";
        for (auto k : P.exponents[i]) out += ' ' + std::to_string(k);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// VPolytope
// ---------------------------------------------------------------------------

inline VPolytope parse_vpoly(std::string_view text) {
    detail::LineReader in(text);
    detail::LineReader::arity(in.expect("vpoly"), 0);
    VPolytope V;
    V.dim = in.count_line("dim");
    if (V.dim == 0) throw parse_error(1, 1, "dimension must be positive");
    while (!in.done()) V.vertices.push_back(in.real_line("vertex", V.dim));
    if (V.vertices.empty()) throw parse_error(1, 1, "vpoly needs at least one vertex");
    return V;
}

inline std::string serialize_vpoly(const VPolytope& V) {
    std::string out = "vpoly\ndim " + std::to_string(V.dim) + '\n';
    for (const auto& v : V.vertices) {
        out += "vertex";
        detail::append_reals(out, v);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Matrix: `matrix`, `rows r`, `cols c`, then r `row` lines of c values.
// ---------------------------------------------------------------------------

inline Matrix parse_matrix(std::string_view text) {
    detail::LineReader in(text);
    detail::LineReader::arity(in.expect("matrix"), 0);
    const auto r = in.count_line("rows");
    const auto c = in.count_line("cols");
    if (r == 0 || c == 0) throw parse_error(1, 1, "matrix dimensions must be positive");
    Matrix M(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        const Vec row = in.real_line("row", c);
        for (std::size_t j = 0; j < c; ++j) M(i, j) = row[j];
    }
    if (!in.done()) {
        const auto& t = in.peek().front();
        throw parse_error(t.line, t.column, "trailing content after " + std::to_string(r) + " rows");
    }
    return M;
}

inline std::string serialize_matrix(const Matrix& M) {
    std::string out = "matrix\nrows " + std::to_string(M.rows()) + "\ncols " + std::to_string(M.cols()) + '\n';
    for (std::size_t i = 0; i < M.rows(); ++i) {
        out += "row";
        for (std::size_t j = 0; j < M.cols(); ++j) out += ' ' + format_double(M(i, j));
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Expressions in parenthesised prefix form:
//   (+ (neg (pow (- x1 1.5) 2)) (* 4 (cos x1)))
// ---------------------------------------------------------------------------

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view src) : src_(src) {}

    Expr parse_all() {
        skip();
        if (at_end()) fail("empty expression");
        Expr e = parse();
        skip();
        if (!at_end()) fail("unexpected content after the expression");
        return e;
    }

private:
    bool at_end() const { return pos_ >= src_.size(); }

    [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }

    [[noreturn]] void fail_at(std::size_t pos, const std::string& what) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos && i < src_.size(); ++i) {
            if (src_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw parse_error(line, col, what);
    }

    void skip() {
        while (!at_end()) {
            const char c = src_[pos_];
            if (c == '#') {
                while (!at_end() && src_[pos_] != '\n') ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view atom() {
        const std::size_t start = pos_;
        while (!at_end()) {
            const char c = src_[pos_];
            if (c == '(' || c == ')' || c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '#') break;
            ++pos_;
        }
        return src_.substr(start, pos_ - start);
    }

    Expr leaf(std::string_view a, std::size_t start) {
        if (a.size() >= 2 && a[0] == 'x') {
            std::uint32_t idx = 0;
            auto [ptr, ec] = std::from_chars(a.data() + 1, a.data() + a.size(), idx);
            if (ec != std::errc{} || ptr != a.data() + a.size() || idx == 0)
                fail_at(start, "bad variable '" + std::string(a) + "'");
            return Expr::var(idx);
        }
        Token t{a, 0, 0};
        try {
            return Expr::constant(to_double(t));
        } catch (const parse_error&) {
            fail_at(start, "expected a number or variable, got '" + std::string(a) + "'");
        }
    }

    Expr parse() {
        skip();
        if (at_end()) fail("unexpected end of input");
        const std::size_t start = pos_;
        if (src_[pos_] == ')') fail("unbalanced ')'");
        if (src_[pos_] != '(') return leaf(atom(), start);

        ++pos_;
        skip();
        const std::size_t op_pos = pos_;
        const std::string_view op = atom();
        if (op.empty()) fail_at(op_pos, "expected an operator");

        std::vector<Expr> args;
        std::vector<std::size_t> arg_pos;
        for (;;) {
            skip();
            if (at_end()) fail_at(start, "unbalanced '(': missing ')'");
            if (src_[pos_] == ')') break;
            arg_pos.push_back(pos_);
            args.push_back(parse());
        }
        ++pos_;

        using Op = Expr::Op;
        auto need = [&](std::size_t n) {
            if (args.size() != n)
                fail_at(op_pos, "'" + std::string(op) + "' takes " + std::to_string(n) + " operand(s), got " +
                                    std::to_string(args.size()));
        };
        if (op == "+" || op == "*") {
            if (args.empty()) fail_at(op_pos, "'" + std::string(op) + "' needs operands");
            if (args.size() == 1) return std::move(args.front());
            return Expr::nary(op == "+" ? Op::add : Op::mul, std::move(args));
        }
        if (op == "-") {
            need(2);
            return Expr::nary(Op::sub, std::move(args));
        }
        if (op == "/") {
            need(2);
            if (!args[1].is_constant()) fail_at(arg_pos[1], "denominator must be constant");
            const double d = evaluate(args[1], std::span<const double>{});
            if (d == 0.0 || !std::isfinite(d)) fail_at(arg_pos[1], "denominator must be a nonzero finite constant");
            return Expr::divide(std::move(args[0]), d);
        }
        if (op == "pow") {
            need(2);
            const Expr& k = args[1];
            if (k.op != Op::constant || k.value < 0 || k.value != std::floor(k.value) || k.value > 1e6)
                fail_at(arg_pos[1], "exponent must be a nonnegative integer literal");
            const auto exponent = static_cast<unsigned>(k.value);
            if (exponent == 0) return Expr::constant(1.0);
            return Expr::power(std::move(args[0]), exponent);
        }
        const std::pair<std::string_view, Op> unary[] = {
            {"neg", Op::neg}, {"sin", Op::sin}, {"cos", Op::cos}, {"exp", Op::exp}};
        for (const auto& [name, code] : unary)
            if (op == name) {
                need(1);
                return Expr::unary(code, std::move(args[0]));
            }
        fail_at(op_pos, "unknown operator '" + std::string(op) + "'");
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses one prefix expression. `(pow e 0)` becomes the constant 1.
inline Expr parse_expr(std::string_view text) { return detail::ExprParser(text).parse_all(); }

inline std::string serialize_expr(const Expr& e) {
    using Op = Expr::Op;
    auto args = [&](std::string head) {
        for (const auto& a : e.args) head += ' ' + serialize_expr(a);
        return head + ')';
    };
    switch (e.op) {
        case Op::variable: return "x" + std::to_string(e.index);
        case Op::constant: return format_double(e.value);
        case Op::neg: return args("(neg");
        case Op::add: return args("(+");
        case Op::sub: return args("(-");
        case Op::mul: return args("(*");
        case Op::pow: return "(pow " + serialize_expr(e.args[0]) + ' ' + std::to_string(e.exponent) + ')';
        case Op::div_const: return "(/ " + serialize_expr(e.args[0]) + ' ' + format_double(e.value) + ')';
        case Op::sin: return args("(sin");
        case Op::cos: return args("(cos");
        case Op::exp: return args("(exp");
    }
    throw std::logic_error("serialize_expr: unknown node");
}

}  // namespace zonoset
