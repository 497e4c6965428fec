#include "slgreen/expression.hpp"

#include "slgreen/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <utility>

namespace slgreen {

namespace {

using NodePtr = std::shared_ptr<const Node>;

NodePtr make_number(double v, std::size_t offset) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Number;
    n->value = v;
    n->offset = offset;
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
        auto n = expr();
        skip_ws();
        if (pos_ < src_.size()) throw ParseError("expected operator or end of input", pos_);
        return n;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr binary(BinaryOp op, NodePtr lhs, NodePtr rhs, std::size_t offset) {
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Binary;
        n->op = op;
        n->lhs = std::move(lhs);
        n->rhs = std::move(rhs);
        n->offset = offset;
        return n;
    }

    NodePtr expr() {
        auto lhs = term();
        for (;;) {
            skip_ws();
            std::size_t at = pos_;
            if (accept('+')) {
                lhs = binary(BinaryOp::Add, lhs, term(), at);
            } else if (accept('-')) {
                lhs = binary(BinaryOp::Sub, lhs, term(), at);
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        auto lhs = unary();
        for (;;) {
            skip_ws();
            std::size_t at = pos_;
            if (accept('*')) {
                lhs = binary(BinaryOp::Mul, lhs, unary(), at);
            } else if (accept('/')) {
                lhs = binary(BinaryOp::Div, lhs, unary(), at);
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        skip_ws();
        std::size_t at = pos_;
        if (accept('-')) {
            auto n = std::make_shared<Node>();
            n->kind = NodeKind::Negate;
            n->lhs = unary();
            n->offset = at;
            return n;
        }
        return power();
    }

    NodePtr power() {
        auto base = atom();
        skip_ws();
        std::size_t at = pos_;
        if (accept('^')) return binary(BinaryOp::Pow, base, unary(), at);
        return base;
    }

    NodePtr atom() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("expected number, identifier or '('", pos_);
        std::size_t at = pos_;
        char ch = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return number();
        if (ch == '(') {
            ++pos_;
            auto inner = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t end = pos_;
            while (end < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
                ++end;
            std::string_view ident = src_.substr(pos_, end - pos_);
            pos_ = end;
            if (ident == "x") {
                auto n = std::make_shared<Node>();
                n->kind = NodeKind::Variable;
                n->offset = at;
                return n;
            }
            if (ident == "pi" || ident == "e") {
                auto n = std::make_shared<Node>();
                n->kind = NodeKind::Constant;
                n->name = std::string(ident);
                n->value = ident == "pi" ? std::numbers::pi : std::numbers::e;
                n->offset = at;
                return n;
            }
            Function fn;
            if (ident == "sin") fn = Function::Sin;
            else if (ident == "cos") fn = Function::Cos;
            else if (ident == "tan") fn = Function::Tan;
            else if (ident == "exp") fn = Function::Exp;
            else if (ident == "log") fn = Function::Log;
            else if (ident == "sqrt") fn = Function::Sqrt;
            else if (ident == "abs") fn = Function::Abs;
            else throw ParseError("unknown identifier '" + std::string(ident) + "'", at);
            if (!accept('(')) throw ParseError("expected '(' after function name", pos_);
            auto n = std::make_shared<Node>();
            n->kind = NodeKind::Call;
            n->fn = fn;
            n->lhs = expr();
            n->offset = at;
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return n;
        }
        throw ParseError(std::string("unexpected character '") + ch + "'", pos_);
    }

    NodePtr number() {
        std::size_t at = pos_;
        std::size_t end = pos_;
        auto digits = [&] {
            std::size_t start = end;
            while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
            return end - start;
        };
        std::size_t mantissa = digits();
        if (end < src_.size() && src_[end] == '.') {
            ++end;
            mantissa += digits();
        }
        if (mantissa == 0) throw ParseError("malformed number", at);
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            std::size_t save = end;
            ++end;
            if (end < src_.size() && (src_[end] == '+' || src_[end] == '-')) ++end;
            if (digits() == 0) end = save;  // not an exponent; 'e' is left for the next token
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + at, src_.data() + end, v);
        if (ec != std::errc() || ptr != src_.data() + end || !std::isfinite(v))
            throw ParseError("number out of range", at);
        pos_ = end;
        return make_number(v, at);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

const char* function_name(Function fn) {
    switch (fn) {
        case Function::Sin: return "sin";
        case Function::Cos: return "cos";
        case Function::Tan: return "tan";
        case Function::Exp: return "exp";
        case Function::Log: return "log";
        case Function::Sqrt: return "sqrt";
        case Function::Abs: return "abs";
    }
    return "?";
}

char op_char(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return '+';
        case BinaryOp::Sub: return '-';
        case BinaryOp::Mul: return '*';
        case BinaryOp::Div: return '/';
        case BinaryOp::Pow: return '^';
    }
    return '?';
}

void unparse(const Node& n, std::string& out) {
    switch (n.kind) {
        case NodeKind::Number: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out += buf;
            break;
        }
        case NodeKind::Variable: out += 'x'; break;
        case NodeKind::Constant: out += n.name; break;
        case NodeKind::Negate:
            out += "(-";
            unparse(*n.lhs, out);
            out += ')';
            break;
        case NodeKind::Binary:
            out += '(';
            unparse(*n.lhs, out);
            out += op_char(n.op);
            unparse(*n.rhs, out);
            out += ')';
            break;
        case NodeKind::Call:
            out += function_name(n.fn);
            out += '(';
            unparse(*n.lhs, out);
            out += ')';
            break;
    }
}

std::string describe(const Node& n) {
    std::string s;
    unparse(n, s);
    return "'" + s + "' (offset " + std::to_string(n.offset) + ")";
}

[[noreturn]] void domain_fail(const Node& n, const char* what) {
    throw DomainError(std::string(what) + " in " + describe(n));
}

Dual check(const Node& n, Dual d) {
    if (!std::isfinite(d.value)) domain_fail(n, "non-finite result");
    return d;
}

// The derivative is carried only when Deriv is true; the scalar path skips that work.
template <bool Deriv>
Dual eval_node(const Node& n, double x) {
    switch (n.kind) {
        case NodeKind::Number:
        case NodeKind::Constant: return {n.value, 0.0};
        case NodeKind::Variable: return {x, 1.0};
        case NodeKind::Negate: {
            Dual a = eval_node<Deriv>(*n.lhs, x);
            return {-a.value, -a.deriv};
        }
        case NodeKind::Binary: {
            Dual a = eval_node<Deriv>(*n.lhs, x);
            Dual b = eval_node<Deriv>(*n.rhs, x);
            switch (n.op) {
                case BinaryOp::Add: return check(n, {a.value + b.value, a.deriv + b.deriv});
                case BinaryOp::Sub: return check(n, {a.value - b.value, a.deriv - b.deriv});
                case BinaryOp::Mul:
                    return check(n, {a.value * b.value,
                                     Deriv ? a.deriv * b.value + a.value * b.deriv : 0.0});
                case BinaryOp::Div: {
                    if (b.value == 0.0) domain_fail(n, "division by zero");
                    double v = a.value / b.value;
                    return check(n, {v, Deriv ? (a.deriv - v * b.deriv) / b.value : 0.0});
                }
                case BinaryOp::Pow: {
                    double v = std::pow(a.value, b.value);
                    if (std::isnan(v)) domain_fail(n, "negative base with non-integer exponent");
                    if (a.value == 0.0 && b.value < 0.0) domain_fail(n, "division by zero");
                    double d = 0.0;
                    if (Deriv) {
                        if (a.deriv != 0.0) d += b.value * std::pow(a.value, b.value - 1.0) * a.deriv;
                        if (b.deriv != 0.0) {
                            if (a.value <= 0.0) domain_fail(n, "variable exponent on non-positive base");
                            d += v * std::log(a.value) * b.deriv;
                        }
                    }
                    return check(n, {v, d});
                }
            }
            break;
        }
        case NodeKind::Call: {
            Dual a = eval_node<Deriv>(*n.lhs, x);
            switch (n.fn) {
                case Function::Sin: return {std::sin(a.value), std::cos(a.value) * a.deriv};
                case Function::Cos: return {std::cos(a.value), -std::sin(a.value) * a.deriv};
                case Function::Tan: {
                    double c = std::cos(a.value);
                    if (c == 0.0) domain_fail(n, "tan pole");
                    return check(n, {std::tan(a.value), Deriv ? a.deriv / (c * c) : 0.0});
                }
                case Function::Exp: {
                    double v = std::exp(a.value);
                    return check(n, {v, v * a.deriv});
                }
                case Function::Log:
                    if (a.value <= 0.0) domain_fail(n, "log of non-positive value");
                    return {std::log(a.value), Deriv ? a.deriv / a.value : 0.0};
                case Function::Sqrt: {
                    if (a.value < 0.0) domain_fail(n, "sqrt of negative value");
                    double v = std::sqrt(a.value);
                    if (Deriv && a.deriv != 0.0 && v == 0.0) domain_fail(n, "sqrt not differentiable at 0");
                    return {v, Deriv && a.deriv != 0.0 ? a.deriv / (2.0 * v) : 0.0};
                }
                case Function::Abs:
                    return {std::abs(a.value), a.value < 0.0 ? -a.deriv : a.deriv};
            }
            break;
        }
    }
    return {0.0, 0.0};
}

bool equal_nodes(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::Number: return a.value == b.value;
        case NodeKind::Variable: return true;
        case NodeKind::Constant: return a.name == b.name;
        case NodeKind::Negate: return equal_nodes(*a.lhs, *b.lhs);
        case NodeKind::Binary:
            return a.op == b.op && equal_nodes(*a.lhs, *b.lhs) && equal_nodes(*a.rhs, *b.rhs);
        case NodeKind::Call: return a.fn == b.fn && equal_nodes(*a.lhs, *b.lhs);
    }
    return false;
}

bool uses_x(const Node& n) {
    switch (n.kind) {
        case NodeKind::Variable: return true;
        case NodeKind::Number:
        case NodeKind::Constant: return false;
        case NodeKind::Negate:
        case NodeKind::Call: return uses_x(*n.lhs);
        case NodeKind::Binary: return uses_x(*n.lhs) || uses_x(*n.rhs);
    }
    return false;
}

}  // namespace

Expr::Expr() : Expr(make_number(0.0, 0), "0") {}

Expr::Expr(std::shared_ptr<const Node> root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

Expr Expr::parse(std::string_view source) {
    return Expr(Parser(source).parse(), std::string(source));
}

Expr Expr::constant(double v) {
    NodePtr root = make_number(std::abs(v), 0);
    if (std::signbit(v)) {
        auto neg = std::make_shared<Node>();
        neg->kind = NodeKind::Negate;
        neg->lhs = std::move(root);
        root = std::move(neg);
    }
    Expr e(std::move(root), "");
    e.source_ = e.to_string();
    return e;
}

double Expr::eval(double x) const { return eval_node<false>(*root_, x).value; }

Dual Expr::eval_dual(double x) const { return eval_node<true>(*root_, x); }

std::string Expr::to_string() const {
    std::string s;
    unparse(*root_, s);
    return s;
}

bool Expr::structurally_equal(const Expr& other) const { return equal_nodes(*root_, *other.root_); }

bool Expr::depends_on_x() const { return uses_x(*root_); }

Expr parse_expression(std::string_view source) { return Expr::parse(source); }

double eval_expression(const Expr& ast, double x) { return ast.eval(x); }

}  // namespace slgreen
