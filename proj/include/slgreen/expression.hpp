#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace slgreen {

enum class NodeKind { Number, Variable, Constant, Negate, Binary, Call };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Sin, Cos, Tan, Exp, Log, Sqrt, Abs };

struct Node {
    NodeKind kind = NodeKind::Number;
    double value = 0.0;  // Number literal or Constant value
    std::string name;    // Constant name ("pi", "e")
    BinaryOp op = BinaryOp::Add;
    Function fn = Function::Sin;
    std::shared_ptr<const Node> lhs;  // operand for Negate / Call
    std::shared_ptr<const Node> rhs;
    std::size_t offset = 0;  // byte offset in the source it was parsed from
};

/// Value and first derivative with respect to x.
struct Dual {
    double value = 0.0;
    double deriv = 0.0;
};

/// Immutable expression tree in the single variable x.
///
/// Grammar (whitespace insignificant):
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := '-' unary | power
///   power  := atom ('^' unary)?           right-associative, binds tighter than '-'
///   atom   := number | 'x' | 'pi' | 'e' | ident '(' expr ')' | '(' expr ')'
class Expr {
public:
    Expr();  // the constant 0

    static Expr parse(std::string_view source);
    static Expr constant(double v);

    double operator()(double x) const { return eval(x); }
    double eval(double x) const;
    Dual eval_dual(double x) const;

    /// Fully parenthesized text that parses back to a structurally identical tree.
    std::string to_string() const;
    bool structurally_equal(const Expr& other) const;
    bool depends_on_x() const;

    const Node& root() const { return *root_; }
    const std::string& source() const { return source_; }

private:
    explicit Expr(std::shared_ptr<const Node> root, std::string source);

    std::shared_ptr<const Node> root_;
    std::string source_;
};

Expr parse_expression(std::string_view source);
double eval_expression(const Expr& ast, double x);

}  // namespace slgreen
