#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace subfde {

/// Arithmetic expression in one real variable.
///
/// Grammar, loosest binding first:
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := '-' unary | power
///     power   := primary ('^' unary)?          (right associative)
///     primary := number | 'x' | 't' | func '(' expr ')' | '(' expr ')'
///     func    := exp | ln | sin | cos | sqrt | abs | gamma
///
/// `x` and `t` name the same variable. There is no implicit multiplication.
/// Expressions are immutable and cheap to copy (shared tree).
class Expression {
public:
    enum class Kind { number, variable, negate, add, subtract, multiply, divide, power, call };
    enum class Function { exp, ln, sin, cos, sqrt, abs, gamma };

    struct Node;

    /// Constant expression.
    Expression(double value = 0.0);

    static Expression variable();
    static Expression negate(Expression operand);
    static Expression binary(Kind op, Expression lhs, Expression rhs);
    static Expression call(Function fn, Expression arg);

    Kind kind() const;
    double value() const;  // number nodes only
    Function function() const;  // call nodes only
    /// Children: `lhs()` is the operand of negate and call nodes.
    Expression lhs() const;
    Expression rhs() const;

    /// Throws DomainError when `v` lies outside the domain of a sub-expression.
    double eval(double v) const;
    double operator()(double v) const { return eval(v); }

    /// Text that parses back to a structurally identical tree.
    std::string to_string() const;

    /// True when the tree is a literal (no variable reachable).
    bool is_constant() const;

    friend bool operator==(const Expression& a, const Expression& b);

private:
    explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Throws ParseError on malformed input or unknown identifiers.
Expression parse_expression(std::string_view text);

std::string_view function_name(Expression::Function fn);

}  // namespace subfde
