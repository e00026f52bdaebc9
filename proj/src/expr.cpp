#include "subfde/expr.hpp"

#include "subfde/errors.hpp"

#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <utility>

namespace subfde {

struct Expression::Node {
    Kind kind = Kind::number;
    double value = 0.0;
    Function fn = Function::exp;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

constexpr std::array<std::pair<std::string_view, Expression::Function>, 7> kFunctions{{
    {"exp", Expression::Function::exp},
    {"ln", Expression::Function::ln},
    {"sin", Expression::Function::sin},
    {"cos", Expression::Function::cos},
    {"sqrt", Expression::Function::sqrt},
    {"abs", Expression::Function::abs},
    {"gamma", Expression::Function::gamma},
}};

double apply(Expression::Function fn, double a) {
    using F = Expression::Function;
    switch (fn) {
    case F::exp:
        return std::exp(a);
    case F::ln:
        if (!(a > 0.0)) throw DomainError("ln of non-positive argument " + std::to_string(a));
        return std::log(a);
    case F::sin:
        return std::sin(a);
    case F::cos:
        return std::cos(a);
    case F::sqrt:
        if (a < 0.0) throw DomainError("sqrt of negative argument " + std::to_string(a));
        return std::sqrt(a);
    case F::abs:
        return std::abs(a);
    case F::gamma:
        if (a <= 0.0 && a == std::floor(a)) throw DomainError("gamma at non-positive integer " + std::to_string(a));
        return std::tgamma(a);
    }
    return a;
}

double eval_node(const Expression::Node& n, double v) {
    using K = Expression::Kind;
    switch (n.kind) {
    case K::number:
        return n.value;
    case K::variable:
        return v;
    case K::negate:
        return -eval_node(*n.lhs, v);
    case K::call:
        return apply(n.fn, eval_node(*n.lhs, v));
    default:
        break;
    }
    const double a = eval_node(*n.lhs, v);
    const double b = eval_node(*n.rhs, v);
    switch (n.kind) {
    case K::add:
        return a + b;
    case K::subtract:
        return a - b;
    case K::multiply:
        return a * b;
    case K::divide:
        if (b == 0.0) throw DomainError("division by zero");
        return a / b;
    case K::power: {
        if (a == 0.0 && b < 0.0) throw DomainError("zero raised to a negative power");
        const double r = std::pow(a, b);
        if (std::isnan(r) && !std::isnan(a) && !std::isnan(b))
            throw DomainError("negative base raised to a non-integer power");
        return r;
    }
    default:
        return 0.0;
    }
}

char op_char(Expression::Kind k) {
    using K = Expression::Kind;
    switch (k) {
    case K::add: return '+';
    case K::subtract: return '-';
    case K::multiply: return '*';
    case K::divide: return '/';
    case K::power: return '^';
    default: return '?';
    }
}

void print_node(const Expression::Node& n, std::string& out) {
    using K = Expression::Kind;
    switch (n.kind) {
    case K::number: {
        std::array<char, 32> buf{};
        auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), n.value);
        out.append(buf.data(), end);
        return;
    }
    case K::variable:
        out += 'x';
        return;
    case K::negate:
        out += "(-";
        print_node(*n.lhs, out);
        out += ')';
        return;
    case K::call:
        out += function_name(n.fn);
        out += '(';
        print_node(*n.lhs, out);
        out += ')';
        return;
    default:
        out += '(';
        print_node(*n.lhs, out);
        out += op_char(n.kind);
        print_node(*n.rhs, out);
        out += ')';
    }
}

bool equal_nodes(const Expression::Node& a, const Expression::Node& b) {
    using K = Expression::Kind;
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case K::number:
        return a.value == b.value;
    case K::variable:
        return true;
    case K::negate:
        return equal_nodes(*a.lhs, *b.lhs);
    case K::call:
        return a.fn == b.fn && equal_nodes(*a.lhs, *b.lhs);
    default:
        return equal_nodes(*a.lhs, *b.lhs) && equal_nodes(*a.rhs, *b.rhs);
    }
}

bool constant_node(const Expression::Node& n) {
    switch (n.kind) {
    case Expression::Kind::number:
        return true;
    case Expression::Kind::variable:
        return false;
    default:
        return constant_node(*n.lhs) && (!n.rhs || constant_node(*n.rhs));
    }
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expression parse() {
        skip_space();
        if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
        Expression e = parse_sum();
        skip_space();
        if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return e;
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ == text_.size()) throw ParseError(std::string("expected '") + c + "' before end of input", pos_);
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
    }

    Expression parse_sum() {
        Expression lhs = parse_product();
        for (;;) {
            if (accept('+'))
                lhs = Expression::binary(Expression::Kind::add, lhs, parse_product());
            else if (accept('-'))
                lhs = Expression::binary(Expression::Kind::subtract, lhs, parse_product());
            else
                return lhs;
        }
    }

    Expression parse_product() {
        Expression lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = Expression::binary(Expression::Kind::multiply, lhs, parse_unary());
            else if (accept('/'))
                lhs = Expression::binary(Expression::Kind::divide, lhs, parse_unary());
            else
                return lhs;
        }
    }

    Expression parse_unary() {
        if (accept('-')) return Expression::negate(parse_unary());
        return parse_power();
    }

    Expression parse_power() {
        Expression base = parse_primary();
        if (accept('^')) return Expression::binary(Expression::Kind::power, base, parse_unary());
        return base;
    }

    Expression parse_primary() {
        skip_space();
        if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expression inner = parse_sum();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    Expression parse_number() {
        const std::size_t start = pos_;
        double value = 0.0;
        auto [end, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value,
                                         std::chars_format::general);
        if (ec != std::errc{}) throw ParseError("malformed number", start);
        pos_ = static_cast<std::size_t>(end - text_.data());
        return Expression(value);
    }

    Expression parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x" || name == "t") return Expression::variable();
        for (const auto& [fname, fn] : kFunctions) {
            if (name == fname) {
                expect('(');
                Expression arg = parse_sum();
                expect(')');
                return Expression::call(fn, arg);
            }
        }
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(double value) {
    auto n = std::make_shared<Node>();
    n->value = value;
    node_ = std::move(n);
}

Expression Expression::variable() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::variable;
    return Expression(std::shared_ptr<const Node>(std::move(n)));
}

Expression Expression::negate(Expression operand) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::negate;
    n->lhs = std::move(operand.node_);
    return Expression(std::shared_ptr<const Node>(std::move(n)));
}

Expression Expression::binary(Kind op, Expression lhs, Expression rhs) {
    auto n = std::make_shared<Node>();
    n->kind = op;
    n->lhs = std::move(lhs.node_);
    n->rhs = std::move(rhs.node_);
    return Expression(std::shared_ptr<const Node>(std::move(n)));
}

Expression Expression::call(Function fn, Expression arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::call;
    n->fn = fn;
    n->lhs = std::move(arg.node_);
    return Expression(std::shared_ptr<const Node>(std::move(n)));
}

Expression::Kind Expression::kind() const { return node_->kind; }
double Expression::value() const { return node_->value; }
Expression::Function Expression::function() const { return node_->fn; }
Expression Expression::lhs() const { return Expression(node_->lhs); }
Expression Expression::rhs() const { return Expression(node_->rhs); }

double Expression::eval(double v) const { return eval_node(*node_, v); }

std::string Expression::to_string() const {
    std::string out;
    print_node(*node_, out);
    return out;
}

bool Expression::is_constant() const { return constant_node(*node_); }

bool operator==(const Expression& a, const Expression& b) { return equal_nodes(*a.node_, *b.node_); }

Expression parse_expression(std::string_view text) { return Parser(text).parse(); }

std::string_view function_name(Expression::Function fn) {
    for (const auto& [name, f] : kFunctions)
        if (f == fn) return name;
    return "?";
}

}  // namespace subfde
