#include "fkvx/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace fkvx {

struct Expression::Node {
    enum class Kind { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Exp, Log };

    Kind kind;
    double value = 0.0;
    std::shared_ptr<const Node> lhs, rhs;

    double eval(double x) const {
        switch (kind) {
        case Kind::Constant: return value;
        case Kind::Variable: return x;
        case Kind::Add: return lhs->eval(x) + rhs->eval(x);
        case Kind::Sub: return lhs->eval(x) - rhs->eval(x);
        case Kind::Mul: return lhs->eval(x) * rhs->eval(x);
        case Kind::Div: return lhs->eval(x) / rhs->eval(x);
        case Kind::Pow: return std::pow(lhs->eval(x), rhs->eval(x));
        case Kind::Neg: return -lhs->eval(x);
        case Kind::Exp: return std::exp(lhs->eval(x));
        case Kind::Log: return std::log(lhs->eval(x));
        }
        return 0.0;
    }
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

NodePtr make_const(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Constant;
    n->value = v;
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    NodePtr run() {
        auto node = parse_sum();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input '" + text_.substr(pos_) + "'", pos_);
        return node;
    }

private:
    // sum := product (('+'|'-') product)*
    NodePtr parse_sum() {
        auto node = parse_product();
        for (;;) {
            skip_ws();
            if (accept('+'))
                node = make(Node::Kind::Add, node, parse_product());
            else if (accept('-'))
                node = make(Node::Kind::Sub, node, parse_product());
            else
                return node;
        }
    }

    // product := unary (('*'|'/') unary)*
    NodePtr parse_product() {
        auto node = parse_unary();
        for (;;) {
            skip_ws();
            if (accept('*'))
                node = make(Node::Kind::Mul, node, parse_unary());
            else if (accept('/'))
                node = make(Node::Kind::Div, node, parse_unary());
            else
                return node;
        }
    }

    NodePtr parse_unary() {
        skip_ws();
        if (accept('-'))
            return make(Node::Kind::Neg, parse_unary());
        if (accept('+'))
            return parse_unary();
        return parse_power();
    }

    // power := atom ('^' unary)?   (right-associative)
    NodePtr parse_power() {
        auto base = parse_atom();
        skip_ws();
        if (accept('^'))
            return make(Node::Kind::Pow, base, parse_unary());
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of expression", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = parse_sum();
            skip_ws();
            if (!accept(')'))
                throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)))
            return parse_ident();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    NodePtr parse_number() {
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin)
            throw ParseError("malformed number", pos_);
        pos_ += static_cast<std::size_t>(end - begin);
        return make_const(v);
    }

    NodePtr parse_ident() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        std::string name = text_.substr(start, pos_ - start);
        if (name == "x")
            return make(Node::Kind::Variable);
        if (name == "exp" || name == "log") {
            skip_ws();
            if (!accept('('))
                throw ParseError("expected '(' after '" + name + "'", pos_);
            auto arg = parse_sum();
            skip_ws();
            if (!accept(')'))
                throw ParseError("expected ')'", pos_);
            return make(name == "exp" ? Node::Kind::Exp : Node::Kind::Log, arg);
        }
        throw ParseError("unknown identifier '" + name + "'", start);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

} // namespace

Expression Expression::parse(const std::string& text) {
    Parser parser(text);
    return Expression(parser.run(), text);
}

double Expression::eval(double x) const { return root_->eval(x); }

double Expression::derivative(double x) const {
    // Fourth-order central stencil; step scaled to the magnitude of x.
    // Keeps x - 2h positive so domains like (0,inf) stay valid.
    double h = 1e-5 * std::max(std::abs(x), 1e-3);
    if (x > 0.0 && x - 2.0 * h <= 0.0)
        h = x / 4.0;
    const double f1 = root_->eval(x + h), fm1 = root_->eval(x - h);
    const double f2 = root_->eval(x + 2 * h), fm2 = root_->eval(x - 2 * h);
    return (8.0 * (f1 - fm1) - (f2 - fm2)) / (12.0 * h);
}

} // namespace fkvx
