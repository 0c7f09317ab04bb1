#pragma once

#include <memory>
#include <stdexcept>
#include <string>

namespace fkvx {

// Error raised for malformed expression text; carries the offending position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

/// A parsed closed-form expression of a single variable x.
/// Grammar: + - * / ^ (right-assoc), unary minus, parentheses,
/// exp(...), log(...), numeric literals, and the variable x.
class Expression {
public:
    static Expression parse(const std::string& text);

    double eval(double x) const;

    // Five-point central finite difference with step scaled to x.
    double derivative(double x) const;

    const std::string& text() const { return text_; }

    struct Node;

private:
    explicit Expression(std::shared_ptr<const Node> root, std::string text)
        : root_(std::move(root)), text_(std::move(text)) {}

    std::shared_ptr<const Node> root_;
    std::string text_;
};

} // namespace fkvx
