#pragma once

#include <memory>
#include <string>

#include "weaver/transform.hpp"

namespace weaver {

/// Closed arithmetic grammar over the normalized time variable `t`:
///
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := ('+' | '-') factor | number | 't' | func '(' expr ')' | '(' expr ')'
///   func   := sin | cos | exp | abs
///
/// Small enough to keep configs declarative: no names, no state, no escape
/// hatch into code. Syntax errors report the byte position.
class TrendExpr {
public:
    static TrendExpr parse(const std::string& text);

    /// Evaluates at t; throws NumericError when the result is not finite
    /// (division by zero, overflow).
    double eval(double t) const;

    const std::string& text() const { return text_; }

    struct Node;

private:
    TrendExpr(std::shared_ptr<const Node> root, std::string text);
    std::shared_ptr<const Node> root_;
    std::string text_;
};

/// Parses an expression into a trend callable for apply_trend.
TrendFunction parse_trend(const std::string& text);

}  // namespace weaver
