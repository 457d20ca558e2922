#include "weaver/trend_expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "weaver/errors.hpp"

namespace weaver {

struct TrendExpr::Node {
    enum class Op { constant, variable, add, sub, mul, div, neg, sin, cos, exp, abs };
    Op op;
    double value = 0.0;
    std::shared_ptr<const Node> a, b;
};

namespace {

using Node = TrendExpr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Op op, NodePtr a = nullptr, NodePtr b = nullptr, double value = 0.0) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->value = value;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    NodePtr run() {
        auto node = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return node;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ValidationError("trend expression: " + what + " at position " +
                              std::to_string(pos_));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        auto node = term();
        for (;;) {
            if (eat('+'))
                node = make(Node::Op::add, node, term());
            else if (eat('-'))
                node = make(Node::Op::sub, node, term());
            else
                return node;
        }
    }

    NodePtr term() {
        auto node = factor();
        for (;;) {
            if (eat('*'))
                node = make(Node::Op::mul, node, factor());
            else if (eat('/'))
                node = make(Node::Op::div, node, factor());
            else
                return node;
        }
    }

    NodePtr factor() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (c == '+') {
            ++pos_;
            return factor();
        }
        if (c == '-') {
            ++pos_;
            return make(Node::Op::neg, factor());
        }
        if (c == '(') {
            ++pos_;
            auto node = expr();
            if (!eat(')')) fail("expected ')'");
            return node;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        double v = 0.0;
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{}) fail("bad number");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return make(Node::Op::constant, nullptr, nullptr, v);
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string name = text_.substr(start, pos_ - start);
        if (name == "t") return make(Node::Op::variable);
        Node::Op op;
        if (name == "sin")
            op = Node::Op::sin;
        else if (name == "cos")
            op = Node::Op::cos;
        else if (name == "exp")
            op = Node::Op::exp;
        else if (name == "abs")
            op = Node::Op::abs;
        else {
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        if (!eat('(')) fail("expected '(' after '" + name + "'");
        auto arg = expr();
        if (!eat(')')) fail("expected ')'");
        return make(op, std::move(arg));
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

double eval_node(const Node& n, double t) {
    switch (n.op) {
        case Node::Op::constant: return n.value;
        case Node::Op::variable: return t;
        case Node::Op::add: return eval_node(*n.a, t) + eval_node(*n.b, t);
        case Node::Op::sub: return eval_node(*n.a, t) - eval_node(*n.b, t);
        case Node::Op::mul: return eval_node(*n.a, t) * eval_node(*n.b, t);
        case Node::Op::div: return eval_node(*n.a, t) / eval_node(*n.b, t);
        case Node::Op::neg: return -eval_node(*n.a, t);
        case Node::Op::sin: return std::sin(eval_node(*n.a, t));
        case Node::Op::cos: return std::cos(eval_node(*n.a, t));
        case Node::Op::exp: return std::exp(eval_node(*n.a, t));
        case Node::Op::abs: return std::abs(eval_node(*n.a, t));
    }
    return 0.0;
}

}  // namespace

TrendExpr::TrendExpr(std::shared_ptr<const Node> root, std::string text)
    : root_(std::move(root)), text_(std::move(text)) {}

TrendExpr TrendExpr::parse(const std::string& text) {
    return TrendExpr(Parser(text).run(), text);
}

double TrendExpr::eval(double t) const {
    const double v = eval_node(*root_, t);
    if (!std::isfinite(v))
        throw NumericError("trend expression '" + text_ + "' produced a non-finite value at t = " +
                           std::to_string(t));
    return v;
}

TrendFunction parse_trend(const std::string& text) {
    auto expr = std::make_shared<const TrendExpr>(TrendExpr::parse(text));
    return [expr](double t) { return expr->eval(t); };
}

}  // namespace weaver
