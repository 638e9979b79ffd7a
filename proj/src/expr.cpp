#include "holonet/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "holonet/errors.hpp"

namespace holonet {

namespace {

struct Parser {
    const std::string& text;
    std::size_t at = 0;

    void skip_ws() {
        while (at < text.size() && std::isspace(static_cast<unsigned char>(text[at]))) ++at;
    }

    char peek() {
        skip_ws();
        return at < text.size() ? text[at] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++at;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg, std::size_t offset) {
        throw parse_error(msg + " at offset " + std::to_string(offset), offset);
    }

    Expr parse() {
        Expr e = sum();
        skip_ws();
        if (at != text.size()) fail("unexpected trailing input", at);
        return e;
    }

    Expr sum() {
        Expr e = product();
        while (true) {
            const char c = peek();
            if (c != '+' && c != '-') return e;
            ++at;
            Expr rhs = product();
            Expr node;
            node.kind = Expr::Kind::binary;
            node.op = c;
            node.args = {std::move(e), std::move(rhs)};
            e = std::move(node);
        }
    }

    Expr product() {
        Expr e = unary();
        while (true) {
            const char c = peek();
            if (c != '*' && c != '/') return e;
            ++at;
            Expr rhs = unary();
            Expr node;
            node.kind = Expr::Kind::binary;
            node.op = c;
            node.args = {std::move(e), std::move(rhs)};
            e = std::move(node);
        }
    }

    Expr unary() {
        if (accept('-')) {
            Expr node;
            node.kind = Expr::Kind::unary_minus;
            node.args = {unary()};
            return node;
        }
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (accept('^')) {
            Expr exponent = unary(); // right associative, exponent may be signed
            Expr node;
            node.kind = Expr::Kind::binary;
            node.op = '^';
            node.args = {std::move(base), std::move(exponent)};
            return node;
        }
        return base;
    }

    Expr atom() {
        const char c = peek();
        if (c == '(') {
            ++at;
            Expr e = sum();
            if (!accept(')')) fail("expected ')'", at < text.size() ? at : text.size());
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail("expected a value", at < text.size() ? at : text.size());
    }

    Expr number() {
        const std::size_t start = at;
        while (at < text.size() && std::isdigit(static_cast<unsigned char>(text[at]))) ++at;
        if (at < text.size() && text[at] == '.') {
            ++at;
            if (at >= text.size() || !std::isdigit(static_cast<unsigned char>(text[at])))
                fail("expected digit after decimal point", at);
            while (at < text.size() && std::isdigit(static_cast<unsigned char>(text[at]))) ++at;
        }
        if (at < text.size() && (text[at] == 'e' || text[at] == 'E')) {
            std::size_t mark = at;
            ++at;
            if (at < text.size() && (text[at] == '+' || text[at] == '-')) ++at;
            if (at < text.size() && std::isdigit(static_cast<unsigned char>(text[at]))) {
                while (at < text.size() && std::isdigit(static_cast<unsigned char>(text[at]))) ++at;
            } else {
                at = mark; // "2e" is "2" followed by an identifier, not an exponent
            }
        }
        Expr e;
        e.kind = Expr::Kind::number;
        const auto res = std::from_chars(text.data() + start, text.data() + at, e.number);
        if (res.ec != std::errc() || res.ptr != text.data() + at)
            fail("malformed number", start);
        return e;
    }

    Expr identifier() {
        const std::size_t start = at;
        while (at < text.size() && std::isalpha(static_cast<unsigned char>(text[at]))) ++at;
        const std::string name = text.substr(start, at - start);
        if (name == "x" || name == "y") {
            Expr e;
            e.kind = Expr::Kind::variable;
            e.var = name[0];
            return e;
        }
        if (name == "sin" || name == "cos" || name == "exp") {
            skip_ws();
            if (at >= text.size() || text[at] != '(')
                fail("expected '(' after function name", at < text.size() ? at : text.size());
            ++at;
            Expr arg = sum();
            if (!accept(')')) fail("expected ')'", at < text.size() ? at : text.size());
            Expr e;
            e.kind = Expr::Kind::call;
            e.func = name;
            e.args = {std::move(arg)};
            return e;
        }
        fail("unknown identifier '" + name + "'", start);
    }
};

} // namespace

Expr parse_expr(const std::string& text) {
    Parser p{text};
    return p.parse();
}

double eval_expr(const Expr& e, double x, double y) {
    switch (e.kind) {
        case Expr::Kind::number:
            return e.number;
        case Expr::Kind::variable:
            return e.var == 'x' ? x : y;
        case Expr::Kind::unary_minus:
            return -eval_expr(e.args[0], x, y);
        case Expr::Kind::binary: {
            const double a = eval_expr(e.args[0], x, y);
            const double b = eval_expr(e.args[1], x, y);
            switch (e.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/':
                    if (b == 0.0) throw eval_error("division by zero");
                    return a / b;
                case '^': return std::pow(a, b);
            }
            break;
        }
        case Expr::Kind::call: {
            const double a = eval_expr(e.args[0], x, y);
            if (e.func == "sin") return std::sin(a);
            if (e.func == "cos") return std::cos(a);
            return std::exp(a);
        }
    }
    throw eval_error("malformed expression tree");
}

std::string unparse_expr(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::number: {
            char buf[32];
            const auto res = std::to_chars(buf, buf + sizeof buf, e.number);
            return std::string(buf, res.ptr);
        }
        case Expr::Kind::variable:
            return std::string(1, e.var);
        case Expr::Kind::unary_minus:
            return "(-" + unparse_expr(e.args[0]) + ")";
        case Expr::Kind::binary:
            return "(" + unparse_expr(e.args[0]) + e.op + unparse_expr(e.args[1]) + ")";
        case Expr::Kind::call:
            return e.func + "(" + unparse_expr(e.args[0]) + ")";
    }
    return {};
}

} // namespace holonet
