#pragma once

#include <string>
#include <vector>

namespace holonet {

// Scalar expression in the plane variables x and y: literals, + - * / ^,
// unary minus, and the functions sin, cos, exp. Value-type AST.
struct Expr {
    enum class Kind { number, variable, unary_minus, binary, call };

    Kind kind = Kind::number;
    double number = 0.0;
    char var = 'x';        // variable
    char op = '+';         // binary: + - * / ^
    std::string func;      // call: sin cos exp
    std::vector<Expr> args;

    bool operator==(const Expr&) const = default;
};

// Recursive descent with conventional precedence: ^ binds tighter than unary
// minus, then * /, then + -; + - * / associate left, ^ right. Whitespace is
// insignificant. Throws parse_error carrying the byte offset.
Expr parse_expr(const std::string& text);

// Throws eval_error on division by zero.
double eval_expr(const Expr& e, double x, double y);

// Fully parenthesized text that reparses to a structurally identical tree.
std::string unparse_expr(const Expr& e);

} // namespace holonet
