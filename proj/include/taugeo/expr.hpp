#pragma once

/** @file expr.hpp
 *  Raw expression trees for the canonical element syntax.
 *
 *  Grammar: sums and differences of products and quotients; unary minus;
 *  postfix `^n` (integer power, `^(-n)` or `^-n` for negatives) and `^*` (star);
 *  numbers are decimal literals; identifiers name generators or the scalars i, s, q.
 */

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace taugeo {

struct Expr {
    enum class Kind { Number, Symbol, Add, Sub, Mul, Div, Neg, Pow, Star };
    Kind kind;
    std::string text;  // literal or identifier
    long exponent = 0;
    std::vector<std::shared_ptr<const Expr>> args;
};

using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr parse_expr(std::string_view text);

/// Folds an expression tree with a context providing number, symbol, add, sub,
/// mul, div, neg, pow and star.
template <class Ctx>
auto fold(const Expr& e, const Ctx& ctx) -> decltype(ctx.number(std::string())) {
    switch (e.kind) {
    case Expr::Kind::Number: return ctx.number(e.text);
    case Expr::Kind::Symbol: return ctx.symbol(e.text);
    case Expr::Kind::Add: return ctx.add(fold(*e.args[0], ctx), fold(*e.args[1], ctx));
    case Expr::Kind::Sub: return ctx.sub(fold(*e.args[0], ctx), fold(*e.args[1], ctx));
    case Expr::Kind::Mul: return ctx.mul(fold(*e.args[0], ctx), fold(*e.args[1], ctx));
    case Expr::Kind::Div: return ctx.div(fold(*e.args[0], ctx), fold(*e.args[1], ctx));
    case Expr::Kind::Neg: return ctx.neg(fold(*e.args[0], ctx));
    case Expr::Kind::Pow: return ctx.pow(fold(*e.args[0], ctx), e.exponent);
    case Expr::Kind::Star: return ctx.star(fold(*e.args[0], ctx));
    }
    return ctx.number("0");
}

}  // namespace taugeo
