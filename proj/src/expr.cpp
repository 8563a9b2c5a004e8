#include "taugeo/expr.hpp"

#include "taugeo/error.hpp"

#include <cctype>

namespace taugeo {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr parse() {
        ExprPtr e = sum();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    static ExprPtr node(Expr::Kind kind, std::vector<ExprPtr> args, long exponent = 0) {
        auto e = std::make_shared<Expr>();
        e->kind = kind;
        e->args = std::move(args);
        e->exponent = exponent;
        return e;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError(why + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char ch) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr sum() {
        ExprPtr lhs = product();
        while (true) {
            if (accept('+'))
                lhs = node(Expr::Kind::Add, {lhs, product()});
            else if (accept('-'))
                lhs = node(Expr::Kind::Sub, {lhs, product()});
            else
                return lhs;
        }
    }

    ExprPtr product() {
        ExprPtr lhs = unary();
        while (true) {
            if (accept('*'))
                lhs = node(Expr::Kind::Mul, {lhs, unary()});
            else if (accept('/'))
                lhs = node(Expr::Kind::Div, {lhs, unary()});
            else
                return lhs;
        }
    }

    ExprPtr unary() {
        if (accept('-')) return node(Expr::Kind::Neg, {unary()});
        if (accept('+')) return unary();
        return postfix();
    }

    long integer() {
        skip_space();
        bool negative = false;
        bool paren = accept('(');
        if (accept('-')) negative = true;
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer exponent");
        long value = std::stol(std::string(text_.substr(start, pos_ - start)));
        if (paren && !accept(')')) fail("expected ')'");
        return negative ? -value : value;
    }

    ExprPtr postfix() {
        ExprPtr base = primary();
        while (accept('^')) {
            if (accept('*'))
                base = node(Expr::Kind::Star, {base});
            else
                base = node(Expr::Kind::Pow, {base}, integer());
        }
        return base;
    }

    ExprPtr primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            ExprPtr inner = sum();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        auto e = std::make_shared<Expr>();
        std::size_t start = pos_;
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
                ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
                std::size_t save = pos_++;
                if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
                if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
                } else {
                    pos_ = save;
                }
            }
            e->kind = Expr::Kind::Number;
        } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            e->kind = Expr::Kind::Symbol;
        } else {
            fail("unexpected '" + std::string(1, ch) + "'");
        }
        e->text = std::string(text_.substr(start, pos_ - start));
        return e;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace taugeo
