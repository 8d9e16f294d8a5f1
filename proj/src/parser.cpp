#include <cctype>

#include "fleckforge/multipoly.hpp"

namespace fleckforge {
namespace {

constexpr std::uint64_t kMaxExponent = 1u << 16;

class Parser {
public:
    Parser(std::string_view text, std::size_t n_vars) : text_(text), n_vars_(n_vars) {}

    MultiPoly parse() {
        MultiPoly result = parse_expr(0);
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return result;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    static int precedence(char op) {
        switch (op) {
            case '+':
            case '-': return 1;
            case '*': return 2;
            default: return -1;
        }
    }

    // precedence climbing over the left-associative binary operators
    MultiPoly parse_expr(int min_prec) {
        MultiPoly lhs = parse_unary();
        for (;;) {
            char op = peek();
            int prec = precedence(op);
            if (prec < 0 || prec < min_prec) break;
            ++pos_;
            MultiPoly rhs = parse_expr(prec + 1);
            if (op == '+')
                lhs += rhs;
            else if (op == '-')
                lhs -= rhs;
            else
                lhs = lhs * rhs;
        }
        return lhs;
    }

    MultiPoly parse_unary() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -parse_unary();
        }
        if (c == '+') {
            ++pos_;
            return parse_unary();
        }
        return parse_power();
    }

    MultiPoly parse_power() {
        MultiPoly base = parse_primary();
        if (peek() != '^') return base;
        ++pos_;
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            fail("exponent must be a nonnegative integer literal");
        }
        const std::size_t start = pos_;
        std::uint64_t e = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            e = e * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            if (e > kMaxExponent) {
                pos_ = start;
                fail("exponent too large");
            }
            ++pos_;
        }
        if (peek() == '^') fail("chained exponents are ambiguous; use parentheses");
        return base.pow(e);
    }

    MultiPoly parse_primary() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            MultiPoly inner = parse_expr(0);
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            BigInt v(std::string(text_.substr(start, pos_ - start)));
            return MultiPoly::constant(n_vars_, v);
        }
        if (c == 'x' || c == 'X') {
            const std::size_t start = pos_;
            ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                fail("expected variable index after 'x'");
            }
            std::uint64_t index = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                index = index * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
                if (index > n_vars_) break;
                ++pos_;
            }
            if (index == 0 || index > n_vars_) {
                pos_ = start;
                fail("variable index out of range (have " + std::to_string(n_vars_) + " variables)");
            }
            return MultiPoly::variable(n_vars_, index - 1);
        }
        if (c == '\0') fail("unexpected end of input");
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t n_vars_;
    std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, std::size_t n_vars) {
    return Parser(text, n_vars).parse();
}

}  // namespace fleckforge
