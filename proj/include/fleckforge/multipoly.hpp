#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fleckforge/padic.hpp"

namespace fleckforge {

using Exponents = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial with integer coefficients. Terms are kept
/// in a map keyed by exponent vector, so there are no duplicates, and zero
/// coefficients are erased on every update.
class MultiPoly {
public:
    explicit MultiPoly(std::size_t n_vars = 0) : n_vars_(n_vars) {}

    static MultiPoly constant(std::size_t n_vars, const BigInt& c);
    /// The variable x_{index+1} (0-based index).
    static MultiPoly variable(std::size_t n_vars, std::size_t index);

    std::size_t n_vars() const { return n_vars_; }
    const std::map<Exponents, BigInt>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c * x^e; drops the term if it cancels.
    void add_term(const Exponents& e, const BigInt& c);

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly operator-() const;
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly pow(std::uint64_t e) const;

    friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

private:
    void check_compatible(const MultiPoly& o) const;

    std::size_t n_vars_;
    std::map<Exponents, BigInt> terms_;
};

/// Max exponent sum over terms; throws std::domain_error on the zero polynomial.
std::uint64_t total_degree(const MultiPoly& f);

BigInt eval_poly(const MultiPoly& f, std::span<const BigInt> point);
BigInt eval_poly(const MultiPoly& f, std::span<const std::int64_t> point);

/// Text form accepted by parse_poly, e.g. "3*x1^2*x2 - x3 + 7".
std::string render(const MultiPoly& f);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Grammar: integer literals, variables x1..x<n_vars>, binary + - *, unary -,
/// ^ with a nonnegative integer literal exponent, parentheses.
MultiPoly parse_poly(std::string_view text, std::size_t n_vars);

}  // namespace fleckforge
