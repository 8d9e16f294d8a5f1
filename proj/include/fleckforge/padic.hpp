#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace fleckforge {

using BigInt = mpz_class;
using Rational = mpq_class;

/// p-adic order of an integer: a finite exponent, or +infinity for zero.
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr explicit Valuation(std::int64_t v) : value_(v) {}

    static constexpr Valuation infinite() {
        Valuation v;
        v.infinite_ = true;
        return v;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }

    /// Finite value; undefined for an infinite valuation.
    constexpr std::int64_t value() const { return value_; }

    /// True when this valuation is >= the finite bound (always for infinity).
    constexpr bool at_least(std::int64_t bound) const {
        return infinite_ || value_ >= bound;
    }

    constexpr bool operator==(const Valuation& o) const {
        return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
    }
    constexpr std::strong_ordering operator<=>(const Valuation& o) const {
        if (infinite_ || o.infinite_) return infinite_ <=> o.infinite_;
        return value_ <=> o.value_;
    }

    std::string to_string() const;

private:
    std::int64_t value_ = 0;
    bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

bool is_prime(std::uint64_t n);

/// p^a with p prime. Construction rejects composite p.
class PrimePower {
public:
    PrimePower(std::uint32_t p, std::uint32_t a);

    std::uint32_t p() const { return p_; }
    std::uint32_t a() const { return a_; }

    BigInt value() const;      // p^a
    BigInt totient() const;    // phi(p^a)
    Rational shifted() const;  // p^(a-1), equal to 1/p when a = 0

    friend bool operator==(const PrimePower&, const PrimePower&) = default;

private:
    std::uint32_t p_;
    std::uint32_t a_;
};

BigInt pow(std::uint64_t base, std::uint64_t exp);

/// num/den in lowest terms.
Rational make_rational(const BigInt& num, const BigInt& den);

Valuation ord_int(const BigInt& v, std::uint32_t p);

/// ord_p(n!) by Legendre's sum.
std::int64_t ord_factorial(const BigInt& n, std::uint32_t p);

/// Generalized binomial x(x-1)...(x-k+1)/k! for any integer x.
BigInt binom_int(const BigInt& x, std::uint64_t k);
Rational binom_rational(const Rational& x, std::uint64_t k);

BigInt phi_prime_power(const PrimePower& pp);

/// floor(num / den) for den > 0, rounding toward negative infinity.
BigInt floor_div(const BigInt& num, const BigInt& den);
BigInt floor_of(const Rational& q);
BigInt floor_div_rational(const Rational& num, const Rational& den);
BigInt ceil_of(const Rational& q);

/// Narrowing with a range check; throws std::overflow_error.
std::int64_t to_i64(const BigInt& v);

/// Least nonnegative residue of v modulo m (m > 0).
BigInt mod_floor(const BigInt& v, const BigInt& m);

}  // namespace fleckforge
