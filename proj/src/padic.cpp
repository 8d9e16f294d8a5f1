#include "fleckforge/padic.hpp"

#include <stdexcept>

namespace fleckforge {

std::string Valuation::to_string() const {
    return infinite_ ? std::string("inf") : std::to_string(value_);
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
    return os << v.to_string();
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

PrimePower::PrimePower(std::uint32_t p, std::uint32_t a) : p_(p), a_(a) {
    if (!is_prime(p)) {
        throw std::invalid_argument("not a prime: " + std::to_string(p));
    }
}

BigInt PrimePower::value() const { return pow(p_, a_); }

BigInt PrimePower::totient() const { return phi_prime_power(*this); }

Rational PrimePower::shifted() const {
    if (a_ == 0) return Rational(1, p_);
    return Rational(pow(p_, a_ - 1));
}

BigInt pow(std::uint64_t base, std::uint64_t exp) {
    BigInt r;
    BigInt b(static_cast<unsigned long>(base));
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
    return r;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Valuation ord_int(const BigInt& v, std::uint32_t p) {
    if (v == 0) return Valuation::infinite();
    BigInt rest;
    BigInt prime(static_cast<unsigned long>(p));
    auto e = mpz_remove(rest.get_mpz_t(), v.get_mpz_t(), prime.get_mpz_t());
    return Valuation(static_cast<std::int64_t>(e));
}

std::int64_t ord_factorial(const BigInt& n, std::uint32_t p) {
    if (n < 0) throw std::invalid_argument("ord_factorial: negative argument");
    std::int64_t total = 0;
    BigInt q = n;
    while (q > 0) {
        mpz_fdiv_q_ui(q.get_mpz_t(), q.get_mpz_t(), p);
        total += to_i64(q);
    }
    return total;
}

BigInt binom_int(const BigInt& x, std::uint64_t k) {
    BigInt r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r *= x - static_cast<unsigned long>(i);
        // C(x, i) * (x - i) is divisible by i + 1 for every integer x
        mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), i + 1);
    }
    return r;
}

Rational binom_rational(const Rational& x, std::uint64_t k) {
    Rational r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r *= x - Rational(static_cast<unsigned long>(i));
        r /= Rational(static_cast<unsigned long>(i + 1));
    }
    return r;
}

BigInt phi_prime_power(const PrimePower& pp) {
    if (pp.a() == 0) return 1;
    return pow(pp.p(), pp.a()) - pow(pp.p(), pp.a() - 1);
}

BigInt floor_div(const BigInt& num, const BigInt& den) {
    if (den <= 0) throw std::invalid_argument("floor_div: denominator must be positive");
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

BigInt floor_of(const Rational& q) {
    return floor_div(q.get_num(), q.get_den());
}

BigInt ceil_of(const Rational& q) {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

BigInt floor_div_rational(const Rational& num, const Rational& den) {
    if (den <= 0) throw std::invalid_argument("floor_div_rational: denominator must be positive");
    Rational q = num / den;
    return floor_of(q);
}

std::int64_t to_i64(const BigInt& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("integer out of 64-bit range: " + v.get_str());
    return v.get_si();
}

BigInt mod_floor(const BigInt& v, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return r;
}

}  // namespace fleckforge
