#include "fleckforge/fleck.hpp"

#include <algorithm>
#include <stdexcept>

namespace fleckforge {

BigInt restricted_sum(std::uint64_t n, const BigInt& r, const PrimePower& pp,
                      const IntegerValuedPoly& f) {
    const BigInt modulus = pp.value();
    const BigInt upper = static_cast<unsigned long>(n);
    BigInt sum = 0;
    // k runs over the class of r inside [0, n], starting from its least residue
    for (BigInt k = mod_floor(r, modulus); k <= upper; k += modulus) {
        BigInt arg;
        BigInt shifted = k - r;
        mpz_divexact(arg.get_mpz_t(), shifted.get_mpz_t(), modulus.get_mpz_t());
        BigInt term = binom_int(upper, k.get_ui()) * eval_ivp(f, arg);
        if (mpz_odd_p(k.get_mpz_t()))
            sum -= term;
        else
            sum += term;
    }
    return sum;
}

std::int64_t fleck_bound(std::uint64_t n, std::uint32_t p) {
    return to_i64(floor_div(BigInt(static_cast<unsigned long>(n)) - 1, BigInt(p - 1)));
}

std::int64_t weisman_bound(std::uint64_t n, const PrimePower& pp) {
    if (pp.a() == 0) throw std::invalid_argument("weisman_bound: requires a >= 1");
    return to_i64(floor_div(BigInt(static_cast<unsigned long>(n)) - pow(pp.p(), pp.a() - 1),
                            pp.totient()));
}

std::int64_t wan_bound(std::uint64_t n, const PrimePower& pp, std::uint64_t l) {
    Rational numer = Rational(BigInt(static_cast<unsigned long>(n))) -
                     Rational(BigInt(static_cast<unsigned long>(l)) * pp.value()) - pp.shifted();
    return to_i64(floor_div_rational(numer, Rational(pp.totient())));
}

std::int64_t factorial_bound(std::uint64_t n, const PrimePower& pp, std::uint64_t l) {
    const BigInt nn = static_cast<unsigned long>(n);
    const BigInt ll = static_cast<unsigned long>(l);
    // floor(n / p^(a-1)) is n*p when a = 0
    BigInt top = floor_div_rational(Rational(nn), pp.shifted());
    BigInt lower = std::min(ll, floor_div(nn, pp.value()));
    return ord_factorial(top, pp.p()) - ord_factorial(ll, pp.p()) - to_i64(lower);
}

bool FleckReport::all_satisfied() const {
    return satisfied.wan && satisfied.factorial && satisfied.fleck.value_or(true) &&
           satisfied.weisman.value_or(true);
}

FleckReport check_lemma21(std::uint64_t n, const BigInt& r, const PrimePower& pp,
                          const IntegerValuedPoly& f) {
    FleckReport rep;
    rep.sum = restricted_sum(n, r, pp, f);
    rep.valuation = ord_int(rep.sum, pp.p());
    const std::uint64_t l = f.degree_bound();
    rep.bounds.wan = wan_bound(n, pp, l);
    rep.bounds.factorial = factorial_bound(n, pp, l);
    rep.satisfied.wan = rep.valuation.at_least(rep.bounds.wan);
    rep.satisfied.factorial = rep.valuation.at_least(rep.bounds.factorial);
    if (f.is_constant() && pp.a() >= 1) {
        rep.bounds.weisman = weisman_bound(n, pp);
        rep.satisfied.weisman = rep.valuation.at_least(*rep.bounds.weisman);
        if (pp.a() == 1) {
            rep.bounds.fleck = fleck_bound(n, pp.p());
            rep.satisfied.fleck = rep.valuation.at_least(*rep.bounds.fleck);
        }
    }
    return rep;
}

BigInt gkp_lhs(std::uint64_t n, const BigInt& r, std::uint64_t l) {
    BigInt sum = 0;
    const BigInt nn = static_cast<unsigned long>(n);
    for (std::uint64_t k = 0; k <= n; ++k) {
        BigInt term = binom_int(nn, k) * binom_int(BigInt(static_cast<unsigned long>(k)) - r, l);
        if (k % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return sum;
}

BigInt gkp_rhs(std::uint64_t n, const BigInt& r, std::uint64_t l) {
    if (l < n) return 0;
    BigInt v = binom_int(-r, l - n);
    return n % 2 == 0 ? v : BigInt(-v);
}

bool gkp_identity_check(std::uint64_t n, const BigInt& r, std::uint64_t l) {
    return gkp_lhs(n, r, l) == gkp_rhs(n, r, l);
}

}  // namespace fleckforge
