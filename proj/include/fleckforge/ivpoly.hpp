#pragma once

#include <span>
#include <vector>

#include "fleckforge/padic.hpp"

namespace fleckforge {

/// One-variable integer-valued polynomial in the binomial basis:
/// f(x) = sum_j coeffs[j] * C(x, j). The declared degree bound is
/// coeffs.size() - 1; trailing zeros are kept so the bound survives.
struct IntegerValuedPoly {
    std::vector<BigInt> coeffs;

    /// Declared degree bound l (0 for the empty/zero polynomial).
    std::uint64_t degree_bound() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    bool is_zero() const;
    /// True when every coefficient past c_0 vanishes.
    bool is_constant() const;

    friend bool operator==(const IntegerValuedPoly&, const IntegerValuedPoly&) = default;
};

BigInt eval_ivp(const IntegerValuedPoly& f, const BigInt& x);
Rational eval_ivp(const IntegerValuedPoly& f, const Rational& x);

/// [f(0)..f(d)] -> [D^0 f(0)..D^d f(0)] via the difference triangle.
std::vector<BigInt> forward_differences(std::span<const BigInt> values);

/// Same result through c_n = sum_k C(n,k) (-1)^(n-k) f(k).
std::vector<BigInt> forward_differences_alternating(std::span<const BigInt> values);

IntegerValuedPoly ivp_from_values(std::span<const BigInt> values);

/// Power-basis coefficients [a_0..a_l] to the binomial basis.
IntegerValuedPoly monomials_to_ivp(std::span<const BigInt> monomial_coeffs);

/// Determinant of a square integer matrix by fraction-free elimination.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m);

/// Newton-Gregory remainder R_d(x) as the ratio of the bordered
/// (d+2)x(d+2) determinant over the d x d power determinant.
/// `values` holds f(0)..f(d); `fx` is the f(x) entry of the last row.
Rational newton_remainder(std::span<const BigInt> values, const Rational& x,
                          const Rational& fx, std::uint64_t d);

}  // namespace fleckforge
