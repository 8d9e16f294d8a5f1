#pragma once

#include <optional>

#include "fleckforge/ivpoly.hpp"
#include "fleckforge/padic.hpp"

namespace fleckforge {

/// sum over 0 <= k <= n with k = r (mod p^a) of C(n,k) (-1)^k f((k-r)/p^a).
///
/// The sum depends on r only through r mod p^a when f = 1, but in general
/// the argument (k - r)/p^a uses the caller's representative r: replacing r
/// by r + p^a shifts the argument of f by one.
BigInt restricted_sum(std::uint64_t n, const BigInt& r, const PrimePower& pp,
                      const IntegerValuedPoly& f);

/// floor((n-1)/(p-1))
std::int64_t fleck_bound(std::uint64_t n, std::uint32_t p);

/// floor((n - p^(a-1)) / phi(p^a)); requires a >= 1.
std::int64_t weisman_bound(std::uint64_t n, const PrimePower& pp);

/// floor((n - l p^a - p^(a-1)) / phi(p^a)), exact for a = 0.
std::int64_t wan_bound(std::uint64_t n, const PrimePower& pp, std::uint64_t l);

/// ord_p(floor(n / p^(a-1))!) - ord_p(l!) - min(l, floor(n / p^a)).
std::int64_t factorial_bound(std::uint64_t n, const PrimePower& pp, std::uint64_t l);

struct FleckBounds {
    std::optional<std::int64_t> fleck;    // f constant and a = 1
    std::optional<std::int64_t> weisman;  // f constant and a >= 1
    std::int64_t wan = 0;
    std::int64_t factorial = 0;
};

struct FleckReport {
    BigInt sum;
    Valuation valuation;
    FleckBounds bounds;
    struct {
        std::optional<bool> fleck;
        std::optional<bool> weisman;
        bool wan = false;
        bool factorial = false;
    } satisfied;

    /// Every applicable bound holds.
    bool all_satisfied() const;
};

FleckReport check_lemma21(std::uint64_t n, const BigInt& r, const PrimePower& pp,
                          const IntegerValuedPoly& f);

/// sum_{k=0}^n C(n,k) (-1)^k C(k-r, l)
BigInt gkp_lhs(std::uint64_t n, const BigInt& r, std::uint64_t l);
/// [l >= n] (-1)^n C(-r, l-n)
BigInt gkp_rhs(std::uint64_t n, const BigInt& r, std::uint64_t l);
bool gkp_identity_check(std::uint64_t n, const BigInt& r, std::uint64_t l);

}  // namespace fleckforge
