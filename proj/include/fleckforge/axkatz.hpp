#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fleckforge/enumerate.hpp"
#include "fleckforge/ivpoly.hpp"
#include "fleckforge/multipoly.hpp"
#include "fleckforge/padic.hpp"

namespace fleckforge {

/// One triple (f_k, a_k, F_k). F_k's degree bound l_k is F.degree_bound().
struct Constraint {
    MultiPoly f;
    std::uint32_t a = 0;
    IntegerValuedPoly F{{BigInt(1)}};
};

struct CongruenceSystem {
    std::uint32_t p = 2;
    std::uint64_t b = 1;
    std::size_t n_vars = 0;
    std::vector<Constraint> constraints;

    /// Throws std::invalid_argument on a composite p, b = 0, a zero f_k,
    /// or mismatched variable counts.
    void validate() const;

    /// Index attaining max_k d_k phi(p^{a_k}) (first one on ties); nullopt when m = 0.
    std::optional<std::size_t> leading_index() const;
};

enum class EvalMode {
    Modular,  // per-point values reduced modulo a sufficient prime power
    Exact,    // big-integer evaluation at every point
};

struct Hypothesis {
    bool holds = false;
    Rational rhs;     // n must strictly exceed this
    Rational margin;  // n - rhs
};

struct DivisibilityVerdict {
    std::string statement;
    BigInt sum;          // exact, or reduced into [0, p^b) when !sum_exact
    bool sum_exact = true;
    BigInt modulus;      // claimed modulus p^b (p^c for the restricted-exponent sum)
    Hypothesis hypothesis;
    bool divisible = false;
    /// binomial-constraint form only: the hypothesis stated in terms of a, l_k, d_k.
    std::optional<Hypothesis> corollary_hypothesis;
};

/// A theorem's hypothesis held but its divisibility conclusion failed.
class TheoremViolation : public std::runtime_error {
public:
    explicit TheoremViolation(DivisibilityVerdict v)
        : std::runtime_error(v.statement + ": hypothesis holds but " + v.modulus.get_str() +
                             " does not divide " + v.sum.get_str()),
          verdict_(std::move(v)) {}
    const DivisibilityVerdict& verdict() const { return verdict_; }

private:
    DivisibilityVerdict verdict_;
};

Hypothesis hypothesis_16(const CongruenceSystem& sys);

struct WeightedSum {
    BigInt value;
    bool exact = true;
};

/// Sum over the cube of prod_k F_k(f_k(x) / p^{a_k}) restricted to points
/// with p^{a_k} | f_k(x) for every k. In modular mode f_k is evaluated
/// mod p^{a_k + b + ord_p(l_k!)} and the result is reduced mod p^b; if the
/// moduli do not fit in 63 bits the exact route is used instead.
WeightedSum theorem12_sum(const CongruenceSystem& sys, EvalMode mode = EvalMode::Modular,
                          const EnumerationOptions& opts = {});

DivisibilityVerdict verify_theorem12(const CongruenceSystem& sys,
                                     EvalMode mode = EvalMode::Modular,
                                     const EnumerationOptions& opts = {});

Hypothesis hypothesis_18(const std::vector<MultiPoly>& polys, std::uint32_t a, std::uint64_t b,
                         const std::vector<std::uint64_t>& ls, std::uint32_t p);

/// The weighted system with a_k = a and F_k = C(x, l_k).
DivisibilityVerdict corollary11_verify(const std::vector<MultiPoly>& polys, std::uint32_t a,
                                       std::uint64_t b, const std::vector<std::uint64_t>& ls,
                                       std::uint32_t p, EvalMode mode = EvalMode::Modular,
                                       const EnumerationOptions& opts = {});

/// Number of common zeros mod p of the polynomials over [0, p-1]^n.
BigInt count_common_zeros(const std::vector<MultiPoly>& polys, std::uint32_t p,
                          EvalMode mode = EvalMode::Modular, const EnumerationOptions& opts = {});

DivisibilityVerdict chevalley_warning_verify(const std::vector<MultiPoly>& polys, std::uint32_t p,
                                             EvalMode mode = EvalMode::Modular,
                                             const EnumerationOptions& opts = {});

DivisibilityVerdict axkatz_prime_verify(const std::vector<MultiPoly>& polys, std::uint64_t b,
                                        std::uint32_t p, EvalMode mode = EvalMode::Modular,
                                        const EnumerationOptions& opts = {});

/// Sum over the full cube of prod_k C(f_k(x), j_k); divisibility by p^c
/// is guaranteed when sum_k j_k d_k < (n - c + 1)(p - 1).
DivisibilityVerdict lemma22_verify(const std::vector<MultiPoly>& polys,
                                   const std::vector<std::uint64_t>& js, std::uint64_t c,
                                   std::uint32_t p, EvalMode mode = EvalMode::Modular,
                                   const EnumerationOptions& opts = {});

/// Full-cube sum of prod_k C(f_k(x), j_k), exact or reduced mod p^c.
WeightedSum lemma22_sum(const std::vector<MultiPoly>& polys, const std::vector<std::uint64_t>& js,
                        std::uint64_t c, std::uint32_t p, EvalMode mode = EvalMode::Modular,
                        const EnumerationOptions& opts = {});

}  // namespace fleckforge
