#pragma once

#include <optional>
#include <vector>

#include "fleckforge/ivpoly.hpp"
#include "fleckforge/padic.hpp"

namespace fleckforge {

/// One period [g(0), .., g(p^a - 1)] of a function on residues mod p^a.
class ResidueTable {
public:
    ResidueTable(PrimePower pp, std::vector<BigInt> values);

    const PrimePower& prime_power() const { return pp_; }
    const std::vector<BigInt>& values() const { return values_; }
    const BigInt& operator[](std::size_t r) const { return values_[r]; }
    std::size_t size() const { return values_.size(); }

private:
    PrimePower pp_;
    std::vector<BigInt> values_;
};

/// P(x) = sum_{n<=d} coeffs[n] C(x, n), truncated where M_n first reaches b.
struct NewtonPoly {
    std::vector<BigInt> coeffs;
    PrimePower pp;
    std::uint64_t b = 1;
    std::vector<std::int64_t> bound_records;  // M_0 .. M_d

    /// Truncation index d (coeffs.size() - 1).
    std::uint64_t truncation() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    /// Index of the highest nonzero coefficient, or nullopt for zero.
    std::optional<std::uint64_t> degree() const;
    BigInt modulus() const { return pow(pp.p(), b); }
};

/// M_d = max(wan_bound(d, pp, l), factorial_bound(d, pp, l)).
std::int64_t bound_M(std::uint64_t d, const PrimePower& pp, std::uint64_t l);

/// Largest d with M_d < b, found by scanning 0 .. l p^a + ceil(p^(a-1)) + b phi(p^a).
std::uint64_t max_degree(const PrimePower& pp, std::uint64_t l, std::uint64_t b);

/// Raised when a guaranteed valuation inequality fails; always a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// F(x) = f(floor(x / p^a)) g(x mod p^a)
BigInt glued_value(const IntegerValuedPoly& f, const ResidueTable& g, const BigInt& x);

/// Builds P from the forward differences of F and checks ord_p(c_n) >= M_n.
NewtonPoly synthesize(std::uint64_t b, const IntegerValuedPoly& f, const ResidueTable& g);

BigInt eval_newton(const NewtonPoly& P, const BigInt& x);

struct Theorem11Counterexample {
    BigInt q;
    std::uint64_t r = 0;
    BigInt lhs;  // P(p^a q + r)
    BigInt rhs;  // f(q) g(r)
};

struct Theorem11Report {
    bool ok = true;
    std::int64_t q_lo = 0;
    std::int64_t q_hi = 0;
    std::uint64_t checked = 0;
    std::optional<Theorem11Counterexample> counterexample;
};

/// Checks P(p^a q + r) = f(q) g(r) (mod p^b) on q_lo <= q <= q_hi and all r.
Theorem11Report verify_theorem11(const NewtonPoly& P, const IntegerValuedPoly& f,
                                 const ResidueTable& g, std::int64_t q_lo = -25,
                                 std::int64_t q_hi = 25);

/// Wilson's lemma: the l = 0 case with f = 1. Also checks the degree bound
/// d < b phi(p^a) + p^(a-1) and ord_p(c_n) >= floor((n - p^(a-1)) / phi(p^a)).
NewtonPoly wilson_lemma(const ResidueTable& table, std::uint64_t b);

/// b phi(p^a) + p^(a-1) for a >= 1.
BigInt wilson_degree_limit(const PrimePower& pp, std::uint64_t b);

}  // namespace fleckforge
