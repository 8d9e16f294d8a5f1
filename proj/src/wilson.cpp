#include "fleckforge/wilson.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "fleckforge/fleck.hpp"

namespace fleckforge {

ResidueTable::ResidueTable(PrimePower pp, std::vector<BigInt> values)
    : pp_(pp), values_(std::move(values)) {
    if (BigInt(static_cast<unsigned long>(values_.size())) != pp_.value()) {
        throw std::invalid_argument("residue table must have exactly p^a entries");
    }
}

std::optional<std::uint64_t> NewtonPoly::degree() const {
    for (std::size_t n = coeffs.size(); n-- > 0;)
        if (coeffs[n] != 0) return n;
    return std::nullopt;
}

std::int64_t bound_M(std::uint64_t d, const PrimePower& pp, std::uint64_t l) {
    return std::max(wan_bound(d, pp, l), factorial_bound(d, pp, l));
}

std::uint64_t max_degree(const PrimePower& pp, std::uint64_t l, std::uint64_t b) {
    if (b == 0) throw std::invalid_argument("max_degree: b must be positive");
    // past this point the wan term alone is >= b
    const BigInt limit = BigInt(static_cast<unsigned long>(l)) * pp.value() +
                         ceil_of(pp.shifted()) +
                         BigInt(static_cast<unsigned long>(b)) * pp.totient();
    const std::uint64_t scan_to = static_cast<std::uint64_t>(to_i64(limit));
    std::uint64_t best = 0;
    for (std::uint64_t d = 0; d <= scan_to; ++d) {
        if (bound_M(d, pp, l) < static_cast<std::int64_t>(b)) best = d;
    }
    return best;
}

BigInt glued_value(const IntegerValuedPoly& f, const ResidueTable& g, const BigInt& x) {
    const BigInt m = g.prime_power().value();
    BigInt q = floor_div(x, m);
    BigInt r = x - q * m;
    return eval_ivp(f, q) * g[r.get_ui()];
}

NewtonPoly synthesize(std::uint64_t b, const IntegerValuedPoly& f, const ResidueTable& g) {
    const PrimePower& pp = g.prime_power();
    const std::uint64_t l = f.degree_bound();
    const std::uint64_t d = max_degree(pp, l, b);

    std::vector<BigInt> samples;
    samples.reserve(d + 1);
    for (std::uint64_t x = 0; x <= d; ++x)
        samples.push_back(glued_value(f, g, BigInt(static_cast<unsigned long>(x))));

    NewtonPoly P{forward_differences(samples), pp, b, {}};
    P.bound_records.reserve(d + 1);
    for (std::uint64_t n = 0; n <= d; ++n) {
        const std::int64_t M = bound_M(n, pp, l);
        P.bound_records.push_back(M);
        if (!ord_int(P.coeffs[n], pp.p()).at_least(M)) {
            throw InternalError("synthesize: ord_p(c_" + std::to_string(n) + ") below M_n = " +
                                std::to_string(M));
        }
    }
    return P;
}

BigInt eval_newton(const NewtonPoly& P, const BigInt& x) {
    return eval_ivp(IntegerValuedPoly{P.coeffs}, x);
}

Theorem11Report verify_theorem11(const NewtonPoly& P, const IntegerValuedPoly& f,
                                  const ResidueTable& g, std::int64_t q_lo, std::int64_t q_hi) {
    Theorem11Report rep;
    rep.q_lo = q_lo;
    rep.q_hi = q_hi;
    const BigInt m = g.prime_power().value();
    const BigInt mod = P.modulus();
    const IntegerValuedPoly Pf{P.coeffs};
    for (std::int64_t q = q_lo; q <= q_hi; ++q) {
        const BigInt qq = static_cast<long>(q);
        const BigInt fq = eval_ivp(f, qq);
        for (std::size_t r = 0; r < g.size(); ++r) {
            BigInt lhs = eval_ivp(Pf, BigInt(m * qq + static_cast<unsigned long>(r)));
            BigInt rhs = fq * g[r];
            ++rep.checked;
            if (mod_floor(lhs - rhs, mod) != 0) {
                rep.ok = false;
                rep.counterexample = Theorem11Counterexample{qq, r, lhs, rhs};
                return rep;
            }
        }
    }
    return rep;
}

BigInt wilson_degree_limit(const PrimePower& pp, std::uint64_t b) {
    if (pp.a() == 0) throw std::invalid_argument("wilson_degree_limit: requires a >= 1");
    return BigInt(static_cast<unsigned long>(b)) * pp.totient() + pow(pp.p(), pp.a() - 1);
}

NewtonPoly wilson_lemma(const ResidueTable& table, std::uint64_t b) {
    const PrimePower& pp = table.prime_power();
    if (pp.a() == 0) throw std::invalid_argument("wilson_lemma: requires a >= 1");
    NewtonPoly P = synthesize(b, IntegerValuedPoly{{BigInt(1)}}, table);
    if (BigInt(static_cast<unsigned long>(P.truncation())) >= wilson_degree_limit(pp, b)) {
        throw InternalError("wilson_lemma: truncation index exceeds b*phi(p^a) + p^(a-1)");
    }
    for (std::uint64_t n = 0; n < P.coeffs.size(); ++n) {
        if (!ord_int(P.coeffs[n], pp.p()).at_least(weisman_bound(n, pp))) {
            throw InternalError("wilson_lemma: coefficient valuation below Weisman bound at n = " +
                                std::to_string(n));
        }
    }
    return P;
}

}  // namespace fleckforge
