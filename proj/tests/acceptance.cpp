// Acceptance gate: one PASS/FAIL line per criterion. Every check compares
// the library against the reference routes in oracles.hpp or against bounds
// recomputed here from their defining formulas.

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fleckforge/axkatz.hpp"
#include "fleckforge/fleck.hpp"
#include "fleckforge/wilson.hpp"
#include "oracles.hpp"

using namespace fleckforge;
using Clock = std::chrono::steady_clock;

namespace {

struct Tally {
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::string first;

    void check(bool ok, const std::string& what) {
        ++cases;
        if (!ok && failures++ == 0) first = what;
    }
};

// ---- independent bound arithmetic -------------------------------------------------

long ipow(long p, long e) {
    long v = 1;
    while (e-- > 0) v *= p;
    return v;
}

/// ord_p(k!) for k <= limit, accumulated from ord_p(k) by repeated division.
std::vector<long> factorial_orders(unsigned long p, unsigned long limit) {
    std::vector<long> t(limit + 1, 0);
    for (unsigned long k = 1; k <= limit; ++k) t[k] = t[k - 1] + oracle::ord_by_division(BigInt(k), p);
    return t;
}

struct Bounds {
    long p, a;
    std::vector<long> fact;  // ord_p(k!) table

    Bounds(long p_, long a_, unsigned long n_max) : p(p_), a(a_) {
        fact = factorial_orders(p, a == 0 ? n_max * p : n_max);
    }
    long wan(long n, long l) const {
        // a = 0: floor(n - l - 1/p) = n - l - 1
        if (a == 0) return n - l - 1;
        const long pa = ipow(p, a), pa1 = ipow(p, a - 1);
        return oracle::floor_div(n - l * pa - pa1, pa - pa1);
    }
    long factorial(long n, long l) const {
        const long top = a == 0 ? n * p : n / ipow(p, a - 1);
        return fact[top] - fact[l] - std::min(l, n / ipow(p, a));
    }
    long M(long n, long l) const { return std::max(wan(n, l), factorial(n, l)); }
};

BigInt big_pow(unsigned long p, unsigned long e) {
    BigInt v;
    mpz_ui_pow_ui(v.get_mpz_t(), p, e);
    return v;
}

Rational frac(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

bool divides(const BigInt& m, const BigInt& v) { return mpz_divisible_p(v.get_mpz_t(), m.get_mpz_t()) != 0; }

BigInt residue(const BigInt& v, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::vector<BigInt> random_coeffs(std::mt19937_64& rng, unsigned count, long bound) {
    std::uniform_int_distribution<long> c(-bound, bound);
    std::vector<BigInt> v;
    for (unsigned i = 0; i < count; ++i) v.emplace_back(c(rng));
    return v;
}

unsigned uniform(std::mt19937_64& rng, unsigned lo, unsigned hi) {
    return std::uniform_int_distribution<unsigned>(lo, hi)(rng);
}

std::size_t total_deg(const MultiPoly& f) {
    std::size_t d = 0;
    for (const auto& [e, c] : f.terms()) {
        std::size_t s = 0;
        for (auto x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

MultiPoly nonzero_poly(std::mt19937_64& rng, std::size_t n, unsigned max_deg, int max_coeff) {
    for (;;) {
        auto f = oracle::random_poly(rng, n, max_deg, max_coeff, 4);
        if (!f.is_zero()) return f;
    }
}

// ---- criteria -----------------------------------------------------------------------

Tally lemma21_grid() {
    Tally t;
    std::mt19937_64 rng(2101);
    for (long p : {2, 3, 5, 7}) {
        for (long a = 0; a <= 2; ++a) {
            const Bounds bd(p, a, 60);
            const long m = ipow(p, a);
            const PrimePower pp(p, a);
            for (long n = 0; n <= 60; ++n) {
                for (long r : {0L, 1L, m - 1, -3L}) {
                    for (int s = 0; s < 5; ++s) {
                        const unsigned l = uniform(rng, 0, 3);
                        const auto c = random_coeffs(rng, l + 1, 9);
                        const BigInt sum = oracle::restricted_sum(n, r, m, c);
                        const BigInt lib = restricted_sum(n, BigInt(r), pp, IntegerValuedPoly{c});
                        const long ord = oracle::ord_by_division(sum, p);
                        const long need = bd.M(n, l);
                        const auto rep = check_lemma21(n, BigInt(r), pp, IntegerValuedPoly{c});
                        const std::string where = "p=" + std::to_string(p) + " a=" + std::to_string(a) +
                                                  " n=" + std::to_string(n) + " r=" + std::to_string(r);
                        t.check(lib == sum, "sum mismatch at " + where);
                        t.check(ord < 0 || ord >= need, "valuation below max(wan, factorial) at " + where);
                        t.check(rep.bounds.wan == bd.wan(n, l) && rep.bounds.factorial == bd.factorial(n, l),
                                "bound mismatch at " + where);
                        t.check(rep.all_satisfied(), "library reports an unmet bound at " + where);
                    }
                }
            }
        }
    }
    return t;
}

Tally fleck_weisman() {
    Tally t;
    const std::vector<BigInt> one{1};
    for (long p : {2, 3, 5, 7}) {
        for (long a = 1; a <= 2; ++a) {
            const long m = ipow(p, a), phi = m - ipow(p, a - 1);
            for (long n = 0; n <= 60; ++n) {
                for (long r : {0L, 1L, m - 1, -3L}) {
                    const long ord = oracle::ord_by_division(oracle::restricted_sum(n, r, m, one), p);
                    const std::string where = "p=" + std::to_string(p) + " a=" + std::to_string(a) +
                                              " n=" + std::to_string(n) + " r=" + std::to_string(r);
                    const long weisman = oracle::floor_div(n - ipow(p, a - 1), phi);
                    t.check(ord < 0 || ord >= weisman, "Weisman bound fails at " + where);
                    t.check(weisman_bound(n, PrimePower(p, a)) == weisman, "Weisman formula mismatch at " + where);
                    t.check(wan_bound(n, PrimePower(p, a), 0) == weisman, "l = 0 Wan bound differs at " + where);
                    if (a == 1) {
                        const long fleck = oracle::floor_div(n - 1, p - 1);
                        t.check(ord < 0 || ord >= fleck, "Fleck bound fails at " + where);
                        t.check(fleck_bound(n, p) == fleck, "Fleck formula mismatch at " + where);
                    }
                }
            }
        }
    }
    t.check(oracle::restricted_sum(3, 0, 2, one) == 4, "sum(3,0,2,1) != 4 by direct summation");
    t.check(restricted_sum(3, 0, PrimePower(2, 1), IntegerValuedPoly{one}) == 4, "library sum(3,0,2,1) != 4");
    t.check(oracle::restricted_sum(6, 0, 4, one) == 16, "sum(6,0,4) != 16 by direct summation");
    t.check(restricted_sum(6, 0, PrimePower(2, 2), IntegerValuedPoly{one}) == 16, "library sum(6,0,4) != 16");
    return t;
}

Tally gkp() {
    Tally t;
    for (unsigned long n = 0; n <= 25; ++n) {
        for (long r = -25; r <= 25; ++r) {
            for (unsigned long l = 0; l <= 10; ++l) {
                BigInt lhs = 0;
                for (unsigned long k = 0; k <= n; ++k) {
                    BigInt term = oracle::binom(static_cast<long>(n), k) * oracle::binom(static_cast<long>(k) - r, l);
                    lhs += (k % 2 == 0) ? term : BigInt(-term);
                }
                BigInt rhs = 0;
                if (l >= n) rhs = (n % 2 == 0 ? 1 : -1) * oracle::binom(-r, l - n);
                const std::string where =
                    "n=" + std::to_string(n) + " r=" + std::to_string(r) + " l=" + std::to_string(l);
                t.check(lhs == rhs, "oracle sides differ at " + where);
                t.check(gkp_identity_check(n, BigInt(r), l), "gkp_identity_check false at " + where);
                t.check(gkp_lhs(n, BigInt(r), l) == lhs, "library left side differs at " + where);
            }
        }
    }
    return t;
}

Tally theorem11() {
    Tally t;
    std::mt19937_64 rng(1101);
    std::uniform_int_distribution<long> entry(-50, 50);
    for (int inst = 0; inst < 200; ++inst) {
        const long p = std::array<long, 3>{2, 3, 5}[uniform(rng, 0, 2)];
        const long a = uniform(rng, 0, 2);
        const long b = uniform(rng, 1, 3);
        const unsigned l = uniform(rng, 0, 2);
        const long m = ipow(p, a);
        const auto fc = random_coeffs(rng, l + 1, 50);
        std::vector<BigInt> g;
        for (long k = 0; k < m; ++k) g.emplace_back(entry(rng));
        const std::string where = "instance " + std::to_string(inst);

        const Bounds bd(p, a, 400);
        long d = 0;
        for (long n = 0; n <= 400; ++n)
            if (bd.M(n, l) < b) d = n;

        auto F = [&](long x) -> BigInt {
            return oracle::eval_binomial_basis(fc, BigInt(oracle::floor_div(x, m))) * g[residue(BigInt(x), BigInt(m)).get_ui()];
        };
        std::vector<BigInt> c(d + 1, 0);
        for (long n = 0; n <= d; ++n)
            for (long k = 0; k <= n; ++k) {
                BigInt term = oracle::binom(n, k) * F(k);
                c[n] += ((n - k) % 2 == 0) ? term : BigInt(-term);
            }

        std::optional<NewtonPoly> P;
        try {
            P = synthesize(b, IntegerValuedPoly{fc}, ResidueTable(PrimePower(p, a), g));
        } catch (const std::exception& e) {
            t.check(false, where + ": synthesize threw " + e.what());
            continue;
        }
        t.check(P->truncation() == static_cast<std::uint64_t>(d), where + ": truncation differs from the scan");
        t.check(P->coeffs == c, where + ": coefficients differ from the finite differences");
        for (long n = 0; n <= d; ++n) {
            const long ord = oracle::ord_by_division(c[n], p);
            t.check(ord < 0 || ord >= bd.M(n, l), where + ": ord_p(c_n) < M_n at n=" + std::to_string(n));
        }
        const BigInt mod = big_pow(p, b);
        for (long q = -25; q <= 25; ++q) {
            for (long r = 0; r < m; ++r) {
                BigInt Px = oracle::eval_binomial_basis(c, BigInt(m * q + r));
                BigInt want = oracle::eval_binomial_basis(fc, BigInt(q)) * g[r];
                t.check(divides(mod, BigInt(Px - want)),
                        where + ": congruence fails at q=" + std::to_string(q) + " r=" + std::to_string(r));
            }
        }
        auto rep = verify_theorem11(*P, IntegerValuedPoly{fc}, ResidueTable(PrimePower(p, a), g), -25, 25);
        t.check(rep.ok && rep.checked == static_cast<std::uint64_t>(51 * m), where + ": verify_theorem11 failed");
    }
    return t;
}

Tally wilson() {
    Tally t;
    std::mt19937_64 rng(1301);
    std::uniform_int_distribution<long> entry(-40, 40);
    for (int inst = 0; inst < 100; ++inst) {
        const long p = uniform(rng, 0, 1) ? 3 : 2;
        const long a = uniform(rng, 1, 2);
        const long b = uniform(rng, 1, 3);
        const long m = ipow(p, a);
        std::vector<BigInt> g;
        for (long k = 0; k < m; ++k) g.emplace_back(entry(rng));
        const std::string where = "table " + std::to_string(inst);
        std::optional<NewtonPoly> W;
        try {
            W = wilson_lemma(ResidueTable(PrimePower(p, a), g), b);
        } catch (const std::exception& e) {
            t.check(false, where + ": wilson_lemma threw " + e.what());
            continue;
        }
        const long limit = b * (m - m / p) + ipow(p, a - 1);
        t.check(static_cast<long>(W->truncation()) < limit, where + ": degree not below b phi(p^a) + p^(a-1)");
        const BigInt mod = big_pow(p, b);
        for (long x = -60; x <= 60; ++x) {
            BigInt v = oracle::eval_binomial_basis(W->coeffs, BigInt(x));
            t.check(divides(mod, BigInt(v - g[residue(BigInt(x), BigInt(m)).get_ui()])),
                    where + ": P(x) != g(x mod p^a) at x=" + std::to_string(x));
        }
    }
    return t;
}

Tally newton() {
    Tally t;
    std::mt19937_64 rng(1401);
    for (int inst = 0; inst < 500; ++inst) {
        const unsigned deg = uniform(rng, 0, 6);
        const unsigned d = uniform(rng, 0, 6);
        const auto mono = random_coeffs(rng, deg + 1, 12);
        const long den = uniform(rng, 1, 6);
        const long num = static_cast<long>(uniform(rng, 0, 80)) - 40;
        const Rational xc = frac(num, den);
        auto f = [&](const Rational& y) {
            Rational acc = 0, pw = 1;
            for (const auto& cf : mono) {
                acc += Rational(cf) * pw;
                pw *= y;
            }
            return acc;
        };
        std::vector<BigInt> values;
        for (unsigned k = 0; k <= d; ++k) values.push_back(f(Rational(k)).get_num());
        Rational expected = f(xc);
        for (unsigned k = 0; k <= d; ++k) {
            BigInt delta = 0;
            for (unsigned i = 0; i <= k; ++i) {
                BigInt term = oracle::binom(static_cast<long>(k), i) * values[i];
                delta += ((k - i) % 2 == 0) ? term : BigInt(-term);
            }
            Rational choose = 1;
            for (unsigned i = 0; i < k; ++i) choose *= (xc - Rational(i)) / Rational(i + 1);
            expected -= Rational(delta) * choose;
        }
        const Rational R = newton_remainder(values, xc, f(xc), d);
        const std::string where = "case " + std::to_string(inst);
        t.check(R == expected, where + ": determinant remainder differs from f(x) minus the Newton sum");
        if (deg <= d) t.check(R == 0, where + ": remainder nonzero with deg f <= d");
    }
    return t;
}

// The weighted-system hypothesis rebuilt from its formula.
Rational rhs_16(const CongruenceSystem& sys) {
    const long p = sys.p;
    Rational lead = 0, tail = 0;
    for (const auto& c : sys.constraints) {
        const long pa = ipow(p, c.a);
        const long phi = c.a == 0 ? 1 : pa - pa / p;
        const long d = total_deg(c.f);
        lead = std::max(lead, frac(d * phi, p - 1));
        const long l = c.F.coeffs.empty() ? 0 : static_cast<long>(c.F.coeffs.size()) - 1;
        tail += frac(((l + 1) * pa - (c.a != 0 ? 1 : 0)) * d, p - 1);
    }
    return Rational(static_cast<long>(sys.b) - 1) * std::max(lead, Rational(1)) + tail;
}

BigInt gated_sum(const CongruenceSystem& sys) {
    return oracle::cube_sum(sys.p, sys.n_vars, [&](const std::vector<long>& x) {
        BigInt prod = 1;
        for (const auto& c : sys.constraints) {
            const BigInt v = oracle::naive_eval(c.f, x);
            const BigInt pa = big_pow(sys.p, c.a);
            if (!divides(pa, v)) return BigInt(0);
            prod *= oracle::eval_binomial_basis(c.F.coeffs, BigInt(v / pa));
        }
        return prod;
    });
}

BigInt zero_count(const std::vector<MultiPoly>& polys, unsigned p, std::size_t n) {
    return oracle::cube_sum(p, n, [&](const std::vector<long>& x) {
        for (const auto& f : polys)
            if (!divides(BigInt(p), oracle::naive_eval(f, x))) return BigInt(0);
        return BigInt(1);
    });
}

constexpr long kOracleCube = 60000;  // largest cube also summed by the naive route

Tally counting_sweeps(EnumerationOptions opts) {
    Tally t;
    std::mt19937_64 rng(1201);
    const auto protect = [&](const std::string& where, const std::function<void()>& body) {
        try {
            body();
        } catch (const TheoremViolation& e) {
            t.check(false, where + ": " + e.what());
        } catch (const std::exception& e) {
            t.check(false, where + ": unexpected " + e.what());
        }
    };

    // anchors
    protect("anchor 4", [&] {
        CongruenceSystem s{2, 2, 3, {Constraint{parse_poly("x1 + x2 + x3", 3), 1, IntegerValuedPoly{{1}}}}};
        auto v = verify_theorem12(s, EvalMode::Exact, opts);
        t.check(v.sum == 4 && gated_sum(s) == 4 && divides(4, v.sum) && v.hypothesis.holds, "anchor N = 4 by 4");
        auto ak = axkatz_prime_verify({s.constraints[0].f}, 2, 2, EvalMode::Exact, opts);
        t.check(ak.sum == 4 && ak.divisible, "anchor Ax-Katz N = 4");
    });
    protect("anchor 8", [&] {
        CongruenceSystem s{2, 1, 4, {Constraint{parse_poly("x1 + x2 + x3 + x4", 4), 1, IntegerValuedPoly{{0, 1}}}}};
        auto v = verify_theorem12(s, EvalMode::Exact, opts);
        t.check(v.sum == 8 && gated_sum(s) == 8 && divides(2, v.sum), "anchor weighted sum 8 by 2");
    });
    protect("anchor 18", [&] {
        auto v = lemma22_verify({parse_poly("x1 + x2", 2)}, {1}, 2, 3, EvalMode::Exact, opts);
        const BigInt direct = oracle::cube_sum(3, 2, [](const std::vector<long>& x) { return BigInt(x[0] + x[1]); });
        t.check(v.sum == 18 && direct == 18 && divides(9, v.sum), "anchor restricted sum 18 by 9");
    });

    // weighted systems: 100 satisfying the hypothesis
    int accepted = 0;
    for (int attempt = 0; accepted < 100 && attempt < 20000; ++attempt) {
        const unsigned p = uniform(rng, 0, 1) ? 3 : 2;
        const std::size_t n = uniform(rng, 1, 12);
        CongruenceSystem sys{p, uniform(rng, 1, 3), n, {}};
        for (unsigned k = 0, m = uniform(rng, 0, 2); k < m; ++k) {
            IntegerValuedPoly F{random_coeffs(rng, uniform(rng, 0, 1) + 1, 4)};
            sys.constraints.push_back(Constraint{nonzero_poly(rng, n, 2, 6), uniform(rng, 0, 2), F});
        }
        const Rational rhs = rhs_16(sys);
        if (!(Rational(static_cast<long>(n)) > rhs)) continue;
        ++accepted;
        const std::string where = "theorem12 system " + std::to_string(accepted);
        protect(where, [&] {
            auto v = verify_theorem12(sys, EvalMode::Modular, opts);
            const BigInt mod = big_pow(p, sys.b);
            t.check(v.hypothesis.holds && v.hypothesis.rhs == rhs, where + ": hypothesis differs");
            t.check(v.divisible && residue(v.sum, mod) == 0, where + ": not divisible by p^b");
            const auto exact = theorem12_sum(sys, EvalMode::Exact, opts);
            t.check(residue(exact.value, mod) == v.sum, where + ": modular and exact disagree");
            if (ipow(p, n) <= kOracleCube) t.check(gated_sum(sys) == exact.value, where + ": naive sum differs");
        });
    }
    t.check(accepted == 100, "could not draw 100 systems satisfying the hypothesis");

    // gate equivalence with F_k = 1, hypothesis or not
    for (int inst = 0; inst < 30; ++inst) {
        const unsigned p = uniform(rng, 0, 1) ? 3 : 2;
        const std::size_t n = uniform(rng, 1, p == 2 ? 10 : 6);
        CongruenceSystem sys{p, 3, n, {}};
        for (unsigned k = 0, m = uniform(rng, 1, 2); k < m; ++k)
            sys.constraints.push_back(Constraint{nonzero_poly(rng, n, 2, 9), uniform(rng, 0, 2), IntegerValuedPoly{{1}}});
        protect("gate", [&] {
            const BigInt direct = oracle::cube_sum(p, n, [&](const std::vector<long>& x) {
                for (const auto& c : sys.constraints)
                    if (!divides(big_pow(p, c.a), oracle::naive_eval(c.f, x))) return BigInt(0);
                return BigInt(1);
            });
            t.check(theorem12_sum(sys, EvalMode::Exact, opts).value == direct, "gated count differs");
        });
    }

    // binomial constraints: 50 systems satisfying the hypothesis
    accepted = 0;
    for (int attempt = 0; accepted < 50 && attempt < 20000; ++attempt) {
        const unsigned p = uniform(rng, 0, 1) ? 3 : 2;
        const std::size_t n = uniform(rng, 1, 12);
        const long a = uniform(rng, 1, 2), b = uniform(rng, 1, 3);
        std::vector<MultiPoly> polys;
        std::vector<std::uint64_t> ls;
        long sum_d = 0, sum_ld = 0, d1 = 0;
        for (unsigned k = 0, m = uniform(rng, 1, 2); k < m; ++k) {
            polys.push_back(nonzero_poly(rng, n, 2, 6));
            ls.push_back(uniform(rng, 0, 1));
            const long d = total_deg(polys.back());
            sum_d += d;
            sum_ld += static_cast<long>(ls.back()) * d;
            d1 = std::max(d1, d);
        }
        const long pa = ipow(p, a);
        const Rational rhs = Rational((b - 1) * d1 * (pa / p)) + frac((pa - 1) * sum_d, p - 1) +
                             frac(pa * sum_ld, p - 1);
        if (!(Rational(static_cast<long>(n)) > rhs) || d1 == 0) continue;
        ++accepted;
        const std::string where = "corollary system " + std::to_string(accepted);
        protect(where, [&] {
            auto v = corollary11_verify(polys, a, b, ls, p, EvalMode::Modular, opts);
            t.check(v.corollary_hypothesis && v.corollary_hypothesis->holds, where + ": hypothesis differs");
            t.check(v.hypothesis.holds && v.divisible, where + ": not divisible by p^b");
            if (ipow(p, n) <= kOracleCube) {
                CongruenceSystem sys{p, static_cast<std::uint64_t>(b), n, {}};
                for (std::size_t k = 0; k < polys.size(); ++k) {
                    std::vector<BigInt> unit(ls[k] + 1, 0);
                    unit[ls[k]] = 1;
                    sys.constraints.push_back(Constraint{polys[k], static_cast<std::uint32_t>(a), IntegerValuedPoly{unit}});
                }
                t.check(residue(gated_sum(sys), big_pow(p, b)) == v.sum, where + ": naive sum differs");
            }
        });
    }
    t.check(accepted == 50, "could not draw 50 corollary systems");

    // Chevalley-Warning and Ax-Katz
    for (int inst = 0; inst < 60; ++inst) {
        const unsigned p = std::array<unsigned, 3>{2, 3, 5}[uniform(rng, 0, 2)];
        const std::size_t n = uniform(rng, 1, p == 5 ? 6 : (p == 3 ? 9 : 12));
        const std::uint64_t b = uniform(rng, 1, 3);
        std::vector<MultiPoly> polys;
        long sum_d = 0, d1 = 0;
        for (unsigned k = 0, m = uniform(rng, 1, 2); k < m; ++k) {
            polys.push_back(nonzero_poly(rng, n, 2, 6));
            sum_d += total_deg(polys.back());
            d1 = std::max<long>(d1, total_deg(polys.back()));
        }
        const std::string where = "prime-field system " + std::to_string(inst);
        protect(where, [&] {
            const auto cw = chevalley_warning_verify(polys, p, EvalMode::Modular, opts);
            const auto ak = axkatz_prime_verify(polys, b, p, EvalMode::Modular, opts);
            const auto co = corollary11_verify(polys, 1, b, std::vector<std::uint64_t>(polys.size(), 0), p,
                                               EvalMode::Exact, opts);
            if (ipow(p, n) <= kOracleCube) t.check(zero_count(polys, p, n) == ak.sum, where + ": naive count differs");
            t.check(cw.sum == ak.sum && co.sum == ak.sum, where + ": verifiers disagree on N");
            if (static_cast<long>(n) > sum_d) t.check(divides(BigInt(p), cw.sum), where + ": p does not divide N");
            if (d1 >= 1 && static_cast<long>(n) > static_cast<long>(b - 1) * d1 + sum_d)
                t.check(divides(big_pow(p, b), ak.sum), where + ": p^b does not divide N");
        });
    }

    // restricted exponents: every c with sum j_k d_k < (n - c + 1)(p - 1)
    for (unsigned p : {2u, 3u}) {
        for (std::size_t n = 1; n <= 6; ++n) {
            for (int s = 0; s < 8; ++s) {
                std::vector<MultiPoly> polys;
                std::vector<std::uint64_t> js;
                long deg = 0;
                for (unsigned k = 0, m = uniform(rng, 1, 2); k < m; ++k) {
                    polys.push_back(oracle::random_poly(rng, n, 2, 6, 4));
                    js.push_back(uniform(rng, 0, 2));
                    deg += static_cast<long>(js.back()) * (polys.back().is_zero() ? 0 : total_deg(polys.back()));
                }
                const BigInt direct = oracle::cube_sum(p, n, [&](const std::vector<long>& x) {
                    BigInt prod = 1;
                    for (std::size_t k = 0; k < polys.size(); ++k) prod *= oracle::binom(oracle::naive_eval(polys[k], x), js[k]);
                    return prod;
                });
                for (std::uint64_t c = 0; c <= n + 1; ++c) {
                    if (!(deg < (static_cast<long>(n) - static_cast<long>(c) + 1) * static_cast<long>(p - 1))) continue;
                    const std::string where = "lemma22 p=" + std::to_string(p) + " n=" + std::to_string(n) +
                                              " c=" + std::to_string(c);
                    protect(where, [&] {
                        auto v = lemma22_verify(polys, js, c, p, EvalMode::Modular, opts);
                        t.check(v.hypothesis.holds && v.divisible, where + ": not divisible by p^c");
                        t.check(divides(big_pow(p, c), direct), where + ": naive sum not divisible");
                        t.check(residue(direct, big_pow(p, c)) == v.sum, where + ": residue differs");
                    });
                }
            }
        }
    }
    return t;
}

struct Perf {
    Tally tally;
    double modular_seconds = 0;
};

Perf determinism() {
    Perf out;
    auto& t = out.tally;
    const std::size_t n = 14;
    CongruenceSystem sys{3, 2, n, {}};
    sys.constraints.push_back(Constraint{
        parse_poly("x1^2 + x2^2 + x3^2 + x4^2 + x5^2 + x6^2 + x7^2 + x8*x9 + x10*x11 + x12*x13 + x14", n), 1,
        IntegerValuedPoly{{1, 1}}});
    sys.constraints.push_back(Constraint{parse_poly("x1*x14 - x2 + 2*x7^2", n), 0, IntegerValuedPoly{{2, 0, 1}}});
    auto run = [&](unsigned workers, EvalMode mode) {
        EnumerationOptions o;
        o.workers = workers;
        return theorem12_sum(sys, mode, o);
    };
    const auto start = Clock::now();
    const auto four = run(4, EvalMode::Modular);
    out.modular_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    t.check(out.modular_seconds < 30.0, "modular run with 4 workers took " + std::to_string(out.modular_seconds) + " s");
    const auto one = run(1, EvalMode::Modular);
    const auto eight = run(8, EvalMode::Modular);
    t.check(one.value == eight.value && one.value == four.value, "1, 4 and 8 workers disagree");
    const auto exact = run(4, EvalMode::Exact);
    t.check(residue(exact.value, big_pow(3, 2)) == four.value, "exact mode disagrees with modular mode mod p^b");
    t.check(verify_theorem12(sys, EvalMode::Modular).divisible || !hypothesis_16(sys).holds,
            "divisibility verdict inconsistent");
    return out;
}

int report(int id, const std::string& title, const Tally& t, double seconds, double limit) {
    const bool pass = t.failures == 0 && seconds < limit;
    std::printf("[%s] criterion %d: %s: %llu checks, %llu failures (%.2f s, limit %.0f s)\n", pass ? "PASS" : "FAIL",
                id, title.c_str(), static_cast<unsigned long long>(t.cases),
                static_cast<unsigned long long>(t.failures), seconds, limit);
    if (t.failures) std::printf("         first failure: %s\n", t.first.c_str());
    std::fflush(stdout);
    return pass ? 0 : 1;
}

template <class F>
int timed(int id, const std::string& title, double limit, F body) {
    const auto start = Clock::now();
    const Tally t = body();
    return report(id, title, t, std::chrono::duration<double>(Clock::now() - start).count(), limit);
}

}  // namespace

int main() {
    int failed = 0;
    failed += timed(1, "valuation grid, ord >= max(wan, factorial)", 60, lemma21_grid);
    failed += timed(2, "Fleck and Weisman specializations, spot sums 4 and 16", 60, fleck_weisman);
    failed += timed(3, "GKP identity, n <= 25, |r| <= 25, l <= 10", 10, gkp);
    failed += timed(4, "synthesis on 200 instances, q in [-25, 25]", 120, theorem11);
    failed += timed(5, "Wilson degree bound on 100 tables", 60, wilson);
    failed += timed(6, "Newton-Gregory determinant remainder, 500 cases", 60, newton);
    EnumerationOptions four;
    four.workers = 4;
    failed += timed(7, "weighted, binomial, Chevalley-Warning, Ax-Katz, restricted sweeps", 300,
                    [&] { return counting_sweeps(four); });
    const auto start = Clock::now();
    const Perf perf = determinism();
    const double total = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("         p=3, n=14 modular sum with 4 workers: %.2f s\n", perf.modular_seconds);
    failed += report(8, "p=3 n=14 cube: 1 vs 8 workers, modular vs exact", perf.tally, total, 300);
    std::printf("%s: %d of 8 criteria failed\n", failed ? "FAIL" : "PASS", failed);
    return failed ? 1 : 0;
}
