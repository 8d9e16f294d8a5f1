#include <fstream>
#include <functional>
#include <random>

#include "commands.hpp"
#include "fleckforge/fleck.hpp"

namespace fleckforge::cli {
namespace {

using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;

std::uint64_t pick(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

long spread(Rng& rng, long bound) { return std::uniform_int_distribution<long>(-bound, bound)(rng); }

template <class T>
T choose(Rng& rng, std::initializer_list<T> xs) {
    return *(xs.begin() + pick(rng, 0, xs.size() - 1));
}

IntegerValuedPoly random_ivp(Rng& rng, std::uint64_t l, long bound) {
    IntegerValuedPoly f;
    for (std::uint64_t j = 0; j <= l; ++j) f.coeffs.emplace_back(spread(rng, bound));
    return f;
}

/// Nonzero polynomial of total degree <= max_deg with small coefficients.
MultiPoly random_poly(Rng& rng, std::size_t n, std::uint32_t max_deg, long bound) {
    MultiPoly f(n);
    const std::uint64_t terms = pick(rng, 1, 4);
    for (std::uint64_t t = 0; t < terms; ++t) {
        Exponents e(n, 0);
        const std::uint32_t deg = static_cast<std::uint32_t>(pick(rng, 0, max_deg));
        for (std::uint32_t k = 0; k < deg && n > 0; ++k) ++e[pick(rng, 0, n - 1)];
        f.add_term(e, BigInt(spread(rng, bound)));
    }
    if (f.is_zero()) f = n > 0 ? MultiPoly::variable(n, 0) : MultiPoly::constant(0, 1);
    return f;
}

Json poly_texts(const std::vector<MultiPoly>& polys) {
    Json out = Json::array();
    for (const auto& f : polys) out.push_back(render(f));
    return out;
}

struct Check {
    Json instance;
    bool ok = true;
    std::string detail{};
};

Check sweep_lemma21(Rng& rng) {
    const std::uint32_t p = choose<std::uint32_t>(rng, {2, 3, 5, 7});
    const std::uint32_t a = static_cast<std::uint32_t>(pick(rng, 0, 2));
    const std::uint64_t n = pick(rng, 0, 60);
    const long r = spread(rng, static_cast<long>(n));
    auto f = random_ivp(rng, pick(rng, 0, 3), 9);
    Check c{Json{{"p", p}, {"a", a}, {"n", n}, {"r", r}, {"f", strings(f.coeffs)}}};
    const PrimePower pp(p, a);
    auto rep = check_lemma21(n, BigInt(r), pp, f);
    c.ok = rep.all_satisfied();
    if (!c.ok) c.detail = "valuation " + rep.valuation.to_string() + " below a bound";
    // the residue classes partition 0..n
    BigInt total = 0;
    for (unsigned long k = 0; k < pp.value().get_ui(); ++k)
        total += restricted_sum(n, BigInt(k), pp, IntegerValuedPoly{{BigInt(1)}});
    if (total != (n == 0 ? 1 : 0)) {
        c.ok = false;
        c.detail = "partition identity gives " + total.get_str();
    }
    return c;
}

Check sweep_gkp(Rng& rng) {
    const std::uint64_t n = pick(rng, 0, 25);
    const long r = spread(rng, 25);
    const std::uint64_t l = pick(rng, 0, 10);
    Check c{Json{{"n", n}, {"r", r}, {"l", l}}};
    c.ok = gkp_identity_check(n, BigInt(r), l);
    if (!c.ok) c.detail = "identity fails";
    return c;
}

Check sweep_theorem11(Rng& rng) {
    const std::uint32_t p = choose<std::uint32_t>(rng, {2, 3, 5});
    const std::uint32_t a = static_cast<std::uint32_t>(pick(rng, 0, 2));
    const std::uint64_t b = pick(rng, 1, 3);
    const PrimePower pp(p, a);
    auto f = random_ivp(rng, pick(rng, 0, 2), 50);
    std::vector<BigInt> table;
    for (unsigned long k = 0; k < pp.value().get_ui(); ++k) table.emplace_back(spread(rng, 50));
    Check c{Json{{"p", p}, {"a", a}, {"b", b}, {"f", strings(f.coeffs)}, {"g", strings(table)}}};
    const ResidueTable g(pp, table);
    const NewtonPoly P = synthesize(b, f, g);
    const auto rep = verify_theorem11(P, f, g);
    c.ok = rep.ok;
    if (!c.ok) c.detail = "congruence fails at q = " + rep.counterexample->q.get_str();
    // P is periodic mod p^b with period p^N
    std::uint64_t top = std::max<std::uint64_t>(P.truncation(), f.degree_bound());
    std::int64_t N = static_cast<std::int64_t>(b);
    std::int64_t extra = 0;
    for (std::uint64_t k = 1; k <= top; ++k)
        extra = std::max(extra, ord_int(BigInt(static_cast<unsigned long>(k)), p).value());
    const BigInt period = pow(p, static_cast<std::uint64_t>(N + extra));
    const BigInt mod = P.modulus();
    for (long x = -100; x <= 100 && c.ok; x += 13) {
        if (mod_floor(eval_newton(P, BigInt(BigInt(x) + period)) - eval_newton(P, BigInt(x)), mod) != 0) {
            c.ok = false;
            c.detail = "periodicity fails at x = " + std::to_string(x);
        }
    }
    return c;
}

Check sweep_wilson(Rng& rng) {
    const std::uint32_t p = choose<std::uint32_t>(rng, {2, 3});
    const std::uint32_t a = static_cast<std::uint32_t>(pick(rng, 1, 2));
    const std::uint64_t b = pick(rng, 1, 3);
    const PrimePower pp(p, a);
    std::vector<BigInt> table;
    for (unsigned long k = 0; k < pp.value().get_ui(); ++k) table.emplace_back(spread(rng, 30));
    Check c{Json{{"p", p}, {"a", a}, {"b", b}, {"table", strings(table)}}};
    const NewtonPoly W = wilson_lemma(ResidueTable(pp, table), b);
    c.ok = BigInt(static_cast<unsigned long>(W.truncation())) < wilson_degree_limit(pp, b);
    if (!c.ok) c.detail = "degree bound fails";
    return c;
}

Check sweep_newton(Rng& rng) {
    const std::uint64_t deg = pick(rng, 0, 5);
    const std::uint64_t d = pick(rng, 0, 5);
    std::vector<BigInt> mono;
    for (std::uint64_t k = 0; k <= deg; ++k) mono.emplace_back(spread(rng, 9));
    const Rational x = make_rational(BigInt(spread(rng, 20)), BigInt(static_cast<unsigned long>(pick(rng, 1, 5))));
    Check c{Json{{"monomial_coeffs", strings(mono)}, {"d", d}, {"x", rational_str(x)}}};
    auto eval = [&](const Rational& t) {
        Rational acc = 0;
        for (auto it = mono.rbegin(); it != mono.rend(); ++it) acc = acc * t + Rational(*it);
        return acc;
    };
    std::vector<BigInt> values;
    for (std::uint64_t k = 0; k <= d; ++k) values.push_back(eval(Rational(BigInt(static_cast<unsigned long>(k)))).get_num());
    const Rational fx = eval(x);
    const Rational R = newton_remainder(values, x, fx, d);
    const auto diffs = forward_differences(values);
    Rational expected = fx;
    for (std::uint64_t k = 0; k <= d; ++k) expected -= Rational(diffs[k]) * binom_rational(x, k);
    c.ok = R == expected && (deg > d || R == 0);
    if (!c.ok) c.detail = "remainder " + rational_str(R) + ", expected " + rational_str(expected);
    return c;
}

struct CountSweeps {
    EnumerationOptions opts;

    Check theorem12(Rng& rng) const {
        const std::uint32_t p = choose<std::uint32_t>(rng, {2, 3});
        const std::size_t n = pick(rng, 1, p == 2 ? 12 : 8);
        CongruenceSystem sys{p, pick(rng, 1, 3), n, {}};
        Json fs = Json::array();
        for (std::uint64_t k = 0, m = pick(rng, 0, 2); k < m; ++k) {
            Constraint con{random_poly(rng, n, 2, 5), static_cast<std::uint32_t>(pick(rng, 0, 2)),
                           random_ivp(rng, pick(rng, 0, 1), 3)};
            fs.push_back(Json{{"f", render(con.f)}, {"a", con.a}, {"F", strings(con.F.coeffs)}});
            sys.constraints.push_back(std::move(con));
        }
        Check c{Json{{"p", p}, {"b", sys.b}, {"n", n}, {"constraints", fs}}};
        const auto v = verify_theorem12(sys, EvalMode::Modular, opts);
        c.instance["hypothesis"] = v.hypothesis.holds;
        if (n <= 6) {
            const auto exact = theorem12_sum(sys, EvalMode::Exact, opts);
            if (mod_floor(exact.value, v.modulus) != v.sum) {
                c.ok = false;
                c.detail = "modular and exact sums disagree";
            }
        }
        return c;
    }

    Check corollary11(Rng& rng) const {
        const std::uint32_t p = choose<std::uint32_t>(rng, {2, 3});
        const std::size_t n = pick(rng, 1, p == 2 ? 12 : 8);
        const std::uint32_t a = static_cast<std::uint32_t>(pick(rng, 1, 2));
        const std::uint64_t b = pick(rng, 1, 3);
        std::vector<MultiPoly> polys;
        std::vector<std::uint64_t> ls;
        for (std::uint64_t k = 0, m = pick(rng, 1, 2); k < m; ++k) {
            polys.push_back(random_poly(rng, n, 2, 5));
            ls.push_back(pick(rng, 0, 1));
        }
        Check c{Json{{"p", p}, {"a", a}, {"b", b}, {"n", n}, {"polynomials", poly_texts(polys)}, {"l", ls}}};
        const auto v = corollary11_verify(polys, a, b, ls, p, EvalMode::Modular, opts);
        c.instance["hypothesis"] = v.corollary_hypothesis->holds;
        return c;
    }

    Check prime_field(Rng& rng) const {
        const std::uint32_t p = choose<std::uint32_t>(rng, {2, 3, 5});
        const std::size_t n = pick(rng, 1, p == 5 ? 5 : 8);
        const std::uint64_t b = pick(rng, 1, 3);
        std::vector<MultiPoly> polys;
        for (std::uint64_t k = 0, m = pick(rng, 1, 2); k < m; ++k) polys.push_back(random_poly(rng, n, 2, 6));
        Check c{Json{{"p", p}, {"b", b}, {"n", n}, {"polynomials", poly_texts(polys)}}};
        const auto cw = chevalley_warning_verify(polys, p, EvalMode::Modular, opts);
        const auto ak = axkatz_prime_verify(polys, b, p, EvalMode::Modular, opts);
        const auto co = corollary11_verify(polys, 1, b, std::vector<std::uint64_t>(polys.size(), 0), p,
                                           EvalMode::Modular, opts);
        if (cw.sum != ak.sum || mod_floor(ak.sum, ak.modulus) != co.sum) {
            c.ok = false;
            c.detail = "zero counts disagree between verifiers";
        }
        return c;
    }

    Check lemma22(Rng& rng) const {
        const std::uint32_t p = choose<std::uint32_t>(rng, {2, 3});
        const std::size_t n = pick(rng, 1, 6);
        std::vector<MultiPoly> polys;
        std::vector<std::uint64_t> js;
        for (std::uint64_t k = 0, m = pick(rng, 1, 2); k < m; ++k) {
            polys.push_back(random_poly(rng, n, 2, 6));
            js.push_back(pick(rng, 0, 2));
        }
        const std::uint64_t cc = pick(rng, 0, n);
        Check c{Json{{"p", p}, {"n", n}, {"polynomials", poly_texts(polys)}, {"j", js}, {"c", cc}}};
        const auto v = lemma22_verify(polys, js, cc, p, EvalMode::Modular, opts);
        c.instance["hypothesis"] = v.hypothesis.holds;
        return c;
    }
};

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 0xf];
    return s;
}

}  // namespace

Outcome run_sweep(const SweepRequest& req, const RunOptions& opts) {
    const auto start = Clock::now();
    Rng rng(req.seed);
    CountSweeps counting;
    if (opts.workers) counting.opts.workers = *opts.workers;

    const std::vector<std::pair<std::string, std::function<Check(Rng&)>>> sweeps = {
        {"lemma21", sweep_lemma21},
        {"gkp", sweep_gkp},
        {"theorem11", sweep_theorem11},
        {"wilson", sweep_wilson},
        {"newton_remainder", sweep_newton},
        {"theorem12", [&](Rng& r) { return counting.theorem12(r); }},
        {"corollary11", [&](Rng& r) { return counting.corollary11(r); }},
        {"chevalley_axkatz", [&](Rng& r) { return counting.prime_field(r); }},
        {"lemma22", [&](Rng& r) { return counting.lemma22(r); }},
    };

    Json tally;
    for (const auto& [name, _] : sweeps) tally[name] = Json{{"instances", 0}, {"violations", 0}};
    Json failures = Json::array();
    std::uint64_t digest = 0xcbf29ce484222325ull;  // FNV-1a over the log lines
    std::ofstream log;
    if (req.log_path) {
        log.open(*req.log_path);
        if (!log) throw UsageError("cannot write log file '" + *req.log_path + "'");
    }

    std::uint64_t round = 0;
    bool budget_hit = false;
    for (; round < req.rounds; ++round) {
        if (Clock::now() - start > req.budget) {
            budget_hit = true;
            break;
        }
        for (const auto& [name, run] : sweeps) {
            Check c;
            try {
                c = run(rng);
            } catch (const TheoremViolation& e) {
                c.ok = false;
                c.detail = e.what();
            } catch (const InternalError& e) {
                c.ok = false;
                c.detail = e.what();
            }
            Json line{{"round", round}, {"sweep", name}, {"instance", c.instance}, {"ok", c.ok}};
            const std::string text = line.dump() + "\n";
            for (unsigned char ch : text) digest = (digest ^ ch) * 0x100000001b3ull;
            if (log) log << text;
            tally[name]["instances"] = tally[name]["instances"].get<std::uint64_t>() + 1;
            if (!c.ok) {
                tally[name]["violations"] = tally[name]["violations"].get<std::uint64_t>() + 1;
                if (failures.size() < 10) failures.push_back(Json{{"round", round}, {"sweep", name}, {"detail", c.detail}});
            }
        }
    }

    Outcome out;
    Json& r = out.report;
    r["command"] = "sweep";
    r["seed"] = std::to_string(req.seed);
    r["rounds_requested"] = req.rounds;
    r["rounds_completed"] = round;
    r["budget_exhausted"] = budget_hit;
    r["sweeps"] = tally;
    r["failures"] = failures;
    r["log_digest"] = "fnv1a64:" + hex64(digest);
    r["verdict"] = failures.empty() ? "confirmed" : "violation";
    out.exit_code = failures.empty() ? kOk : kViolation;
    if (opts.timings) {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
        r["timings"] = Json{{"wall_ms", static_cast<double>(ms)}};
    }
    return out;
}

}  // namespace fleckforge::cli
