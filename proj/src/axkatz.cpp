#include "fleckforge/axkatz.hpp"

#include <utility>

#include "fleckforge/wilson.hpp"

namespace fleckforge {
namespace {

// Residue tables above this many entries send the computation down the exact route.
constexpr std::uint64_t kMaxTable = 1u << 22;

std::uint64_t degree_or_zero(const MultiPoly& f) { return f.is_zero() ? 0 : total_degree(f); }

std::size_t common_vars(const std::vector<MultiPoly>& polys) {
    if (polys.empty()) throw std::invalid_argument("at least one polynomial is required");
    for (const auto& f : polys) {
        if (f.n_vars() != polys.front().n_vars())
            throw std::invalid_argument("polynomials have different variable counts");
    }
    return polys.front().n_vars();
}

/// p^e if it fits below 2^63.
std::optional<std::uint64_t> small_power(std::uint32_t p, std::uint64_t e) {
    BigInt v = pow(p, e);
    if (v >= BigInt(1) << 63) return std::nullopt;
    return v.get_ui();
}

template <class Arith, class Policy>
class ProductVisitor {
public:
    ProductVisitor(std::vector<IncrementalPoly<Arith>> polys, const Policy& policy)
        : polys_(std::move(polys)), policy_(policy), acc_(policy.zero()) {}

    void start(std::span<const std::uint32_t> point) {
        for (auto& q : polys_) q.start(point);
        accumulate();
    }
    void step(std::span<const std::uint32_t> point, std::size_t j) {
        for (auto& q : polys_) q.step(point, j);
        accumulate();
    }
    BigInt take() { return policy_.finish(std::exchange(acc_, policy_.zero())); }

private:
    void accumulate() {
        auto prod = policy_.one();
        for (std::size_t k = 0; k < polys_.size(); ++k) {
            if (!policy_.factor(k, polys_[k].value(), prod)) return;
        }
        policy_.add(acc_, prod);
    }

    std::vector<IncrementalPoly<Arith>> polys_;
    const Policy& policy_;
    typename Policy::acc_type acc_;
};

template <class Arith, class Policy>
BigInt fold_products(const CubeSpec& cube, const std::vector<MultiPoly>& polys,
                     const std::vector<Arith>& ariths, const Policy& policy,
                     const EnumerationOptions& opts) {
    std::vector<IncrementalPoly<Arith>> prototype;
    prototype.reserve(polys.size());
    for (std::size_t k = 0; k < polys.size(); ++k) prototype.emplace_back(polys[k], cube.p, ariths[k]);
    return cube_fold_visit(
        cube, [&] { return ProductVisitor<Arith, Policy>(prototype, policy); }, opts);
}

/// Products of table lookups reduced mod `mod`; a gate divisor of 0 means no gate.
struct ModularTablePolicy {
    using acc_type = std::uint64_t;
    std::uint64_t mod;
    std::vector<std::uint64_t> gate;
    std::vector<std::vector<std::uint64_t>> tables;

    acc_type zero() const { return 0; }
    acc_type one() const { return 1 % mod; }
    bool factor(std::size_t k, std::uint64_t v, acc_type& prod) const {
        if (gate[k] > 1) {
            if (v % gate[k] != 0) return false;
            v /= gate[k];
        }
        prod = static_cast<acc_type>(static_cast<unsigned __int128>(prod) * tables[k][v] % mod);
        return true;
    }
    void add(acc_type& acc, acc_type prod) const {
        acc += prod;
        if (acc >= mod) acc -= mod;
    }
    BigInt finish(acc_type acc) const { return BigInt(static_cast<unsigned long>(acc)); }
};

struct ExactWeightPolicy {
    using acc_type = BigInt;
    std::vector<BigInt> gate;
    std::vector<IntegerValuedPoly> weights;

    acc_type zero() const { return 0; }
    acc_type one() const { return 1; }
    bool factor(std::size_t k, const BigInt& v, acc_type& prod) const {
        if (!mpz_divisible_p(v.get_mpz_t(), gate[k].get_mpz_t())) return false;
        BigInt q;
        mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), gate[k].get_mpz_t());
        prod *= eval_ivp(weights[k], q);
        return true;
    }
    void add(acc_type& acc, const acc_type& prod) const { acc += prod; }
    BigInt finish(acc_type acc) const { return acc; }
};

struct ExactBinomialPolicy {
    using acc_type = BigInt;
    std::vector<std::uint64_t> js;

    acc_type zero() const { return 0; }
    acc_type one() const { return 1; }
    bool factor(std::size_t k, const BigInt& v, acc_type& prod) const {
        prod *= binom_int(v, js[k]);
        return true;
    }
    void add(acc_type& acc, const acc_type& prod) const { acc += prod; }
    BigInt finish(acc_type acc) const { return acc; }
};

struct ZeroCountPolicy {
    using acc_type = std::uint64_t;
    BigInt p;

    acc_type zero() const { return 0; }
    acc_type one() const { return 1; }
    bool factor(std::size_t, std::uint64_t v, acc_type&) const { return v == 0; }
    bool factor(std::size_t, const BigInt& v, acc_type&) const {
        return mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t()) != 0;
    }
    void add(acc_type& acc, acc_type) const { ++acc; }
    BigInt finish(acc_type acc) const { return BigInt(static_cast<unsigned long>(acc)); }
};

std::vector<MultiPoly> constraint_polys(const CongruenceSystem& sys) {
    std::vector<MultiPoly> polys;
    for (const auto& c : sys.constraints) polys.push_back(c.f);
    return polys;
}

BigInt theorem12_exact(const CongruenceSystem& sys, const CubeSpec& cube,
                       const EnumerationOptions& opts) {
    ExactWeightPolicy policy;
    for (const auto& c : sys.constraints) {
        policy.gate.push_back(pow(sys.p, c.a));
        policy.weights.push_back(c.F);
    }
    std::vector<ExactArith> ariths(sys.constraints.size());
    return fold_products(cube, constraint_polys(sys), ariths, policy, opts);
}

std::optional<BigInt> theorem12_modular(const CongruenceSystem& sys, const CubeSpec& cube,
                                        const EnumerationOptions& opts) {
    auto pb = small_power(sys.p, sys.b);
    if (!pb) return std::nullopt;
    ModularTablePolicy policy{*pb, {}, {}};
    std::vector<ModArith> ariths;
    for (const auto& c : sys.constraints) {
        // f_k mod p^{a_k + b + ord_p(l_k!)} pins F_k(f_k / p^{a_k}) mod p^b
        const std::uint64_t guard =
            sys.b + static_cast<std::uint64_t>(
                        ord_factorial(BigInt(static_cast<unsigned long>(c.F.degree_bound())), sys.p));
        auto table_size = small_power(sys.p, guard);
        auto mod = small_power(sys.p, guard + c.a);
        if (!table_size || !mod || *table_size > kMaxTable) return std::nullopt;
        std::vector<std::uint64_t> table(*table_size);
        const BigInt big_pb = static_cast<unsigned long>(*pb);
        for (std::uint64_t q = 0; q < *table_size; ++q) {
            table[q] = mod_floor(eval_ivp(c.F, BigInt(static_cast<unsigned long>(q))), big_pb).get_ui();
        }
        policy.gate.push_back(pow(sys.p, c.a).get_ui());
        policy.tables.push_back(std::move(table));
        ariths.push_back(ModArith{*mod});
    }
    // chunk partials are merged as big integers
    BigInt partial = fold_products(cube, constraint_polys(sys), ariths, policy, opts);
    return mod_floor(partial, BigInt(static_cast<unsigned long>(*pb)));
}

bool reduced_divisible(const BigInt& sum, const BigInt& modulus) {
    return mod_floor(sum, modulus) == 0;
}

void raise_if_violated(const DivisibilityVerdict& v) {
    if (v.hypothesis.holds && !v.divisible) throw TheoremViolation(v);
}

Hypothesis make_hypothesis(std::size_t n, const Rational& rhs) {
    Hypothesis h;
    h.rhs = rhs;
    h.margin = Rational(BigInt(static_cast<unsigned long>(n))) - rhs;
    h.holds = h.margin > 0;
    return h;
}

}  // namespace

void CongruenceSystem::validate() const {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (b == 0) throw std::invalid_argument("b must be positive");
    for (const auto& c : constraints) {
        if (c.f.n_vars() != n_vars) throw std::invalid_argument("constraint has wrong variable count");
        if (c.f.is_zero()) throw std::invalid_argument("constraint polynomials must be nonzero");
    }
}

std::optional<std::size_t> CongruenceSystem::leading_index() const {
    std::optional<std::size_t> best;
    BigInt best_weight;
    for (std::size_t k = 0; k < constraints.size(); ++k) {
        BigInt w = BigInt(static_cast<unsigned long>(total_degree(constraints[k].f))) *
                   PrimePower(p, constraints[k].a).totient();
        if (!best || w > best_weight) {
            best = k;
            best_weight = w;
        }
    }
    return best;
}

Hypothesis hypothesis_16(const CongruenceSystem& sys) {
    sys.validate();
    const Rational pm1(BigInt(static_cast<unsigned long>(sys.p - 1)));
    Rational lead = 0;
    if (auto k = sys.leading_index()) {
        const auto& c = sys.constraints[*k];
        lead = Rational(BigInt(static_cast<unsigned long>(total_degree(c.f))) *
                        PrimePower(sys.p, c.a).totient()) / pm1;
    }
    Rational rhs = Rational(BigInt(static_cast<unsigned long>(sys.b - 1))) * std::max(lead, Rational(1));
    Rational tail = 0;
    for (const auto& c : sys.constraints) {
        BigInt weight = BigInt(static_cast<unsigned long>(c.F.degree_bound() + 1)) * pow(sys.p, c.a);
        if (c.a != 0) weight -= 1;
        tail += Rational(weight * static_cast<unsigned long>(total_degree(c.f)));
    }
    rhs += tail / pm1;
    return make_hypothesis(sys.n_vars, rhs);
}

WeightedSum theorem12_sum(const CongruenceSystem& sys, EvalMode mode, const EnumerationOptions& opts) {
    sys.validate();
    const CubeSpec cube{sys.p, sys.n_vars};
    check_ceiling(cube, opts.ceiling);
    if (mode == EvalMode::Modular) {
        if (auto v = theorem12_modular(sys, cube, opts)) return {*v, false};
    }
    return {theorem12_exact(sys, cube, opts), true};
}

DivisibilityVerdict verify_theorem12(const CongruenceSystem& sys, EvalMode mode,
                                     const EnumerationOptions& opts) {
    DivisibilityVerdict v;
    v.statement = "theorem12";
    v.hypothesis = hypothesis_16(sys);
    v.modulus = pow(sys.p, sys.b);
    WeightedSum s = theorem12_sum(sys, mode, opts);
    v.sum = std::move(s.value);
    v.sum_exact = s.exact;
    v.divisible = reduced_divisible(v.sum, v.modulus);
    raise_if_violated(v);
    return v;
}

Hypothesis hypothesis_18(const std::vector<MultiPoly>& polys, std::uint32_t a, std::uint64_t b,
                         const std::vector<std::uint64_t>& ls, std::uint32_t p) {
    const std::size_t n = common_vars(polys);
    if (a == 0) throw std::invalid_argument("corollary requires a >= 1");
    if (ls.size() != polys.size()) throw std::invalid_argument("need one l_k per polynomial");
    std::uint64_t d_max = 0;
    BigInt sum_d = 0;
    BigInt sum_ld = 0;
    for (std::size_t k = 0; k < polys.size(); ++k) {
        const std::uint64_t d = total_degree(polys[k]);
        d_max = std::max(d_max, d);
        sum_d += static_cast<unsigned long>(d);
        sum_ld += BigInt(static_cast<unsigned long>(ls[k])) * static_cast<unsigned long>(d);
    }
    const BigInt pa = pow(p, a);
    const BigInt pm1 = static_cast<unsigned long>(p - 1);
    Rational rhs = Rational(BigInt(static_cast<unsigned long>(b - 1)) *
                            static_cast<unsigned long>(d_max) * pow(p, a - 1));
    rhs += make_rational(BigInt(pa - 1) * sum_d, pm1);
    rhs += make_rational(pa * sum_ld, pm1);
    return make_hypothesis(n, rhs);
}

DivisibilityVerdict corollary11_verify(const std::vector<MultiPoly>& polys, std::uint32_t a,
                                       std::uint64_t b, const std::vector<std::uint64_t>& ls,
                                       std::uint32_t p, EvalMode mode,
                                       const EnumerationOptions& opts) {
    Hypothesis h18 = hypothesis_18(polys, a, b, ls, p);
    CongruenceSystem sys{p, b, common_vars(polys), {}};
    std::uint64_t d_max = 0;
    for (std::size_t k = 0; k < polys.size(); ++k) {
        IntegerValuedPoly F{std::vector<BigInt>(ls[k] + 1, BigInt(0))};
        F.coeffs[ls[k]] = 1;
        sys.constraints.push_back(Constraint{polys[k], a, std::move(F)});
        d_max = std::max(d_max, total_degree(polys[k]));
    }
    DivisibilityVerdict v;
    try {
        v = verify_theorem12(sys, mode, opts);
    } catch (const TheoremViolation& e) {
        DivisibilityVerdict inner = e.verdict();
        inner.statement = "corollary11";
        inner.corollary_hypothesis = h18;
        throw TheoremViolation(std::move(inner));
    }
    v.statement = "corollary11";
    v.corollary_hypothesis = h18;
    // With d_1 >= 1 the two hypotheses coincide; with every d_k = 0 the
    // max{., 1} term makes the general one strictly stronger once b >= 2.
    if (h18.holds && d_max >= 1 && !v.hypothesis.holds) {
        throw InternalError("corollary11: hypothesis (a, l_k) form holds but the general form does not");
    }
    return v;
}

BigInt count_common_zeros(const std::vector<MultiPoly>& polys, std::uint32_t p, EvalMode mode,
                          const EnumerationOptions& opts) {
    const CubeSpec cube{p, common_vars(polys)};
    check_ceiling(cube, opts.ceiling);
    ZeroCountPolicy policy{BigInt(p)};
    if (mode == EvalMode::Modular) {
        std::vector<ModArith> ariths(polys.size(), ModArith{p});
        return fold_products(cube, polys, ariths, policy, opts);
    }
    std::vector<ExactArith> ariths(polys.size());
    return fold_products(cube, polys, ariths, policy, opts);
}

DivisibilityVerdict chevalley_warning_verify(const std::vector<MultiPoly>& polys, std::uint32_t p,
                                             EvalMode mode, const EnumerationOptions& opts) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    const std::size_t n = common_vars(polys);
    BigInt sum_d = 0;
    for (const auto& f : polys) sum_d += static_cast<unsigned long>(degree_or_zero(f));
    DivisibilityVerdict v;
    v.statement = "chevalley";
    v.hypothesis = make_hypothesis(n, Rational(sum_d));
    v.modulus = p;
    v.sum = count_common_zeros(polys, p, mode, opts);
    v.divisible = reduced_divisible(v.sum, v.modulus);
    raise_if_violated(v);
    return v;
}

DivisibilityVerdict axkatz_prime_verify(const std::vector<MultiPoly>& polys, std::uint64_t b,
                                        std::uint32_t p, EvalMode mode,
                                        const EnumerationOptions& opts) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (b == 0) throw std::invalid_argument("b must be positive");
    const std::size_t n = common_vars(polys);
    std::uint64_t d_max = 0;
    BigInt sum_d = 0;
    for (const auto& f : polys) {
        const std::uint64_t d = total_degree(f);
        d_max = std::max(d_max, d);
        sum_d += static_cast<unsigned long>(d);
    }
    DivisibilityVerdict v;
    v.statement = "axkatz";
    v.hypothesis = make_hypothesis(
        n, Rational(BigInt(static_cast<unsigned long>(b - 1)) * static_cast<unsigned long>(d_max) + sum_d));
    // all-constant systems are outside the theorem: f = p has p^n solutions for every b
    if (d_max == 0) v.hypothesis.holds = false;
    v.modulus = pow(p, b);
    v.sum = count_common_zeros(polys, p, mode, opts);
    v.divisible = reduced_divisible(v.sum, v.modulus);
    raise_if_violated(v);
    return v;
}

WeightedSum lemma22_sum(const std::vector<MultiPoly>& polys, const std::vector<std::uint64_t>& js,
                        std::uint64_t c, std::uint32_t p, EvalMode mode,
                        const EnumerationOptions& opts) {
    if (js.size() != polys.size()) throw std::invalid_argument("need one j_k per polynomial");
    const CubeSpec cube{p, common_vars(polys)};
    check_ceiling(cube, opts.ceiling);
    if (mode == EvalMode::Modular) {
        auto pc = small_power(p, c);
        std::optional<ModularTablePolicy> policy;
        std::vector<ModArith> ariths;
        if (pc) {
            policy = ModularTablePolicy{*pc, {}, {}};
            const BigInt big_pc = static_cast<unsigned long>(*pc);
            for (auto j : js) {
                // C(v, j) mod p^c depends only on v mod p^{c + ord_p(j!)}
                auto mod = small_power(
                    p, c + static_cast<std::uint64_t>(ord_factorial(BigInt(static_cast<unsigned long>(j)), p)));
                if (!mod || *mod > kMaxTable) {
                    policy.reset();
                    break;
                }
                std::vector<std::uint64_t> table(*mod);
                for (std::uint64_t v = 0; v < *mod; ++v) {
                    table[v] = mod_floor(binom_int(BigInt(static_cast<unsigned long>(v)), j), big_pc).get_ui();
                }
                policy->gate.push_back(0);
                policy->tables.push_back(std::move(table));
                ariths.push_back(ModArith{*mod});
            }
        }
        if (policy) {
            BigInt partial = fold_products(cube, polys, ariths, *policy, opts);
            return {mod_floor(partial, BigInt(static_cast<unsigned long>(*pc))), false};
        }
    }
    ExactBinomialPolicy policy{js};
    std::vector<ExactArith> ariths(polys.size());
    return {fold_products(cube, polys, ariths, policy, opts), true};
}

DivisibilityVerdict lemma22_verify(const std::vector<MultiPoly>& polys,
                                   const std::vector<std::uint64_t>& js, std::uint64_t c,
                                   std::uint32_t p, EvalMode mode, const EnumerationOptions& opts) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    const std::size_t n = common_vars(polys);
    if (js.size() != polys.size()) throw std::invalid_argument("need one j_k per polynomial");
    BigInt weighted = 0;  // sum_k j_k d_k bounds the total degree of the product
    for (std::size_t k = 0; k < polys.size(); ++k)
        weighted += BigInt(static_cast<unsigned long>(js[k])) * static_cast<unsigned long>(degree_or_zero(polys[k]));
    DivisibilityVerdict v;
    v.statement = "lemma22";
    // sum j_k d_k < (n - c + 1)(p - 1)  <=>  n > c - 1 + sum j_k d_k / (p - 1)
    v.hypothesis = make_hypothesis(
        n, Rational(BigInt(static_cast<unsigned long>(c)) - 1) +
               make_rational(weighted, BigInt(static_cast<unsigned long>(p - 1))));
    v.modulus = pow(p, c);
    WeightedSum s = lemma22_sum(polys, js, c, p, mode, opts);
    v.sum = std::move(s.value);
    v.sum_exact = s.exact;
    v.divisible = reduced_divisible(v.sum, v.modulus);
    raise_if_violated(v);
    return v;
}

}  // namespace fleckforge
