#include "fleckforge/multipoly.hpp"

#include <algorithm>
#include <numeric>

namespace fleckforge {

MultiPoly MultiPoly::constant(std::size_t n_vars, const BigInt& c) {
    MultiPoly p(n_vars);
    p.add_term(Exponents(n_vars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t n_vars, std::size_t index) {
    if (index >= n_vars) throw std::out_of_range("variable index out of range");
    MultiPoly p(n_vars);
    Exponents e(n_vars, 0);
    e[index] = 1;
    p.add_term(e, 1);
    return p;
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
    if (o.n_vars_ != n_vars_) throw std::invalid_argument("polynomials over different variable counts");
}

void MultiPoly::add_term(const Exponents& e, const BigInt& c) {
    if (e.size() != n_vars_) throw std::invalid_argument("exponent vector length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(n_vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly r(a.n_vars_);
    Exponents e(a.n_vars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

MultiPoly MultiPoly::pow(std::uint64_t e) const {
    MultiPoly result = constant(n_vars_, 1);
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

std::uint64_t total_degree(const MultiPoly& f) {
    if (f.is_zero()) throw std::domain_error("total degree of the zero polynomial");
    std::uint64_t d = 0;
    for (const auto& [e, c] : f.terms()) {
        d = std::max<std::uint64_t>(d, std::accumulate(e.begin(), e.end(), std::uint64_t{0}));
    }
    return d;
}

BigInt eval_poly(const MultiPoly& f, std::span<const BigInt> point) {
    if (point.size() != f.n_vars()) throw std::invalid_argument("eval_poly: point length mismatch");
    BigInt sum = 0;
    BigInt term;
    BigInt power;
    for (const auto& [e, c] : f.terms()) {
        term = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            mpz_pow_ui(power.get_mpz_t(), point[i].get_mpz_t(), e[i]);
            term *= power;
        }
        sum += term;
    }
    return sum;
}

BigInt eval_poly(const MultiPoly& f, std::span<const std::int64_t> point) {
    std::vector<BigInt> big;
    big.reserve(point.size());
    for (auto v : point) big.emplace_back(static_cast<long>(v));
    return eval_poly(f, big);
}

std::string render(const MultiPoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        const bool negative = c < 0;
        BigInt mag = abs(c);
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        std::string factors;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!factors.empty()) factors += "*";
            factors += "x" + std::to_string(i + 1);
            if (e[i] > 1) factors += "^" + std::to_string(e[i]);
        }
        if (factors.empty()) {
            out += mag.get_str();
        } else if (mag == 1) {
            out += factors;
        } else {
            out += mag.get_str() + "*" + factors;
        }
    }
    return out;
}

}  // namespace fleckforge
