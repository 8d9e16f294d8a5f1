#include "fleckforge/ivpoly.hpp"

#include <numeric>
#include <stdexcept>

namespace fleckforge {

bool IntegerValuedPoly::is_zero() const {
    for (const auto& c : coeffs)
        if (c != 0) return false;
    return true;
}

bool IntegerValuedPoly::is_constant() const {
    for (std::size_t j = 1; j < coeffs.size(); ++j)
        if (coeffs[j] != 0) return false;
    return true;
}

BigInt eval_ivp(const IntegerValuedPoly& f, const BigInt& x) {
    BigInt sum = 0;
    BigInt binom = 1;  // C(x, j)
    for (std::size_t j = 0; j < f.coeffs.size(); ++j) {
        if (j > 0) {
            binom *= x - static_cast<unsigned long>(j - 1);
            mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), j);
        }
        if (f.coeffs[j] != 0) sum += f.coeffs[j] * binom;
    }
    return sum;
}

Rational eval_ivp(const IntegerValuedPoly& f, const Rational& x) {
    Rational sum = 0;
    Rational binom = 1;
    for (std::size_t j = 0; j < f.coeffs.size(); ++j) {
        if (j > 0) {
            binom *= x - Rational(static_cast<unsigned long>(j - 1));
            binom /= Rational(static_cast<unsigned long>(j));
        }
        sum += Rational(f.coeffs[j]) * binom;
    }
    return sum;
}

std::vector<BigInt> forward_differences(std::span<const BigInt> values) {
    std::vector<BigInt> row(values.begin(), values.end());
    std::vector<BigInt> out;
    out.reserve(row.size());
    // after pass i, row[0..size-i) holds D^i f(0..)
    for (std::size_t i = 0; i < values.size(); ++i) {
        out.push_back(row[0]);
        for (std::size_t k = 0; k + 1 + i < values.size(); ++k) row[k] = row[k + 1] - row[k];
    }
    return out;
}

std::vector<BigInt> forward_differences_alternating(std::span<const BigInt> values) {
    std::vector<BigInt> out;
    out.reserve(values.size());
    for (std::size_t n = 0; n < values.size(); ++n) {
        BigInt c = 0;
        for (std::size_t k = 0; k <= n; ++k) {
            BigInt term = binom_int(BigInt(static_cast<unsigned long>(n)), k) * values[k];
            if ((n - k) % 2 == 0)
                c += term;
            else
                c -= term;
        }
        out.push_back(std::move(c));
    }
    return out;
}

IntegerValuedPoly ivp_from_values(std::span<const BigInt> values) {
    return IntegerValuedPoly{forward_differences(values)};
}

IntegerValuedPoly monomials_to_ivp(std::span<const BigInt> monomial_coeffs) {
    std::vector<BigInt> values;
    values.reserve(monomial_coeffs.size());
    for (std::size_t x = 0; x < monomial_coeffs.size(); ++x) {
        BigInt acc = 0;
        for (std::size_t j = monomial_coeffs.size(); j-- > 0;) {
            acc = acc * static_cast<unsigned long>(x) + monomial_coeffs[j];
        }
        values.push_back(std::move(acc));
    }
    return ivp_from_values(values);
}

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    BigInt det = m[n - 1][n - 1];
    if (sign < 0) det = -det;
    return det;
}

Rational newton_remainder(std::span<const BigInt> values, const Rational& x,
                          const Rational& fx, std::uint64_t d) {
    if (values.size() != d + 1) {
        throw std::invalid_argument("newton_remainder: expected d+1 sample values");
    }
    const std::size_t n = d + 2;
    std::vector<std::vector<BigInt>> num(n, std::vector<BigInt>(n));
    for (std::size_t k = 0; k <= d; ++k) {
        BigInt power = 1;
        for (std::size_t j = 0; j <= d; ++j) {
            num[k][j] = power;
            power *= static_cast<unsigned long>(k);
        }
        num[k][d + 1] = values[k];
    }
    // Last row [1, x, .., x^d, f(x)] scaled to integers by den(x)^d * den(fx).
    const BigInt& xd = x.get_den();
    BigInt xd_pow;
    mpz_pow_ui(xd_pow.get_mpz_t(), xd.get_mpz_t(), d);
    const BigInt scale = xd_pow * fx.get_den();
    Rational power = 1;
    for (std::size_t j = 0; j <= d; ++j) {
        Rational scaled = power * Rational(scale);
        scaled.canonicalize();
        num[d + 1][j] = scaled.get_num();  // den(scaled) is 1 by choice of scale
        power *= x;
    }
    {
        Rational scaled = fx * Rational(scale);
        scaled.canonicalize();
        num[d + 1][d + 1] = scaled.get_num();
    }

    std::vector<std::vector<BigInt>> den(d, std::vector<BigInt>(d));
    for (std::size_t i = 0; i < d; ++i) {
        BigInt base = static_cast<unsigned long>(i + 1);
        BigInt power_i = base;
        for (std::size_t j = 0; j < d; ++j) {
            den[i][j] = power_i;
            power_i *= base;
        }
    }
    BigInt den_det = bareiss_determinant(std::move(den));
    if (den_det == 0) throw std::logic_error("newton_remainder: singular node determinant");
    Rational r(bareiss_determinant(std::move(num)), den_det * scale);
    r.canonicalize();
    return r;
}

}  // namespace fleckforge
