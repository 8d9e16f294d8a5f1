#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "fleckforge/multipoly.hpp"
#include "fleckforge/padic.hpp"

namespace fleckforge {

/// The cube [0, p-1]^n_vars.
struct CubeSpec {
    std::uint32_t p = 2;
    std::size_t n_vars = 0;

    BigInt points() const { return pow(p, n_vars); }
};

inline constexpr std::uint64_t kDefaultCeiling = 100'000'000;

struct EnumerationOptions {
    unsigned workers = 0;  // 0: std::thread::hardware_concurrency()
    std::uint64_t ceiling = kDefaultCeiling;

    unsigned resolved_workers() const {
        if (workers != 0) return workers;
        return std::max(1u, std::thread::hardware_concurrency());
    }
};

class CeilingExceeded : public std::runtime_error {
public:
    CeilingExceeded(BigInt required, std::uint64_t ceiling)
        : std::runtime_error("enumeration needs " + required.get_str() +
                             " points, ceiling is " + std::to_string(ceiling)),
          required_(std::move(required)),
          ceiling_(ceiling) {}
    const BigInt& required() const { return required_; }
    std::uint64_t ceiling() const { return ceiling_; }

private:
    BigInt required_;
    std::uint64_t ceiling_;
};

/// Throws CeilingExceeded when the cube is larger than the ceiling.
void check_ceiling(const CubeSpec& spec, std::uint64_t ceiling);

namespace detail {

/// Number of leading coordinates fixed per work chunk.
std::size_t chunk_prefix_length(const CubeSpec& spec, unsigned workers);

}  // namespace detail

/// Folds a stateful visitor over the cube in odometer order (last
/// coordinate fastest). Each worker owns one visitor made by `make`; the
/// visitor sees `start(point)` at the beginning of every chunk and
/// `step(point, j)` afterwards, where coordinate j was incremented and
/// every coordinate after j was reset to 0. `take()` returns and clears
/// the visitor's partial sum. Chunk sums are added in chunk order, so the
/// result does not depend on scheduling.
template <class Factory>
BigInt cube_fold_visit(const CubeSpec& spec, Factory&& make, const EnumerationOptions& opts = {}) {
    check_ceiling(spec, opts.ceiling);
    const unsigned workers = opts.resolved_workers();
    const std::size_t n = spec.n_vars;
    const std::uint32_t p = spec.p;
    const std::size_t prefix = detail::chunk_prefix_length(spec, workers);
    std::uint64_t chunk_count = 1;
    for (std::size_t i = 0; i < prefix; ++i) chunk_count *= p;

    std::vector<BigInt> chunk_sums(chunk_count);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto run = [&] {
        try {
            auto visitor = make();
            std::vector<std::uint32_t> point(n, 0);
            for (;;) {
                const std::uint64_t chunk = next.fetch_add(1);
                if (chunk >= chunk_count) break;
                std::uint64_t code = chunk;
                for (std::size_t i = prefix; i-- > 0;) {
                    point[i] = static_cast<std::uint32_t>(code % p);
                    code /= p;
                }
                std::fill(point.begin() + static_cast<std::ptrdiff_t>(prefix), point.end(), 0u);
                visitor.start(std::span<const std::uint32_t>(point));
                for (;;) {
                    std::size_t j = n;
                    while (j > prefix && point[j - 1] + 1 == p) --j;
                    if (j == prefix) break;
                    --j;
                    ++point[j];
                    std::fill(point.begin() + static_cast<std::ptrdiff_t>(j + 1), point.end(), 0u);
                    visitor.step(std::span<const std::uint32_t>(point), j);
                }
                chunk_sums[chunk] = visitor.take();
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(chunk_count);
        }
    };

    const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunk_count));
    if (threads <= 1) {
        run();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run);
    }
    if (failure) std::rethrow_exception(failure);

    BigInt total = 0;
    for (const auto& s : chunk_sums) total += s;
    return total;
}

using PointFunction = std::function<BigInt(std::span<const std::uint32_t>)>;

/// Sum of per_point over the cube. per_point must not touch shared
/// mutable state; it is called concurrently from worker threads.
BigInt cube_fold(const CubeSpec& spec, const PointFunction& per_point,
                 const EnumerationOptions& opts = {});

/// Arithmetic modulo m < 2^63 on 64-bit words.
struct ModArith {
    using value_type = std::uint64_t;
    std::uint64_t m;

    value_type zero() const { return 0; }
    value_type from(const BigInt& v) const { return mod_floor(v, BigInt(m)).get_ui(); }
    value_type from_small(std::uint64_t v) const { return v % m; }
    value_type add(value_type a, value_type b) const {
        value_type s = a + b;
        return s >= m ? s - m : s;
    }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>(static_cast<unsigned __int128>(a) * b % m);
    }
};

/// Exact big-integer arithmetic.
struct ExactArith {
    using value_type = BigInt;

    value_type zero() const { return 0; }
    value_type from(const BigInt& v) const { return v; }
    value_type from_small(std::uint64_t v) const { return BigInt(static_cast<unsigned long>(v)); }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
};

/// Evaluates one MultiPoly at the points of a cube visited in odometer
/// order. Terms are grouped by their highest-index variable j, so that
/// f = c + sum_j G_j with G_j = sum_e H_{j,e} x_j^e and H_{j,e} depending
/// only on x_0..x_{j-1}. A step at coordinate j zeroes every G_k with k > j
/// and only re-evaluates G_j; H_j is rebuilt when a lower coordinate moved.
template <class Arith>
class IncrementalPoly {
public:
    using value_type = typename Arith::value_type;

    IncrementalPoly(const MultiPoly& f, std::uint32_t p, Arith arith)
        : arith_(std::move(arith)), n_(f.n_vars()), groups_(f.n_vars()) {
        std::uint32_t max_exp = 1;
        constant_ = arith_.zero();
        for (const auto& [e, c] : f.terms()) {
            std::size_t top = n_;
            for (std::size_t i = n_; i-- > 0;) {
                if (e[i] != 0) {
                    top = i;
                    break;
                }
            }
            if (top == n_) {
                constant_ = arith_.add(constant_, arith_.from(c));
                continue;
            }
            Term t;
            t.coeff = arith_.from(c);
            t.top_exp = e[top];
            for (std::size_t i = 0; i < top; ++i)
                if (e[i] != 0) t.factors.emplace_back(i, e[i]);
            for (auto x : e) max_exp = std::max(max_exp, x);
            auto& g = groups_[top];
            g.max_exp = std::max(g.max_exp, t.top_exp);
            g.terms.push_back(std::move(t));
        }
        for (auto& g : groups_) g.H.assign(g.max_exp + 1, arith_.zero());
        powers_.assign(p, std::vector<value_type>(max_exp + 1, arith_.zero()));
        for (std::uint32_t x = 0; x < p; ++x) {
            value_type acc = arith_.from_small(1);
            for (std::uint32_t e = 0; e <= max_exp; ++e) {
                powers_[x][e] = acc;
                acc = arith_.mul(acc, arith_.from_small(x));
            }
        }
        prefix_.assign(n_ + 1, arith_.zero());
        stale_.assign(n_, true);
        value_ = constant_;
    }

    void start(std::span<const std::uint32_t> point) {
        prefix_[0] = constant_;
        for (std::size_t j = 0; j < n_; ++j) {
            rebuild(j, point);
            prefix_[j + 1] = arith_.add(prefix_[j], group_value(j, point[j]));
        }
        value_ = prefix_[n_];
    }

    void step(std::span<const std::uint32_t> point, std::size_t j) {
        for (std::size_t k = j + 1; k < n_; ++k) stale_[k] = true;
        if (stale_[j]) rebuild(j, point);
        value_ = arith_.add(prefix_[j], group_value(j, point[j]));
        for (std::size_t k = j + 1; k <= n_; ++k) prefix_[k] = value_;
    }

    const value_type& value() const { return value_; }

private:
    struct Term {
        value_type coeff;
        std::uint32_t top_exp = 0;
        std::vector<std::pair<std::size_t, std::uint32_t>> factors;
    };
    struct Group {
        std::vector<Term> terms;
        std::uint32_t max_exp = 0;
        std::vector<value_type> H;
    };

    void rebuild(std::size_t j, std::span<const std::uint32_t> point) {
        auto& g = groups_[j];
        std::fill(g.H.begin(), g.H.end(), arith_.zero());
        for (const auto& t : g.terms) {
            value_type v = t.coeff;
            for (const auto& [i, e] : t.factors) v = arith_.mul(v, powers_[point[i]][e]);
            g.H[t.top_exp] = arith_.add(g.H[t.top_exp], v);
        }
        stale_[j] = false;
    }

    value_type group_value(std::size_t j, std::uint32_t x) const {
        const auto& g = groups_[j];
        value_type s = arith_.zero();
        if (x == 0) return s;
        for (std::uint32_t e = 1; e <= g.max_exp; ++e) s = arith_.add(s, arith_.mul(g.H[e], powers_[x][e]));
        return s;
    }

    Arith arith_;
    std::size_t n_;
    value_type constant_;
    std::vector<Group> groups_;
    std::vector<std::vector<value_type>> powers_;
    std::vector<value_type> prefix_;
    std::vector<bool> stale_;
    value_type value_;
};

}  // namespace fleckforge
