#include "fleckforge/enumerate.hpp"

namespace fleckforge {

void check_ceiling(const CubeSpec& spec, std::uint64_t ceiling) {
    BigInt required = spec.points();
    if (required > BigInt(static_cast<unsigned long>(ceiling))) {
        throw CeilingExceeded(std::move(required), ceiling);
    }
}

namespace detail {

std::size_t chunk_prefix_length(const CubeSpec& spec, unsigned workers) {
    if (workers <= 1 || spec.p < 2) return 0;
    // several chunks per worker keeps the tail short when chunk costs differ
    const std::uint64_t want = 8ull * workers;
    std::size_t k = 0;
    std::uint64_t chunks = 1;
    while (k < spec.n_vars && chunks < want) {
        chunks *= spec.p;
        ++k;
    }
    return k;
}

}  // namespace detail

namespace {

class FunctionVisitor {
public:
    explicit FunctionVisitor(const PointFunction& f) : f_(f) {}
    void start(std::span<const std::uint32_t> point) { sum_ += f_(point); }
    void step(std::span<const std::uint32_t> point, std::size_t) { sum_ += f_(point); }
    BigInt take() {
        BigInt s = std::move(sum_);
        sum_ = 0;
        return s;
    }

private:
    const PointFunction& f_;
    BigInt sum_ = 0;
};

}  // namespace

BigInt cube_fold(const CubeSpec& spec, const PointFunction& per_point,
                 const EnumerationOptions& opts) {
    return cube_fold_visit(spec, [&] { return FunctionVisitor(per_point); }, opts);
}

}  // namespace fleckforge
