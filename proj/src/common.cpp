#include "orbit/common.hpp"

#include <cmath>
#include <exception>
#include <thread>
#include <vector>

namespace orbit {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t h) {
    return fnv1a(s.data(), s.size(), h);
}

CounterRng::CounterRng(std::uint64_t seed, std::string_view tag) {
    key_ = mix64(mix64(seed + kGolden) ^ fnv1a(tag));
}

std::uint64_t CounterRng::next_u64() {
    return mix64(key_ ^ (counter_++ * kGolden));
}

double CounterRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * M_PI * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
}

std::uint64_t CounterRng::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw ConfigError("uniform_below: bound must be positive");
    // Rejection sampling on the top multiple of bound.
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % bound;
}

void parallel_for(Index n, int threads,
                  const std::function<void(Index, Index)>& fn) {
    if (n <= 0) return;
    const Index workers =
        std::min<Index>(n, std::max(1, threads));
    if (workers <= 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const Index chunk = (n + workers - 1) / workers;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (Index w = 0; w < workers; ++w) {
        const Index begin = w * chunk;
        const Index end = std::min(n, begin + chunk);
        if (begin >= end) break;
        std::exception_ptr& slot = errors[static_cast<std::size_t>(w)];
        pool.emplace_back([&fn, &slot, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                slot = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace orbit
