#ifndef ORBIT_COMMON_HPP
#define ORBIT_COMMON_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace orbit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Index = Eigen::Index;

// Invalid user input (bad config, malformed file, out-of-range parameter).
// The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical breakdown (failed factorization, non-finite values, underresolved
// quadrature). The CLI maps this to exit code 3.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Counter-based pseudo-random generator: output i is a pure function of
// (key, i), where the key is derived from an experiment seed and a purpose
// tag. Streams for different (seed, tag) pairs are independent, and a stream
// can be reproduced from any position, which keeps parallel sampling
// deterministic. The mixer is the splitmix64 finalizer (Steele et al.),
// applied to key ^ golden-ratio-scrambled counter.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::string_view tag);

    std::uint64_t next_u64();
    // Uniform on [0, 1), 53-bit resolution.
    double uniform();
    // Standard normal via Box-Muller; generates pairs, caches the spare.
    double normal();
    // Uniform integer on [0, bound), rejection-free of modulo bias.
    std::uint64_t uniform_below(std::uint64_t bound);

    std::uint64_t key() const { return key_; }

  private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Runs fn(begin, end) over a contiguous partition of [0, n) on `threads`
// workers (serial when threads <= 1). Callers write results to disjoint
// slots indexed by the loop variable, so the output is identical for every
// thread count.
void parallel_for(Index n, int threads,
                  const std::function<void(Index, Index)>& fn);

inline constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;

// FNV-1a over raw bytes; chainable via the running-hash argument.
std::uint64_t fnv1a(const void* data, std::size_t len,
                    std::uint64_t h = kFnvOffset);
std::uint64_t fnv1a(std::string_view s, std::uint64_t h = kFnvOffset);
// Without this overload a string literal passed with a running hash would
// select the raw-byte overload and misread the hash as a byte count.
inline std::uint64_t fnv1a(const char* s, std::uint64_t h = kFnvOffset) {
    return fnv1a(std::string_view(s), h);
}

} // namespace orbit

#endif // ORBIT_COMMON_HPP
