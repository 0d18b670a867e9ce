#ifndef ORBIT_DOMAIN_HPP
#define ORBIT_DOMAIN_HPP

#include "orbit/common.hpp"

#include <cstdint>

namespace orbit {

enum class DomainKind { sphere, hypercube };

// Ambient space: the sphere of radius sqrt(d) in R^d, or the Boolean
// hypercube {-1,+1}^d, both with their uniform probability measure.
struct DomainSpec {
    DomainKind kind = DomainKind::sphere;
    int d = 0;

    static DomainSpec sphere(int d) { return {DomainKind::sphere, d}; }
    static DomainSpec hypercube(int d) { return {DomainKind::hypercube, d}; }

    void validate() const;
    bool operator==(const DomainSpec&) const = default;
};

const char* to_string(DomainKind kind);

// n i.i.d. uniform points, one per row. Sphere: standard normal rows rescaled
// to norm sqrt(d). Hypercube: Rademacher entries. Deterministic in (seed, tag).
Mat sample_domain(const DomainSpec& domain, Index n, std::uint64_t seed,
                  std::string_view tag = "sample-domain");

// Supervised sample: rows of X on the domain, labels y_i = f(x_i) + noise.
struct Dataset {
    Mat X;
    Vec y;
    double noise_sd = 0.0;
    std::uint64_t seed = 0;
};

} // namespace orbit

#endif // ORBIT_DOMAIN_HPP
