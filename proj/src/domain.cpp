#include "orbit/domain.hpp"

#include <cmath>

namespace orbit {

void DomainSpec::validate() const {
    if (kind == DomainKind::sphere && d < 3)
        throw ConfigError("sphere domain requires d >= 3, got d=" +
                          std::to_string(d));
    if (kind == DomainKind::hypercube && d < 1)
        throw ConfigError("hypercube domain requires d >= 1, got d=" +
                          std::to_string(d));
}

const char* to_string(DomainKind kind) {
    return kind == DomainKind::sphere ? "sphere" : "hypercube";
}

Mat sample_domain(const DomainSpec& domain, Index n, std::uint64_t seed,
                  std::string_view tag) {
    domain.validate();
    if (n < 1) throw ConfigError("sample_domain: n must be >= 1");
    const Index d = domain.d;
    Mat X(n, d);
    CounterRng rng(seed, tag);
    if (domain.kind == DomainKind::sphere) {
        const double radius = std::sqrt(static_cast<double>(d));
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < d; ++j) X(i, j) = rng.normal();
            const double norm = X.row(i).norm();
            if (norm == 0.0)
                throw NumericError("sample_domain: zero normal vector");
            X.row(i) *= radius / norm;
        }
    } else {
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < d; ++j)
                X(i, j) = (rng.next_u64() & 1u) ? 1.0 : -1.0;
    }
    return X;
}

} // namespace orbit
