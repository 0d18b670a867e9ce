#include "orbit/features.hpp"

#include <cmath>

namespace orbit {

FeatureBank sample_features(const DomainSpec& domain, Index N,
                            const ScalarFn& sigma, const GroupSpec& group,
                            uint64_t seed) {
    domain.validate();
    group.validate(domain);
    if (N < 1) throw ConfigError("sample_features: N must be >= 1");
    if (!sigma) throw ConfigError("sample_features: empty activation");
    FeatureBank bank;
    bank.W = sample_domain(domain, N, seed, "feature-weights") /
             std::sqrt(static_cast<double>(domain.d));
    bank.domain = domain;
    bank.group = group;
    bank.sigma = sigma;
    bank.seed = seed;
    return bank;
}

DesignMatrix design(const FeatureBank& bank, const Mat& X, int threads) {
    if (X.cols() != bank.domain.d)
        throw ConfigError("design: point dimension mismatch");
    if (X.rows() < 1) throw ConfigError("design: empty point set");
    const Index n = X.rows();
    const Index N = bank.count();
    DesignMatrix dm;
    dm.bank = std::make_shared<const FeatureBank>(bank);
    dm.Z.resize(n, N);

    if (bank.group.kind == GroupKind::trivial) {
        dm.Z = X * bank.W.transpose();
        parallel_for(n, threads, [&](Index lo, Index hi) {
            for (Index i = lo; i < hi; ++i)
                for (Index j = 0; j < N; ++j)
                    dm.Z(i, j) = bank.sigma(dm.Z(i, j));
        });
        return dm;
    }

    // Group-averaged path, parallel over feature (column) blocks: each entry
    // needs the whole correlation <w_j, g.x_i> over g, produced in one pass
    // by the correlator.
    parallel_for(N, threads, [&](Index lo, Index hi) {
        Correlator corr(bank.group);
        Vec cvec(corr.size());
        for (Index j = lo; j < hi; ++j) {
            const Vec w = bank.W.row(j).transpose();
            for (Index i = 0; i < n; ++i) {
                corr.correlate(w, X.row(i).transpose(), cvec);
                double acc = 0.0;
                for (Index e = 0; e < cvec.size(); ++e)
                    acc += bank.sigma(cvec(e));
                dm.Z(i, j) = acc / static_cast<double>(cvec.size());
            }
        }
    });
    return dm;
}

} // namespace orbit
