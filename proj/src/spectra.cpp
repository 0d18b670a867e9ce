#include "orbit/spectra.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace orbit {

namespace {

// Mean over group elements of Q_k applied to the self-correlation of theta.
double projector_diag(const GegenbauerBasis& basis, Correlator& corr,
                      const Vec& theta, int k, Vec& scratch) {
    corr.correlate(theta, theta, scratch);
    const double d = static_cast<double>(theta.size());
    double acc = 0.0;
    for (Index e = 0; e < scratch.size(); ++e)
        acc += basis.eval_t(k, scratch(e) / d);
    return acc / static_cast<double>(scratch.size());
}

long long euler_phi(long long c) {
    long long result = c;
    for (long long p = 2; p * p <= c; ++p) {
        if (c % p == 0) {
            while (c % p == 0) c /= p;
            result -= result / p;
        }
    }
    if (c > 1) result -= result / c;
    return result;
}

long long binomial_ll(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

std::pair<double, double> estimate_degeneracy(const DomainSpec& domain,
                                              const GroupSpec& group, int k,
                                              Index n_mc, uint64_t seed) {
    domain.validate();
    group.validate(domain);
    if (k < 0) throw ConfigError("estimate_degeneracy: k must be >= 0");
    if (n_mc < 2) throw ConfigError("estimate_degeneracy: n_mc must be >= 2");
    const GegenbauerBasis basis(domain, k);
    const double B = basis_dimension(domain, k);
    const Mat theta = sample_domain(domain, n_mc, seed, "degeneracy-theta");
    Correlator corr(group);
    Vec scratch(corr.size());
    // Welford update: the sum/sum-of-squares form loses the variance to
    // cancellation when the per-sample spread is far below the mean (it is
    // exactly zero for the trivial group on the hypercube).
    double mean = 0.0, m2 = 0.0;
    for (Index i = 0; i < n_mc; ++i) {
        const double v =
            B * projector_diag(basis, corr, theta.row(i).transpose(), k,
                               scratch);
        const double delta = v - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (v - mean);
    }
    const double n = static_cast<double>(n_mc);
    const double var = std::max(0.0, m2 / (n - 1.0));
    return {mean, std::sqrt(var / n)};
}

long long exact_cyclic_degeneracy_hypercube(Index d, int k) {
    if (d < 1) throw ConfigError("exact_cyclic_degeneracy_hypercube: d < 1");
    if (k < 0 || k > d)
        throw ConfigError(
            "exact_cyclic_degeneracy_hypercube: k outside [0, d]");
    if (k == 0) return 1;
    long long total = 0;
    const long long g = std::gcd(static_cast<long long>(d),
                                 static_cast<long long>(k));
    for (long long c = 1; c <= g; ++c) {
        if (g % c != 0) continue;
        total += euler_phi(c) * binomial_ll(d / c, k / c);
    }
    return total / d;
}

std::pair<double, double> upsilon_statistics(const DomainSpec& domain,
                                             const GroupSpec& group, int k,
                                             Index n_points, uint64_t seed) {
    domain.validate();
    group.validate(domain);
    if (k < 0) throw ConfigError("upsilon_statistics: k must be >= 0");
    if (n_points < 1)
        throw ConfigError("upsilon_statistics: n_points must be >= 1");

    const double B = basis_dimension(domain, k);
    double D;
    if (group.kind == GroupKind::trivial) {
        D = B;
    } else if (domain.kind == DomainKind::hypercube &&
               group.kind == GroupKind::cyc1d) {
        D = static_cast<double>(exact_cyclic_degeneracy_hypercube(domain.d, k));
    } else {
        D = estimate_degeneracy(domain, group, k, 200000, seed + 1000003)
                .first;
    }
    if (D == 0.0) throw NumericError("upsilon_statistics: zero degeneracy");

    const GegenbauerBasis basis(domain, k);
    const Mat theta = sample_domain(domain, n_points, seed, "upsilon-theta");
    Correlator corr(group);
    Vec scratch(corr.size());
    double sum = 0.0, sup_dev = 0.0;
    for (Index i = 0; i < n_points; ++i) {
        const double u =
            (B / D) * projector_diag(basis, corr, theta.row(i).transpose(), k,
                                     scratch);
        sum += u;
        sup_dev = std::max(sup_dev, std::fabs(u - 1.0));
    }
    return {sum / static_cast<double>(n_points), sup_dev};
}

double f_k_mean(const DomainSpec& domain, const GroupSpec& group, int k,
                Index n_mc, uint64_t seed, PointLaw law) {
    domain.validate();
    group.validate(domain);
    if (k < 1) throw ConfigError("f_k_mean: k must be >= 1");
    if (n_mc < 1) throw ConfigError("f_k_mean: n_mc must be >= 1");
    const double d = static_cast<double>(domain.d);
    Mat Z;
    if (law == PointLaw::domain_uniform) {
        Z = sample_domain(domain, n_mc, seed, "fk-points");
    } else {
        CounterRng rng(seed, "fk-gaussian");
        Z.resize(n_mc, domain.d);
        for (Index i = 0; i < n_mc; ++i)
            for (Index j = 0; j < domain.d; ++j) Z(i, j) = rng.normal();
    }
    Correlator corr(group);
    Vec scratch(corr.size());
    double acc = 0.0;
    for (Index i = 0; i < n_mc; ++i) {
        corr.correlate(Z.row(i).transpose(), Z.row(i).transpose(), scratch);
        double fk = 0.0;
        for (Index e = 0; e < scratch.size(); ++e)
            fk += std::pow(scratch(e) / d, k);
        acc += fk / static_cast<double>(scratch.size());
    }
    return acc / static_cast<double>(n_mc);
}

SpectrumReport build_spectrum_report(const DomainSpec& domain,
                                     const GroupSpec& group,
                                     const std::vector<int>& degrees,
                                     Index n_mc, Index n_points,
                                     uint64_t seed) {
    SpectrumReport report;
    report.domain = domain;
    report.group = group;
    for (int k : degrees) {
        SpectrumRow row;
        row.k = k;
        row.B = basis_dimension(domain, k);
        auto [est, se] = estimate_degeneracy(domain, group, k, n_mc, seed);
        row.D_estimate = est;
        row.D_stderr = se;
        if (group.kind == GroupKind::trivial)
            row.D_exact = row.B;
        else if (domain.kind == DomainKind::hypercube &&
                 group.kind == GroupKind::cyc1d)
            row.D_exact = static_cast<double>(
                exact_cyclic_degeneracy_hypercube(domain.d, k));
        else
            row.D_exact = std::numeric_limits<double>::quiet_NaN();
        auto [umean, usup] = upsilon_statistics(domain, group, k, n_points,
                                                seed);
        row.upsilon_mean = umean;
        row.upsilon_sup_dev = usup;
        row.f_k = k >= 1 ? f_k_mean(domain, group, k, n_mc, seed,
                                    PointLaw::domain_uniform)
                         : 1.0;
        report.rows.push_back(row);
    }
    return report;
}

} // namespace orbit
