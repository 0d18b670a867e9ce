#ifndef ORBIT_SPECTRA_HPP
#define ORBIT_SPECTRA_HPP

#include "orbit/group.hpp"
#include "orbit/orthopoly.hpp"

#include <utility>
#include <vector>

namespace orbit {

// Monte-Carlo estimate of the invariant-subspace dimension D(A_d; k): the
// expectation over uniform theta of B_k * avg_g Q_k(<theta, g.theta>) equals
// D exactly, so the sample mean is unbiased. Returns (estimate, stderr).
std::pair<double, double> estimate_degeneracy(const DomainSpec& domain,
                                              const GroupSpec& group, int k,
                                              Index n_mc, uint64_t seed);

// Exact D for the cyclic group on the hypercube: Burnside count of k-element
// necklaces, (1/d) * sum_{c | gcd(d,k)} phi(c) * C(d/c, k/c); 1 for k = 0.
long long exact_cyclic_degeneracy_hypercube(Index d, int k);

// Per-point statistic Upsilon_k(theta) = (B/D) * avg_g Q_k(<theta,g.theta>),
// which has mean 1 and concentrates as d grows (for k >= 2). D comes from
// the exact necklace count when available (hypercube + cyc1d, or the trivial
// group where D = B), otherwise from a 2*10^5-sample Monte-Carlo estimate.
// Returns (sample mean, max_i |Upsilon_k(theta_i) - 1|).
std::pair<double, double> upsilon_statistics(const DomainSpec& domain,
                                             const GroupSpec& group, int k,
                                             Index n_points, uint64_t seed);

// Measure for f_k_mean's Monte-Carlo points.
enum class PointLaw { domain_uniform, gaussian };

// Monte-Carlo mean of F_k(z) = avg_g (<z, g.z>/d)^k over the chosen law.
double f_k_mean(const DomainSpec& domain, const GroupSpec& group, int k,
                Index n_mc, uint64_t seed,
                PointLaw law = PointLaw::gaussian);

struct SpectrumRow {
    int k = 0;
    double B = 0.0;
    double D_estimate = 0.0;
    double D_stderr = 0.0;
    double D_exact = 0.0; // NaN when no exact oracle applies
    double upsilon_mean = 0.0;
    double upsilon_sup_dev = 0.0;
    double f_k = 0.0; // under the domain's uniform measure
};

struct SpectrumReport {
    DomainSpec domain;
    GroupSpec group;
    std::vector<SpectrumRow> rows;
};

SpectrumReport build_spectrum_report(const DomainSpec& domain,
                                     const GroupSpec& group,
                                     const std::vector<int>& degrees,
                                     Index n_mc, Index n_points,
                                     uint64_t seed);

} // namespace orbit

#endif // ORBIT_SPECTRA_HPP
