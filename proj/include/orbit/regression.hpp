#ifndef ORBIT_REGRESSION_HPP
#define ORBIT_REGRESSION_HPP

#include "orbit/features.hpp"
#include "orbit/kernels.hpp"

#include <functional>
#include <memory>

namespace orbit {

enum class RidgeMode { krr, rfrr };

// lambda = 0 requests min-norm interpolation, implemented as a relative
// diagonal floor of 1e-10 * trace/n with one 10x jitter escalation, then an
// eigendecomposition pseudo-solve if factorization still fails.
struct RidgeConfig {
    double lambda = 0.0;
    double alpha = 0.0; // penalty scales as lambda / d^alpha
    RidgeMode mode = RidgeMode::krr;
};

struct RidgeFit {
    RidgeMode mode = RidgeMode::krr;
    RidgeConfig config;
    // krr: f(x) = sum_i u(i) H(x_i, x)
    Vec u;
    Mat X_train;
    KernelSpec kernel;
    // rfrr: f(x) = sum_j a(j) avg_g sigma(<w_j, g.x>)
    Vec a;
    std::shared_ptr<const FeatureBank> bank;

    double train_mse = 0.0;
    // Ridge value actually added to the regularized diagonal, after the
    // d^alpha scaling, the min-norm floor, and any jitter escalation.
    double lambda_eff = 0.0;

    const DomainSpec& train_domain() const;
};

struct RiskEstimate {
    double mse = 0.0;
    double stderr_mc = 0.0; // sample sd of squared errors / sqrt(n_test)
    Index n_test = 0;
};

// Solves (K + (lambda/d^alpha) I) u = y.
RidgeFit fit_krr(const GramMatrix& K, const Vec& y, const RidgeConfig& cfg);

// Solves (Z^T Z + (N lambda/d^alpha) I) a = Z^T y; in the overparametrized
// regime (N > n) the equivalent dual system a = Z^T (Z Z^T + gamma I)^{-1} y
// is factorized instead, which gives the identical solution and the min-norm
// interpolant at lambda = 0.
RidgeFit fit_rfrr(const DesignMatrix& Z, const Vec& y, const RidgeConfig& cfg);

Vec predict(const RidgeFit& fit, const Mat& X_new, int threads = 1);

using TargetFn = std::function<Vec(const Mat&)>;

// Mean squared error of the fit against the noiseless target on n_test fresh
// points sampled from the fit's training domain. noise_sd is carried for
// provenance only: label noise enters training, never evaluation.
RiskEstimate estimate_risk(const RidgeFit& fit, const TargetFn& target,
                           Index n_test, uint64_t seed, double noise_sd = 0.0,
                           int threads = 1);

} // namespace orbit

#endif // ORBIT_REGRESSION_HPP
