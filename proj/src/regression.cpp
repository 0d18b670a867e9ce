#include "orbit/regression.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>

namespace orbit {

const DomainSpec& RidgeFit::train_domain() const {
    return mode == RidgeMode::krr ? kernel.domain : bank->domain;
}

namespace {

constexpr double kMinNormFloor = 1e-10;

// Solves (A + gamma I) x = b for symmetric PSD A: Cholesky, one 10x jitter
// escalation, then an eigendecomposition pseudo-solve. Returns the gamma
// actually used.
double regularized_solve(const Mat& A, double gamma, const Vec& b, Vec& x,
                         const char* who) {
    const Index n = A.rows();
    Mat reg = A;
    for (int attempt = 0; attempt < 2; ++attempt) {
        const double g = attempt == 0 ? gamma : 10.0 * gamma;
        reg = A;
        reg.diagonal().array() += g;
        Eigen::LLT<Mat> llt(reg);
        if (llt.info() == Eigen::Success) {
            x = llt.solve(b);
            if (x.allFinite()) return g;
        }
        if (gamma == 0.0) break; // nothing to escalate
    }
    Eigen::SelfAdjointEigenSolver<Mat> eig(A);
    if (eig.info() != Eigen::Success) {
        const double dmax = A.diagonal().cwiseAbs().maxCoeff();
        const double dmin = A.diagonal().cwiseAbs().minCoeff();
        throw NumericError(
            std::string(who) +
            ": factorization failed after jitter escalation; diagonal "
            "condition estimate " +
            std::to_string(dmax / std::max(dmin, 1e-300)));
    }
    const Vec& ev = eig.eigenvalues();
    const double ev_max = std::max(ev.cwiseAbs().maxCoeff(), 0.0);
    const double cut = 1e-14 * std::max(ev_max, 1.0) + gamma;
    Vec proj = eig.eigenvectors().transpose() * b;
    for (Index i = 0; i < n; ++i) {
        const double den = ev(i) + gamma;
        proj(i) = den > cut ? proj(i) / den : 0.0;
    }
    x = eig.eigenvectors() * proj;
    return gamma;
}

double mean_sq(const Vec& r) {
    return r.squaredNorm() / static_cast<double>(r.size());
}

// Effective diagonal ridge: lambda / d^alpha, with the min-norm floor
// relative to the matrix scale when lambda = 0.
double effective_gamma(double lambda, double alpha, double d, double trace,
                       Index n) {
    if (lambda < 0.0) throw ConfigError("ridge: lambda must be >= 0");
    if (lambda == 0.0)
        return kMinNormFloor * std::max(trace, 0.0) /
               static_cast<double>(n);
    return lambda / std::pow(d, alpha);
}

} // namespace

RidgeFit fit_krr(const GramMatrix& K, const Vec& y, const RidgeConfig& cfg) {
    if (cfg.mode != RidgeMode::krr)
        throw ConfigError("fit_krr: config mode is not krr");
    const Index n = K.K.rows();
    if (n < 1 || K.K.cols() != n)
        throw ConfigError("fit_krr: Gram matrix is not square");
    if (y.size() != n) throw ConfigError("fit_krr: label count mismatch");
    if (K.X.rows() != n)
        throw ConfigError("fit_krr: Gram matrix carries no point set");

    const double gamma =
        effective_gamma(cfg.lambda, cfg.alpha,
                        static_cast<double>(K.kernel.group.d),
                        K.K.trace(), n);
    RidgeFit fit;
    fit.mode = RidgeMode::krr;
    fit.config = cfg;
    fit.kernel = K.kernel;
    fit.X_train = K.X;
    fit.lambda_eff = regularized_solve(K.K, gamma, y, fit.u, "fit_krr");
    fit.train_mse = mean_sq(K.K * fit.u - y);
    return fit;
}

RidgeFit fit_rfrr(const DesignMatrix& Z, const Vec& y,
                  const RidgeConfig& cfg) {
    if (cfg.mode != RidgeMode::rfrr)
        throw ConfigError("fit_rfrr: config mode is not rfrr");
    const Index n = Z.Z.rows();
    const Index N = Z.Z.cols();
    if (n < 1 || N < 1) throw ConfigError("fit_rfrr: empty design");
    if (y.size() != n) throw ConfigError("fit_rfrr: label count mismatch");
    if (!Z.bank) throw ConfigError("fit_rfrr: design carries no feature bank");

    const double d = static_cast<double>(Z.bank->domain.d);
    RidgeFit fit;
    fit.mode = RidgeMode::rfrr;
    fit.config = cfg;
    fit.bank = Z.bank;

    if (N <= n) {
        const Mat G = Z.Z.transpose() * Z.Z;
        const double gamma = effective_gamma(
            static_cast<double>(N) * cfg.lambda, cfg.alpha, d, G.trace(), N);
        const Vec rhs = Z.Z.transpose() * y;
        fit.lambda_eff = regularized_solve(G, gamma, rhs, fit.a, "fit_rfrr");
    } else {
        // Dual path: identical solution by the push-through identity,
        // and the min-norm interpolant as gamma -> 0.
        const Mat G = Z.Z * Z.Z.transpose();
        const double gamma = effective_gamma(
            static_cast<double>(N) * cfg.lambda, cfg.alpha, d, G.trace(), n);
        Vec dual;
        fit.lambda_eff = regularized_solve(G, gamma, y, dual, "fit_rfrr");
        fit.a = Z.Z.transpose() * dual;
    }
    fit.train_mse = mean_sq(Z.Z * fit.a - y);
    return fit;
}

Vec predict(const RidgeFit& fit, const Mat& X_new, int threads) {
    if (fit.mode == RidgeMode::krr) {
        if (X_new.cols() != fit.X_train.cols())
            throw ConfigError("predict: point dimension mismatch");
        return cross_gram(fit.kernel, X_new, fit.X_train, threads) * fit.u;
    }
    return design(*fit.bank, X_new, threads).Z * fit.a;
}

RiskEstimate estimate_risk(const RidgeFit& fit, const TargetFn& target,
                           Index n_test, uint64_t seed, double noise_sd,
                           int threads) {
    (void)noise_sd; // training-side only; evaluation is always noiseless
    if (n_test < 2) throw ConfigError("estimate_risk: n_test must be >= 2");
    if (!target) throw ConfigError("estimate_risk: empty target");
    const Mat X_test =
        sample_domain(fit.train_domain(), n_test, seed, "risk-test");
    const Vec pred = predict(fit, X_test, threads);
    const Vec f = target(X_test);
    if (f.size() != n_test)
        throw ConfigError("estimate_risk: target returned wrong length");
    const Vec sq = (f - pred).array().square();
    RiskEstimate est;
    est.n_test = n_test;
    est.mse = sq.mean();
    const double var =
        (sq.array() - est.mse).square().sum() /
        static_cast<double>(n_test - 1);
    est.stderr_mc = std::sqrt(var / static_cast<double>(n_test));
    return est;
}

} // namespace orbit
