#include "orbit/augmentation.hpp"

#include <cmath>

namespace orbit {

namespace {

constexpr Index kAugmentedRowGuard = 8000;

// Group elements as the scalar arguments apply_group expects: indices for
// discrete groups, quadrature nodes u = m/M for shift_band.
std::vector<double> group_elements(const GroupSpec& group) {
    std::vector<double> out;
    const Index n = group.size();
    out.reserve(static_cast<size_t>(n));
    for (Index e = 0; e < n; ++e) {
        if (group.kind == GroupKind::shift_band)
            out.push_back(static_cast<double>(e) /
                          static_cast<double>(n));
        else
            out.push_back(static_cast<double>(e));
    }
    return out;
}

} // namespace

Vec SymmetrizedPredictor::operator()(const Mat& X) const {
    const std::vector<double> elems = group_elements(group);
    Vec acc = Vec::Zero(X.rows());
    Mat Xg(X.rows(), X.cols());
    for (double g : elems) {
        for (Index i = 0; i < X.rows(); ++i)
            Xg.row(i) = apply_group(group, g, X.row(i).transpose()).transpose();
        acc += inner(Xg);
    }
    return acc / static_cast<double>(elems.size());
}

SymmetrizedPredictor symmetrize(TargetFn f, const GroupSpec& group) {
    if (!f) throw ConfigError("symmetrize: empty predictor");
    return {std::move(f), group};
}

SymmetrizedPredictor symmetrize(const RidgeFit& fit, const GroupSpec& group,
                                int threads) {
    TargetFn f = [fit, threads](const Mat& X) {
        return predict(fit, X, threads);
    };
    return {std::move(f), group};
}

SandwichReport check_prop1_sandwich(const TargetSpec& target,
                                    const RidgeFit& fit,
                                    const GroupSpec& group, int ell,
                                    Index n_mc, uint64_t seed, int threads) {
    target.validate();
    if (ell < 0) throw ConfigError("check_prop1_sandwich: ell must be >= 0");
    if (n_mc < 2)
        throw ConfigError("check_prop1_sandwich: n_mc must be >= 2");
    const DomainSpec& domain = fit.train_domain();
    if (domain.d != target.d)
        throw ConfigError("check_prop1_sandwich: dimension mismatch");
    group.validate(domain);

    const Mat X = sample_domain(domain, n_mc, seed, "sandwich-mc");
    const Vec f = eval_target(target, X);
    const Vec fhat = predict(fit, X, threads);
    const Vec sfhat = symmetrize(fit, group, threads)(X);

    // P_{<=ell} f is f itself for deg <= ell and 0 otherwise: the cyclic
    // window targets are pure degree-q polynomials.
    const bool target_below = target.degree <= ell;
    const Vec plow = target_below ? f : Vec(Vec::Zero(n_mc));

    auto mean_and_se = [n_mc](const Vec& sq) {
        const double m = sq.mean();
        const double var = (sq.array() - m).square().sum() /
                           static_cast<double>(n_mc - 1);
        return std::pair<double, double>(
            m, std::sqrt(var / static_cast<double>(n_mc)));
    };

    SandwichReport rep;
    const auto [eps_sq, eps_sq_se] =
        mean_and_se((fhat - plow).array().square());
    const auto [sym_err, sym_se] = mean_and_se((f - sfhat).array().square());
    const auto [fit_err, fit_se] = mean_and_se((f - fhat).array().square());
    rep.eps = std::sqrt(std::max(0.0, eps_sq));
    rep.eps_sq_stderr = eps_sq_se;
    rep.sym_err = sym_err;
    rep.sym_err_stderr = sym_se;
    rep.fit_err = fit_err;
    rep.fit_err_stderr = fit_se;
    rep.tail_sq = target_below ? 0.0 : target_norm_sq(target, domain);

    const double tail = std::sqrt(rep.tail_sq);
    rep.lower_bound = rep.tail_sq - 2.0 * rep.eps * tail;
    rep.upper_bound = rep.tail_sq + 2.0 * rep.eps * tail + eps_sq;

    // Delta-method error for eps = sqrt(eps_sq).
    const double eps_se =
        rep.eps > 1e-12 ? eps_sq_se / (2.0 * rep.eps) : std::sqrt(eps_sq_se);
    rep.lower_ok =
        rep.sym_err >= rep.lower_bound - 3.0 * (sym_se + 2.0 * tail * eps_se);
    rep.mid_ok = rep.fit_err >= rep.sym_err - 3.0 * (sym_se + fit_se);
    rep.upper_ok =
        rep.fit_err <=
        rep.upper_bound + 3.0 * (fit_se + 2.0 * tail * eps_se + eps_sq_se);
    return rep;
}

RidgeFit fit_augmented_krr(const Mat& X, const Vec& y,
                           const KernelSpec& base_kernel_without_group,
                           const GroupSpec& group, double lambda,
                           int threads) {
    base_kernel_without_group.validate();
    if (base_kernel_without_group.group.kind != GroupKind::trivial)
        throw ConfigError(
            "fit_augmented_krr: pass the base kernel with the trivial group; "
            "the group enters through augmentation");
    if (group.kind == GroupKind::shift_band)
        throw ConfigError(
            "fit_augmented_krr: augmentation needs a finite discrete group");
    group.validate(base_kernel_without_group.domain);
    const Index n = X.rows();
    if (n < 1) throw ConfigError("fit_augmented_krr: empty training set");
    if (y.size() != n)
        throw ConfigError("fit_augmented_krr: label count mismatch");

    const Index G = group.size();
    const Index n_aug = n * G;
    if (n_aug > kAugmentedRowGuard)
        throw ConfigError(
            "fit_augmented_krr: " + std::to_string(n_aug) +
            " augmented rows exceed the guard of " +
            std::to_string(kAugmentedRowGuard) +
            "; fit the group-averaged kernel with fit_krr instead, which is "
            "mathematically equivalent");

    Mat X_aug(n_aug, X.cols());
    Vec y_aug(n_aug);
    const std::vector<double> elems = group_elements(group);
    for (Index i = 0; i < n; ++i)
        for (Index e = 0; e < G; ++e) {
            X_aug.row(i * G + e) =
                apply_group(group, elems[static_cast<size_t>(e)],
                            X.row(i).transpose())
                    .transpose();
            y_aug(i * G + e) = y(i);
        }

    RidgeConfig cfg;
    cfg.mode = RidgeMode::krr;
    cfg.lambda = static_cast<double>(G) * lambda;
    cfg.alpha = group.alpha();
    const GramMatrix K = gram(base_kernel_without_group, X_aug, threads);
    return fit_krr(K, y_aug, cfg);
}

double check_prop2_equivalence(const Mat& X, const Vec& y,
                               const KernelSpec& kernel_h,
                               const GroupSpec& group, double lambda,
                               const Mat& X_test, int threads) {
    KernelSpec invariant = kernel_h;
    invariant.group = group;
    invariant.validate();

    RidgeConfig cfg;
    cfg.mode = RidgeMode::krr;
    cfg.lambda = lambda;
    cfg.alpha = group.alpha();
    const RidgeFit fit_inv = fit_krr(gram(invariant, X, threads), y, cfg);
    const RidgeFit fit_aug =
        fit_augmented_krr(X, y, kernel_h, group, lambda, threads);

    const Vec gap = predict(fit_aug, X_test, threads) -
                    predict(fit_inv, X_test, threads);
    return gap.cwiseAbs().maxCoeff();
}

} // namespace orbit
