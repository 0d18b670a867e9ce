#ifndef ORBIT_AUGMENTATION_HPP
#define ORBIT_AUGMENTATION_HPP

#include "orbit/regression.hpp"
#include "orbit/targets.hpp"

namespace orbit {

// Pointwise group average of a predictor: (Sf)(x) = avg_g f(g.x).
// The wrapped evaluator is batch-valued; for continuous shift_band groups the
// average runs over the group's quadrature nodes.
struct SymmetrizedPredictor {
    TargetFn inner;
    GroupSpec group;

    Vec operator()(const Mat& X) const;
};

SymmetrizedPredictor symmetrize(TargetFn f, const GroupSpec& group);
SymmetrizedPredictor symmetrize(const RidgeFit& fit, const GroupSpec& group,
                                int threads = 1);

// Empirical check of the output-symmetrization sandwich
//   tail^2 - 2 eps tail  <=  |f - S fhat|^2  <=  |f - fhat|^2
//                        <=  tail^2 + 2 eps tail + eps^2
// where tail^2 = |P_{>ell} f|^2 is exact for the pure-degree cyclic targets
// (0 when deg <= ell, the exact target norm otherwise) and
// eps = |fhat - P_{<=ell} f| is estimated by Monte Carlo. Each inequality is
// asserted with 3-standard-error slack, with eps's own sampling error
// propagated into the bounds by the delta method.
struct SandwichReport {
    double tail_sq = 0.0;   // exact |P_{>ell} f|^2
    double eps = 0.0;       // MC estimate of |fhat - P_{<=ell} f|
    double sym_err = 0.0;   // MC |f - S fhat|^2
    double fit_err = 0.0;   // MC |f - fhat|^2
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    double sym_err_stderr = 0.0;
    double fit_err_stderr = 0.0;
    double eps_sq_stderr = 0.0;
    bool lower_ok = false;
    bool mid_ok = false;
    bool upper_ok = false;

    bool ok() const { return lower_ok && mid_ok && upper_ok; }
};

SandwichReport check_prop1_sandwich(const TargetSpec& target,
                                    const RidgeFit& fit,
                                    const GroupSpec& group, int ell,
                                    Index n_mc, uint64_t seed,
                                    int threads = 1);

// Full data augmentation: replaces each sample (x_i, y_i) by its |G| orbit
// copies {(g.x_i, y_i)} and fits standard KRR with the plain (non-averaged)
// kernel at ridge level |G|*lambda, scaled by d^alpha of the augmenting
// group. With that convention the fit is exactly the invariant-kernel ridge
// fit at level lambda (see check_prop2_equivalence). Requires a discrete
// group and at most 8000 augmented rows.
RidgeFit fit_augmented_krr(const Mat& X, const Vec& y,
                           const KernelSpec& base_kernel_without_group,
                           const GroupSpec& group, double lambda,
                           int threads = 1);

// Runs both pipelines — augmented KRR on the plain kernel, invariant KRR on
// the group-averaged kernel — and returns the max absolute prediction gap
// over X_test. Expected at round-off scale for lambda > 0.
double check_prop2_equivalence(const Mat& X, const Vec& y,
                               const KernelSpec& kernel_h,
                               const GroupSpec& group, double lambda,
                               const Mat& X_test, int threads = 1);

} // namespace orbit

#endif // ORBIT_AUGMENTATION_HPP
