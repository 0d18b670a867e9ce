#include "orbit/orthopoly.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace orbit {

namespace {

constexpr int kMaxTableDegree = 16;

} // namespace

double log_binomial(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
           std::lgamma(n - k + 1.0);
}

double basis_dimension(const DomainSpec& domain, int k) {
    if (k < 0) throw ConfigError("basis_dimension: negative degree");
    if (k == 0) return 1.0;
    const double d = static_cast<double>(domain.d);
    if (domain.kind == DomainKind::hypercube) {
        if (k > domain.d) return 0.0;
        return std::exp(log_binomial(d, k));
    }
    // ((2k + d - 2) / (d - 2)) * C(k + d - 3, k)
    const double dk = static_cast<double>(k);
    return (2.0 * dk + d - 2.0) / (d - 2.0) *
           std::exp(log_binomial(dk + d - 3.0, dk));
}

GegenbauerBasis::GegenbauerBasis(const DomainSpec& domain, int max_degree)
    : domain_(domain), max_degree_(max_degree) {
    domain_.validate();
    if (max_degree < 0)
        throw ConfigError("GegenbauerBasis: negative max_degree");
    if (max_degree > kMaxTableDegree)
        throw ConfigError("GegenbauerBasis: max_degree exceeds table cap " +
                          std::to_string(kMaxTableDegree));
    if (domain_.kind == DomainKind::hypercube && max_degree > domain_.d)
        throw ConfigError(
            "GegenbauerBasis: degree exceeds hypercube dimension");

    const double d = static_cast<double>(domain_.d);
    coeff_.resize(max_degree_ + 1);
    coeff_[0] = Vec::Ones(1);
    if (max_degree_ >= 1) {
        coeff_[1] = Vec::Zero(2);
        coeff_[1](1) = 1.0; // Q_1(t) = t
    }
    for (int k = 2; k <= max_degree_; ++k) {
        const Vec& p1 = coeff_[k - 1];
        const Vec& p2 = coeff_[k - 2];
        Vec next = Vec::Zero(k + 1);
        double a, b, c; // Q_k = (a * t * Q_{k-1} - b * Q_{k-2}) / c
        if (domain_.kind == DomainKind::sphere) {
            a = 2.0 * k + d - 4.0;
            b = k - 1.0;
            c = k + d - 3.0;
        } else {
            // hypercube recurrence, advanced from degree k-1:
            // Q_k = (d * t * Q_{k-1} - (k-1) * Q_{k-2}) / (d - (k - 1))
            a = d;
            b = k - 1.0;
            c = d - (k - 1.0);
        }
        next.segment(1, k) += a * p1;
        next.head(k - 1) -= b * p2;
        coeff_[k] = next / c;
    }
}

const Vec& GegenbauerBasis::coefficients(int k) const {
    if (k < 0 || k > max_degree_)
        throw ConfigError("GegenbauerBasis: degree out of range");
    return coeff_[static_cast<size_t>(k)];
}

double GegenbauerBasis::eval_t(int k, double t) const {
    if (k < 0 || k > max_degree_)
        throw ConfigError("GegenbauerBasis: degree out of range");
    const double d = static_cast<double>(domain_.d);
    double pm2 = 1.0;
    if (k == 0) return pm2;
    double pm1 = t;
    for (int j = 2; j <= k; ++j) {
        double next;
        if (domain_.kind == DomainKind::sphere) {
            next = ((2.0 * j + d - 4.0) * t * pm1 - (j - 1.0) * pm2) /
                   (j + d - 3.0);
        } else {
            next = (d * t * pm1 - (j - 1.0) * pm2) / (d - (j - 1.0));
        }
        pm2 = pm1;
        pm1 = next;
    }
    return pm1;
}

Vec GegenbauerBasis::eval_all_t(double t) const {
    Vec out(max_degree_ + 1);
    out(0) = 1.0;
    if (max_degree_ >= 1) out(1) = t;
    const double d = static_cast<double>(domain_.d);
    for (int j = 2; j <= max_degree_; ++j) {
        if (domain_.kind == DomainKind::sphere) {
            out(j) = ((2.0 * j + d - 4.0) * t * out(j - 1) -
                      (j - 1.0) * out(j - 2)) /
                     (j + d - 3.0);
        } else {
            out(j) =
                (d * t * out(j - 1) - (j - 1.0) * out(j - 2)) / (d - (j - 1.0));
        }
    }
    return out;
}

GegenbauerBasis build_gegenbauer(const DomainSpec& domain, int k_max) {
    return GegenbauerBasis(domain, k_max);
}

namespace {

// Golub-Welsch: nodes are eigenvalues of the symmetric tridiagonal matrix of
// recurrence coefficients; weights are mu_0 times squared first components of
// the normalized eigenvectors. All measures here are probability-normalized,
// so mu_0 = 1.
QuadratureRule golub_welsch(const Vec& offdiag) {
    const Index n = offdiag.size() + 1;
    Eigen::SelfAdjointEigenSolver<Mat> solver;
    solver.computeFromTridiagonal(Vec::Zero(n), offdiag,
                                  Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw NumericError("golub_welsch: tridiagonal eigensolve failed");
    QuadratureRule rule;
    rule.nodes = solver.eigenvalues();
    rule.weights = solver.eigenvectors().row(0).transpose().array().square();
    return rule;
}

} // namespace

QuadratureRule gauss_jacobi_symmetric(int order, double lambda) {
    if (order < 1) throw ConfigError("gauss_jacobi_symmetric: order < 1");
    if (lambda <= -1.0)
        throw ConfigError("gauss_jacobi_symmetric: lambda <= -1");
    Vec offdiag(order - 1);
    for (int n = 1; n < order; ++n) {
        const double num = n * (n + 2.0 * lambda);
        const double den = (2.0 * n + 2.0 * lambda) * (2.0 * n + 2.0 * lambda)
                           - 1.0;
        offdiag(n - 1) = std::sqrt(num / den);
    }
    return golub_welsch(offdiag);
}

QuadratureRule gauss_hermite(int order) {
    if (order < 1) throw ConfigError("gauss_hermite: order < 1");
    Vec offdiag(order - 1);
    for (int n = 1; n < order; ++n) offdiag(n - 1) = std::sqrt(double(n));
    return golub_welsch(offdiag);
}

ActivationSpectrum activation_spectrum(const ScalarFn& sigma,
                                       const DomainSpec& domain, int k_max,
                                       int quad_points) {
    if (!sigma) throw ConfigError("activation_spectrum: empty activation");
    ActivationSpectrum spec;
    spec.domain = domain;
    spec.basis = std::make_shared<const GegenbauerBasis>(domain, k_max);
    spec.xi = Vec::Zero(k_max + 1);
    spec.dim = Vec(k_max + 1);
    for (int k = 0; k <= k_max; ++k) spec.dim(k) = basis_dimension(domain, k);

    const double d = static_cast<double>(domain.d);
    const double sqrt_d = std::sqrt(d);

    Vec nodes_t, weights;
    if (domain.kind == DomainKind::sphere) {
        int order = std::max(quad_points, 2 * k_max + 8);
        if (quad_points <= 0) order = std::max(order, 200);
        QuadratureRule rule =
            gauss_jacobi_symmetric(order, (d - 3.0) / 2.0);
        nodes_t = rule.nodes;
        weights = rule.weights;
    } else {
        // Exact: s ranges over {-d, -d+2, ..., d} with binomial weights.
        nodes_t.resize(domain.d + 1);
        weights.resize(domain.d + 1);
        const double log2d = d * std::log(2.0);
        for (Index m = 0; m <= domain.d; ++m) {
            const double s = 2.0 * static_cast<double>(m) - d;
            nodes_t(m) = s / d;
            weights(m) = std::exp(
                log_binomial(d, static_cast<double>(m)) - log2d);
        }
    }

    double sigma_sq = 0.0;
    for (Index i = 0; i < nodes_t.size(); ++i) {
        const double t = nodes_t(i);
        const double u = sqrt_d * t; // argument handed to the activation
        const double sv = sigma(u);
        if (!std::isfinite(sv))
            throw NumericError(
                "activation_spectrum: activation returned non-finite value");
        const Vec q = spec.basis->eval_all_t(t);
        spec.xi += weights(i) * sv * q;
        sigma_sq += weights(i) * sv * sv;
    }
    spec.sigma_sq = sigma_sq;
    const double captured =
        (spec.xi.array().square() * spec.dim.array()).sum();
    spec.residual_mass = sigma_sq - captured;
    if (spec.residual_mass < -1e-8 * std::max(1.0, sigma_sq))
        throw NumericError(
            "activation_spectrum: captured mass exceeds total (quadrature "
            "inconsistency)");
    if (spec.residual_mass < 0.0) spec.residual_mass = 0.0;
    return spec;
}

double hermite_eval(int k, double x) {
    if (k < 0) throw ConfigError("hermite_eval: negative degree");
    double pm2 = 1.0;
    if (k == 0) return pm2;
    double pm1 = x;
    for (int j = 2; j <= k; ++j) {
        const double next = x * pm1 - (j - 1.0) * pm2;
        pm2 = pm1;
        pm1 = next;
    }
    return pm1;
}

HermiteCoeffs hermite_coeffs(const ScalarFn& sigma, int k_max,
                             int quad_points) {
    if (!sigma) throw ConfigError("hermite_coeffs: empty activation");
    if (k_max < 0) throw ConfigError("hermite_coeffs: negative k_max");
    const int order = std::max(quad_points, 2 * k_max + 8);
    QuadratureRule rule = gauss_hermite(order);
    HermiteCoeffs out;
    out.mu = Vec::Zero(k_max + 1);
    for (Index i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes(i);
        const double sv = sigma(x);
        if (!std::isfinite(sv))
            throw NumericError(
                "hermite_coeffs: activation returned non-finite value");
        for (int k = 0; k <= k_max; ++k)
            out.mu(k) += rule.weights(i) * sv * hermite_eval(k, x);
    }
    return out;
}

Vec gegenbauer_hermite_limit_check(const ScalarFn& sigma, int k,
                                   const std::vector<int>& d_list,
                                   int quad_points) {
    if (k < 0) throw ConfigError("gegenbauer_hermite_limit_check: k < 0");
    Vec out(static_cast<Index>(d_list.size()));
    double log_kfact = std::lgamma(k + 1.0);
    for (size_t i = 0; i < d_list.size(); ++i) {
        DomainSpec dom = DomainSpec::sphere(d_list[i]);
        ActivationSpectrum spec =
            activation_spectrum(sigma, dom, k, quad_points);
        const double scale =
            std::exp(0.5 * (std::log(basis_dimension(dom, k)) + log_kfact));
        out(static_cast<Index>(i)) = spec.xi(k) * scale;
    }
    return out;
}

} // namespace orbit
