#ifndef ORBIT_ORTHOPOLY_HPP
#define ORBIT_ORTHOPOLY_HPP

#include "orbit/domain.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace orbit {

using ScalarFn = std::function<double(double)>;

// Dimension of the degree-k polynomial eigenspace on the domain:
// sphere: ((2k+d-2)/(d-2)) * C(k+d-3, k); hypercube: C(d, k).
double basis_dimension(const DomainSpec& domain, int k);

// log C(n, k) via lgamma, stable for large n.
double log_binomial(double n, double k);

// Orthogonal polynomials Q_k on inner products of domain points, normalized
// to Q_k(d) = 1. The natural argument is s = <x, y> in [-d, d]; internally
// everything is expressed in t = s/d in [-1, 1].
//
// Sphere: rescaled classical Gegenbauer polynomials with parameter (d-2)/2,
// orthogonal against the weight (1-t^2)^((d-3)/2). Hypercube: Krawtchouk-
// derived polynomials, orthogonal against the binomial law of s, satisfying
//   Q_{k+1}(s) = (s*Q_k(s) - k*Q_{k-1}(s)) / (d-k),
// which matches (1/C(d,k)) * sum_{|S|=k} x^S y^S at every admissible s.
class GegenbauerBasis {
  public:
    GegenbauerBasis(const DomainSpec& domain, int max_degree);

    const DomainSpec& domain() const { return domain_; }
    int max_degree() const { return max_degree_; }

    // Monomial coefficients of Q_k in t = s/d (degree-major, constant first).
    const Vec& coefficients(int k) const;

    // Evaluate Q_k at inner-product argument s in [-d, d].
    double eval(int k, double s) const { return eval_t(k, s / domain_.d); }
    // Evaluate Q_k at the normalized argument t = s/d.
    double eval_t(int k, double t) const;
    // All degrees 0..max_degree at one argument, by the recurrence.
    Vec eval_all_t(double t) const;

  private:
    DomainSpec domain_;
    int max_degree_ = 0;
    std::vector<Vec> coeff_; // coeff_[k] = monomial coefficients in t
};

GegenbauerBasis build_gegenbauer(const DomainSpec& domain, int k_max);

// Gauss-type quadrature rule with probability-normalized weights
// (weights sum to 1).
struct QuadratureRule {
    Vec nodes;
    Vec weights;
};

// Gauss rule for the symmetric Jacobi weight (1-t^2)^lambda on [-1, 1],
// normalized to a probability measure. Nodes/weights via Golub-Welsch on the
// symmetric tridiagonal recurrence matrix. With lambda = (d-3)/2 this is the
// law of <e_1, x>/sqrt(d) for x uniform on the sphere of radius sqrt(d).
QuadratureRule gauss_jacobi_symmetric(int order, double lambda);

// Gauss-Hermite rule for the standard normal probability measure.
QuadratureRule gauss_hermite(int order);

// Per-degree coefficients of an activation against the Q_k basis:
// xi_k = E[sigma(u) * Q_k(sqrt(d)*u)] where u is distributed as the first
// coordinate inner product <e_1, x> (sphere: continuous weight, via the
// Gauss-Jacobi rule above; hypercube: exact finite sum over
// s in {-d, -d+2, ..., d} with weights 2^-d * C(d, (d+s)/2), u = s/sqrt(d)).
struct ActivationSpectrum {
    DomainSpec domain;
    Vec xi;                   // xi[k], k = 0..k_max
    Vec dim;                  // B(A_d; k)
    double sigma_sq = 0.0;    // E[sigma(u)^2]
    double residual_mass = 0; // sigma_sq - sum_k xi_k^2 * B_k  (tail mass)
    std::shared_ptr<const GegenbauerBasis> basis;
};

// quad_points: sphere quadrature order; must give degree-(2*k_max) exactness
// at minimum (enforced as order >= 2*k_max + 8). Ignored on the hypercube,
// where the sum is exact.
ActivationSpectrum activation_spectrum(const ScalarFn& sigma,
                                       const DomainSpec& domain, int k_max,
                                       int quad_points = 0);

// Hermite coefficients mu_k = E[sigma(G) He_k(G)] in the classical
// (probabilists') normalization E[He_j He_k] = k! delta_jk.
struct HermiteCoeffs {
    Vec mu;
};

double hermite_eval(int k, double x); // He_k(x)

HermiteCoeffs hermite_coeffs(const ScalarFn& sigma, int k_max,
                             int quad_points = 200);

// The rescaled Gegenbauer coefficient xi_{d,k} * sqrt(B(S^{d-1};k) * k!) for
// each d in d_list; converges to mu_k(sigma) as d grows.
Vec gegenbauer_hermite_limit_check(const ScalarFn& sigma, int k,
                                   const std::vector<int>& d_list,
                                   int quad_points = 400);

} // namespace orbit

#endif // ORBIT_ORTHOPOLY_HPP
