#ifndef ORBIT_KERNELS_HPP
#define ORBIT_KERNELS_HPP

#include "orbit/group.hpp"
#include "orbit/orthopoly.hpp"

#include <memory>
#include <string>

namespace orbit {

// depth-L NTK scalar map h_NTK^L(u) for the fully-connected ReLU network,
// via the recursion
//   h0(u) = (pi - arccos u)/pi,  h1(u) = u*h0(u) + sqrt(1-u^2)/pi,
//   h^1 = h_NTK^1 = u,  h^k = h1(h^{k-1}),
//   h_NTK^k = h_NTK^{k-1} * h0(h^{k-1}) + h^k.
// u is clamped to [-1,1] before the arccos.
double ntk_recursion(int depth, double u);

enum class KernelBase { ntk, spectral, poly };
enum class InnerNorm { inner_over_d, cosine };

std::string to_string(KernelBase b);
std::string to_string(InnerNorm n);

// Inner-product kernel on a domain, averaged over a group:
//   H(x, y) = avg_g h(<x, g.y> / scale)
// with scale = d (inner_over_d) or |x||y| (cosine). The base scalar map h is
// one of:
//   ntk:      h(u) = h_NTK^depth(u)
//   spectral: h(u) = sum_k xi_k^2 B_k Q_k(d*u), from an ActivationSpectrum
//   poly:     h(u) = sum_j coeffs[j] u^j
// With the trivial group this reduces to h(<x,y>/scale) exactly.
struct KernelSpec {
    KernelBase base = KernelBase::ntk;
    int depth = 2;                                      // ntk only
    Vec poly_coeffs;                                    // poly only
    std::shared_ptr<const ActivationSpectrum> spectrum; // spectral only
    DomainSpec domain;
    GroupSpec group;
    InnerNorm norm = InnerNorm::inner_over_d;

    static KernelSpec ntk(int depth, DomainSpec domain, GroupSpec group,
                          InnerNorm norm = InnerNorm::inner_over_d);
    static KernelSpec spectral(std::shared_ptr<const ActivationSpectrum> s,
                               GroupSpec group,
                               InnerNorm norm = InnerNorm::inner_over_d);
    static KernelSpec poly(Vec coeffs, DomainSpec domain, GroupSpec group,
                           InnerNorm norm = InnerNorm::inner_over_d);

    void validate() const;
    // Short human-readable tag, also hashed into Gram fingerprints.
    std::string describe() const;
    // Base map applied elementwise; u must already be normalized.
    double base_value(double u) const;
};

struct GramMatrix {
    Mat K;
    KernelSpec kernel;
    Mat X;                    // the point set the Gram was assembled from
    uint64_t fingerprint = 0; // hash of kernel description + point bytes
};

// Byte hash of a matrix (row-major traversal), used for fingerprints.
uint64_t matrix_fingerprint(const Mat& X);

double kernel_value(const KernelSpec& spec, const Vec& x, const Vec& y);

// Symmetric Gram of kernel_value over the rows of X (points are rows).
// Parallelized over row blocks; result is identical for any thread count.
GramMatrix gram(const KernelSpec& spec, const Mat& X, int threads = 1);

// Rectangular Gram: out(i, j) = H(A.row(i), B.row(j)).
Mat cross_gram(const KernelSpec& spec, const Mat& A, const Mat& B,
               int threads = 1);

// Monte-Carlo two-layer group-averaged ReLU network tangent kernel:
// samples a_i ~ N(0,1) and w_i uniform on the unit sphere, builds
//   f(x) = sqrt(2/N) * sum_i a_i * avg_g relu(<w_i, g.x>),
// and returns <grad f(x), grad f(y)> over both parameter blocks, with the
// first-layer gradient contracted through <g.x, g'.y>/d. As N grows this
// converges to the group-averaged depth-2 NTK, avg_g h_NTK^2(<x,g.y>/d).
// Requires a sphere-domain point set and a discrete group.
double empirical_cntk(int width, const GroupSpec& group, const Vec& x,
                      const Vec& y, uint64_t seed);

} // namespace orbit

#endif // ORBIT_KERNELS_HPP
