#ifndef ORBIT_GROUP_HPP
#define ORBIT_GROUP_HPP

#include "orbit/domain.hpp"

#include <unsupported/Eigen/FFT>

#include <functional>

namespace orbit {

enum class GroupKind { trivial, cyc1d, cyc2d, shift_band };

// Symmetry group acting orthogonally on the domain:
//   trivial     — identity only.
//   cyc1d       — cyclic coordinate shifts, (g_i.x)_j = x_{(j+i) mod d}.
//   cyc2d       — 2-D cyclic shifts of a d1 x d2 grid (d = d1*d2, row-major).
//   shift_band  — band-limited continuous shifts on the sphere (odd d):
//                 g_u fixes x_0 and rotates the pair (x_{2b-1}, x_{2b}) by
//                 angle 2*pi*b*u, u in [0,1); Haar integrals are evaluated on
//                 M equispaced u-nodes (exact for trig polynomials of
//                 degree < M).
//
// alpha is the declared degeneracy exponent of the group family: the ratio of
// the full degree-k polynomial subspace dimension to its invariant part grows
// like d^alpha (0 for trivial, 1 for the three nontrivial groups).
struct GroupSpec {
    GroupKind kind = GroupKind::trivial;
    int d = 0;
    int d1 = 0, d2 = 0; // cyc2d grid shape
    int quad_m = 0;     // shift_band node count M

    static GroupSpec trivial(int d) { return {GroupKind::trivial, d}; }
    static GroupSpec cyclic(int d) { return {GroupKind::cyc1d, d}; }
    static GroupSpec cyclic2d(int d1, int d2) {
        return {GroupKind::cyc2d, d1 * d2, d1, d2};
    }
    // M <= 0 picks the default node count: 4*d (callers that know their
    // kernel is polynomial of degree q should pass M = q*floor(d/2) + 1,
    // the smallest exact rule).
    static GroupSpec shift_band(int d, int M = 0) {
        return {GroupKind::shift_band, d, 0, 0, M > 0 ? M : 4 * d};
    }

    double alpha() const { return kind == GroupKind::trivial ? 0.0 : 1.0; }
    // Number of group elements (discrete) or quadrature nodes (shift_band).
    Index size() const {
        switch (kind) {
        case GroupKind::trivial: return 1;
        case GroupKind::cyc1d: return d;
        case GroupKind::cyc2d: return d;
        case GroupKind::shift_band: return quad_m;
        }
        return 1;
    }
    void validate(const DomainSpec& domain) const;
    bool operator==(const GroupSpec&) const = default;
};

const char* to_string(GroupKind kind);

// Action of one group element on a point. For discrete groups g is an
// integral element index in [0, size()); for shift_band it is u in [0, 1).
Vec apply_group(const GroupSpec& group, double g, const Vec& x);

// Repeated evaluation of all group inner products <x, g.y> against a fixed
// group. Owns the FFT plans and scratch, so one instance per worker thread;
// all methods are deterministic. Cyclic correlations use the FFT path for
// d >= 64 and the direct O(d^2) sum below (threshold fixed once, for
// determinism).
class Correlator {
  public:
    explicit Correlator(const GroupSpec& group);

    const GroupSpec& group() const { return group_; }
    Index size() const { return group_.size(); }
    bool fft_path() const { return fft_path_; }

    // out[j] = <x, g_j . y> for every group element / u-node, in index order.
    void correlate(const Vec& x, const Vec& y, Vec& out);

    // FFT-cached variant: precompute spectra once per point, then correlate
    // pairs in O(d log d). Only meaningful when fft_path(); falls back to
    // storing the point itself otherwise.
    CVec transform(const Vec& x);
    void correlate_spectra(const CVec& fx, const CVec& fy, Vec& out);

  private:
    void correlate_direct(const Vec& x, const Vec& y, Vec& out) const;
    void fft2_grid(CMat& grid, bool inverse);

    GroupSpec group_;
    bool fft_path_ = false;
    Eigen::FFT<double> fft_row_, fft_col_;
    CVec scratch_;
};

// Convenience one-shot form of Correlator::correlate.
Vec group_inner_products(const GroupSpec& group, const Vec& x, const Vec& y);

// Haar average of per-element values (uniform over discrete elements;
// equispaced periodic rule over [0,1) for shift_band — both are the mean).
double haar_average(const Vec& values);

// Haar average of a function of the group element: fn receives the element
// index (discrete groups) or the u-node (shift_band).
double haar_average(const GroupSpec& group,
                    const std::function<double(double)>& fn);

} // namespace orbit

#endif // ORBIT_GROUP_HPP
