#ifndef ORBIT_TARGETS_HPP
#define ORBIT_TARGETS_HPP

#include "orbit/domain.hpp"

#include <functional>

namespace orbit {

// Cyclically invariant pure-degree polynomial targets:
//   f(x) = (1/sqrt(d)) * sum_i  x_i x_{i+1} ... x_{i+q-1}   (indices mod d)
// with degree q = 1 (lin), 2 (quad), 3 (cube), or a custom window length.
// Each is invariant under every cyclic shift by construction, and is a pure
// degree-q polynomial (zero projection onto lower degrees) on both domains.
enum class TargetKind { lin, quad, cube, cyclic_monomial };

struct TargetSpec {
    TargetKind kind = TargetKind::lin;
    Index d = 0;
    int degree = 1; // window length; fixed to 1/2/3 for lin/quad/cube

    static TargetSpec lin(Index d);
    static TargetSpec quad(Index d);
    static TargetSpec cube(Index d);
    static TargetSpec cyclic_monomial(Index d, int degree);

    void validate() const;
};

const char* to_string(TargetKind kind);

double eval_target(const TargetSpec& spec, const Vec& x);
Vec eval_target(const TargetSpec& spec, const Mat& X);

// Batch evaluator adapter.
std::function<Vec(const Mat&)> target_fn(const TargetSpec& spec);

// Exact squared L2 norm of the target under the domain's uniform measure.
// Hypercube: 1 (the monomials are orthonormal characters). Sphere of radius
// sqrt(d): prod_{j=0}^{q-1} d/(d+2j), from the moments
// E[x_1^2 ... x_q^2] = d^q / (d (d+2) ... (d+2(q-1))); this tends to 1 as
// d grows but differs at finite d (e.g. 0.9375 for quad at d=30).
double target_norm_sq(const TargetSpec& spec, const DomainSpec& domain);

} // namespace orbit

#endif // ORBIT_TARGETS_HPP
