#include "orbit/targets.hpp"

#include <cmath>

namespace orbit {

TargetSpec TargetSpec::lin(Index d) { return {TargetKind::lin, d, 1}; }
TargetSpec TargetSpec::quad(Index d) { return {TargetKind::quad, d, 2}; }
TargetSpec TargetSpec::cube(Index d) { return {TargetKind::cube, d, 3}; }
TargetSpec TargetSpec::cyclic_monomial(Index d, int degree) {
    return {TargetKind::cyclic_monomial, d, degree};
}

void TargetSpec::validate() const {
    if (d < 3) throw ConfigError("TargetSpec: d must be >= 3");
    if (degree < 1) throw ConfigError("TargetSpec: degree must be >= 1");
    // Distinct coordinate windows keep the target pure-degree; require the
    // window to fit with room so no window wraps onto itself.
    if (degree > d - 2)
        throw ConfigError("TargetSpec: degree must be <= d - 2");
    switch (kind) {
    case TargetKind::lin:
        if (degree != 1) throw ConfigError("TargetSpec: lin has degree 1");
        break;
    case TargetKind::quad:
        if (degree != 2) throw ConfigError("TargetSpec: quad has degree 2");
        break;
    case TargetKind::cube:
        if (degree != 3) throw ConfigError("TargetSpec: cube has degree 3");
        break;
    case TargetKind::cyclic_monomial: break;
    }
}

const char* to_string(TargetKind kind) {
    switch (kind) {
    case TargetKind::lin: return "lin";
    case TargetKind::quad: return "quad";
    case TargetKind::cube: return "cube";
    case TargetKind::cyclic_monomial: return "cyclic_monomial";
    }
    return "?";
}

double eval_target(const TargetSpec& spec, const Vec& x) {
    spec.validate();
    if (x.size() != spec.d)
        throw ConfigError("eval_target: point dimension mismatch");
    const Index d = spec.d;
    double acc = 0.0;
    for (Index i = 0; i < d; ++i) {
        double prod = 1.0;
        for (int j = 0; j < spec.degree; ++j) prod *= x((i + j) % d);
        acc += prod;
    }
    return acc / std::sqrt(static_cast<double>(d));
}

Vec eval_target(const TargetSpec& spec, const Mat& X) {
    spec.validate();
    if (X.cols() != spec.d)
        throw ConfigError("eval_target: point dimension mismatch");
    const Index d = spec.d;
    const double root_d = std::sqrt(static_cast<double>(d));
    Vec out(X.rows());
    for (Index r = 0; r < X.rows(); ++r) {
        double acc = 0.0;
        for (Index i = 0; i < d; ++i) {
            double prod = 1.0;
            for (int j = 0; j < spec.degree; ++j) prod *= X(r, (i + j) % d);
            acc += prod;
        }
        out(r) = acc / root_d;
    }
    return out;
}

std::function<Vec(const Mat&)> target_fn(const TargetSpec& spec) {
    spec.validate();
    return [spec](const Mat& X) { return eval_target(spec, X); };
}

double target_norm_sq(const TargetSpec& spec, const DomainSpec& domain) {
    spec.validate();
    domain.validate();
    if (domain.d != spec.d)
        throw ConfigError("target_norm_sq: dimension mismatch");
    if (domain.kind == DomainKind::hypercube) return 1.0;
    const double d = static_cast<double>(spec.d);
    double norm_sq = 1.0;
    for (int j = 0; j < spec.degree; ++j) norm_sq *= d / (d + 2.0 * j);
    return norm_sq;
}

} // namespace orbit
