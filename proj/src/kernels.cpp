#include "orbit/kernels.hpp"

#include <cmath>
#include <vector>

namespace orbit {

namespace {

constexpr double kPi = 3.14159265358979323846;

double clamp_unit(double u) { return std::min(1.0, std::max(-1.0, u)); }

// h0(u) = (pi - arccos u)/pi
double ntk_h0(double u) { return (kPi - std::acos(u)) / kPi; }

// h1(u) = u*h0(u) + sqrt(1-u^2)/pi
double ntk_h1(double u) {
    return u * ntk_h0(u) + std::sqrt(std::max(0.0, 1.0 - u * u)) / kPi;
}

} // namespace

double ntk_recursion(int depth, double u) {
    if (depth < 1) throw ConfigError("ntk_recursion: depth must be >= 1");
    u = clamp_unit(u);
    double h = u;    // h^k
    double hntk = u; // h_NTK^k
    for (int k = 2; k <= depth; ++k) {
        const double hc = clamp_unit(h);
        const double hnext = ntk_h1(hc);
        hntk = hntk * ntk_h0(hc) + hnext;
        h = hnext;
    }
    return hntk;
}

std::string to_string(KernelBase b) {
    switch (b) {
    case KernelBase::ntk: return "ntk";
    case KernelBase::spectral: return "spectral";
    case KernelBase::poly: return "poly";
    }
    return "?";
}

std::string to_string(InnerNorm n) {
    return n == InnerNorm::inner_over_d ? "inner_over_d" : "cosine";
}

KernelSpec KernelSpec::ntk(int depth, DomainSpec domain, GroupSpec group,
                           InnerNorm norm) {
    KernelSpec s;
    s.base = KernelBase::ntk;
    s.depth = depth;
    s.domain = domain;
    s.group = group;
    s.norm = norm;
    return s;
}

KernelSpec KernelSpec::spectral(std::shared_ptr<const ActivationSpectrum> sp,
                              GroupSpec group, InnerNorm norm) {
    KernelSpec s;
    s.base = KernelBase::spectral;
    s.spectrum = std::move(sp);
    if (s.spectrum) s.domain = s.spectrum->domain;
    s.group = group;
    s.norm = norm;
    return s;
}

KernelSpec KernelSpec::poly(Vec coeffs, DomainSpec domain, GroupSpec group,
                            InnerNorm norm) {
    KernelSpec s;
    s.base = KernelBase::poly;
    s.poly_coeffs = std::move(coeffs);
    s.domain = domain;
    s.group = group;
    s.norm = norm;
    return s;
}

void KernelSpec::validate() const {
    domain.validate();
    group.validate(domain);
    switch (base) {
    case KernelBase::ntk:
        if (depth < 1) throw ConfigError("KernelSpec: ntk depth must be >= 1");
        break;
    case KernelBase::spectral:
        if (!spectrum || !spectrum->basis)
            throw ConfigError("KernelSpec: spectral base needs a spectrum");
        if (spectrum->domain.d != group.d)
            throw ConfigError(
                "KernelSpec: spectrum dimension does not match group");
        break;
    case KernelBase::poly:
        if (poly_coeffs.size() < 1)
            throw ConfigError("KernelSpec: poly base needs coefficients");
        break;
    }
}

std::string KernelSpec::describe() const {
    std::string s = to_string(base);
    if (base == KernelBase::ntk) s += ":" + std::to_string(depth);
    if (base == KernelBase::poly) {
        s += ":[";
        for (Index j = 0; j < poly_coeffs.size(); ++j) {
            if (j) s += ",";
            s += std::to_string(poly_coeffs(j));
        }
        s += "]";
    }
    if (base == KernelBase::spectral && spectrum)
        s += ":k" + std::to_string(spectrum->xi.size() - 1);
    s += std::string("|") + to_string(group.kind) + ":" +
         std::to_string(group.d);
    s += "|" + to_string(norm);
    return s;
}

double KernelSpec::base_value(double u) const {
    switch (base) {
    case KernelBase::ntk: return ntk_recursion(depth, u);
    case KernelBase::spectral: {
        const Vec q = spectrum->basis->eval_all_t(clamp_unit(u));
        return (spectrum->xi.array().square() * spectrum->dim.array() *
                q.array())
            .sum();
    }
    case KernelBase::poly: {
        double acc = 0.0;
        for (Index j = poly_coeffs.size() - 1; j >= 0; --j)
            acc = acc * u + poly_coeffs(j);
        return acc;
    }
    }
    return 0.0;
}

uint64_t matrix_fingerprint(const Mat& X) {
    uint64_t h = kFnvOffset;
    for (Index i = 0; i < X.rows(); ++i)
        for (Index j = 0; j < X.cols(); ++j) {
            const double v = X(i, j);
            h = fnv1a(&v, sizeof(v), h);
        }
    return h;
}

namespace {

// Per-point normalization scale: sqrt(d) for inner_over_d (so the pair scale
// s_i*s_j = d), Euclidean norm for cosine.
Vec point_scales(const KernelSpec& spec, const Mat& X, const char* who) {
    const Index n = X.rows();
    Vec s(n);
    if (spec.norm == InnerNorm::inner_over_d) {
        s.setConstant(std::sqrt(static_cast<double>(X.cols())));
        return s;
    }
    for (Index i = 0; i < n; ++i) {
        s(i) = X.row(i).norm();
        if (s(i) == 0.0)
            throw NumericError(std::string(who) +
                               ": cosine normalization with zero vector at "
                               "row " +
                               std::to_string(i));
    }
    return s;
}

// Mean of the base map over a correlation vector, with pair scale.
double averaged_base(const KernelSpec& spec, const Vec& corr, double scale) {
    double acc = 0.0;
    for (Index e = 0; e < corr.size(); ++e)
        acc += spec.base_value(corr(e) / scale);
    return acc / static_cast<double>(corr.size());
}

// Self-pair variant: the identity element pairs a point with itself, whose
// normalized inner product is exactly 1 by the domain contract. Recomputing
// it in floats leaves it at 1 +- ulp, which base maps with a branch point at
// 1 (the NTK's sqrt(1-u^2) term) amplify to ~1e-8; evaluating the identity
// term at u = 1 keeps Gram diagonals and group-averaged self-entries exact.
double averaged_base_self(const KernelSpec& spec, const Vec& corr,
                          double scale) {
    double acc = spec.base_value(1.0);
    for (Index e = 1; e < corr.size(); ++e)
        acc += spec.base_value(corr(e) / scale);
    return acc / static_cast<double>(corr.size());
}

[[noreturn]] void throw_nonfinite(const char* who, Index i, Index j) {
    throw NumericError(std::string(who) + ": non-finite kernel value at pair (" +
                       std::to_string(i) + ", " + std::to_string(j) + ")");
}

} // namespace

double kernel_value(const KernelSpec& spec, const Vec& x, const Vec& y) {
    spec.validate();
    if (x.size() != spec.group.d || y.size() != spec.group.d)
        throw ConfigError("kernel_value: point dimension mismatch");
    double scale;
    if (spec.norm == InnerNorm::inner_over_d) {
        scale = static_cast<double>(spec.group.d);
    } else {
        const double nx = x.norm(), ny = y.norm();
        if (nx == 0.0 || ny == 0.0)
            throw NumericError(
                "kernel_value: cosine normalization with zero vector");
        scale = nx * ny;
    }
    const Vec corr = group_inner_products(spec.group, x, y);
    const double v = averaged_base(spec, corr, scale);
    if (!std::isfinite(v)) throw_nonfinite("kernel_value", 0, 0);
    return v;
}

namespace {

// Trivial-group path: one inner product per pair, assembled as a GEMM.
Mat gram_trivial(const KernelSpec& spec, const Mat& A, const Mat& B,
                 bool symmetric, int threads, const char* who) {
    const Vec sa = point_scales(spec, A, who);
    const Vec sb = symmetric ? sa : point_scales(spec, B, who);
    Mat K = A * B.transpose();
    parallel_for(K.rows(), threads, [&](Index lo, Index hi) {
        for (Index i = lo; i < hi; ++i)
            for (Index j = 0; j < K.cols(); ++j) {
                const double u = symmetric && i == j
                                     ? 1.0
                                     : K(i, j) / (sa(i) * sb(j));
                const double v = spec.base_value(u);
                if (!std::isfinite(v)) throw_nonfinite(who, i, j);
                K(i, j) = v;
            }
    });
    if (symmetric) K = ((K + K.transpose()) / 2.0).eval();
    return K;
}

// Group-averaged path: per-pair correlation through cached transforms.
Mat gram_grouped(const KernelSpec& spec, const Mat& A, const Mat& B,
                 bool symmetric, int threads, const char* who) {
    const Index na = A.rows();
    const Index nb = B.rows();
    const Vec sa = point_scales(spec, A, who);
    const Vec sb = symmetric ? sa : point_scales(spec, B, who);

    std::vector<CVec> fa(static_cast<size_t>(na));
    std::vector<CVec> fb(static_cast<size_t>(symmetric ? 0 : nb));
    {
        Correlator corr(spec.group);
        for (Index i = 0; i < na; ++i)
            fa[static_cast<size_t>(i)] = corr.transform(A.row(i).transpose());
        if (!symmetric)
            for (Index j = 0; j < nb; ++j)
                fb[static_cast<size_t>(j)] =
                    corr.transform(B.row(j).transpose());
    }
    const std::vector<CVec>& fbr = symmetric ? fa : fb;

    Mat K(na, nb);
    parallel_for(na, threads, [&](Index lo, Index hi) {
        Correlator corr(spec.group);
        Vec cvec(corr.size());
        for (Index i = lo; i < hi; ++i) {
            const Index j0 = symmetric ? i : 0;
            for (Index j = j0; j < nb; ++j) {
                corr.correlate_spectra(fa[static_cast<size_t>(i)],
                                       fbr[static_cast<size_t>(j)], cvec);
                const double v =
                    symmetric && i == j
                        ? averaged_base_self(spec, cvec, sa(i) * sb(j))
                        : averaged_base(spec, cvec, sa(i) * sb(j));
                if (!std::isfinite(v)) throw_nonfinite(who, i, j);
                K(i, j) = v;
                if (symmetric) K(j, i) = v;
            }
        }
    });
    return K;
}

Mat assemble(const KernelSpec& spec, const Mat& A, const Mat& B,
             bool symmetric, int threads, const char* who) {
    spec.validate();
    if (A.rows() < 1 || B.rows() < 1)
        throw ConfigError(std::string(who) + ": empty point set");
    if (A.cols() != spec.group.d || B.cols() != spec.group.d)
        throw ConfigError(std::string(who) + ": point dimension mismatch");
    if (spec.group.kind == GroupKind::trivial)
        return gram_trivial(spec, A, B, symmetric, threads, who);
    return gram_grouped(spec, A, B, symmetric, threads, who);
}

} // namespace

GramMatrix gram(const KernelSpec& spec, const Mat& X, int threads) {
    GramMatrix g;
    g.K = assemble(spec, X, X, /*symmetric=*/true, threads, "gram");
    g.kernel = spec;
    g.X = X;
    g.fingerprint = matrix_fingerprint(X) ^ fnv1a(spec.describe());
    return g;
}

Mat cross_gram(const KernelSpec& spec, const Mat& A, const Mat& B,
               int threads) {
    return assemble(spec, A, B, /*symmetric=*/false, threads, "cross_gram");
}

namespace {

// Index of g_j^{-1} g_l for the discrete abelian shift groups, so that
// <g_j x, g_l y> = <x, g_{rel(j,l)} y>.
Index relative_shift(const GroupSpec& group, Index j, Index l) {
    switch (group.kind) {
    case GroupKind::trivial: return 0;
    case GroupKind::cyc1d: return (l - j + group.d) % group.d;
    case GroupKind::cyc2d: {
        const Index r1 = ((l / group.d2) - (j / group.d2) + group.d1) %
                         group.d1;
        const Index r2 = ((l % group.d2) - (j % group.d2) + group.d2) %
                         group.d2;
        return r1 * group.d2 + r2;
    }
    default:
        throw ConfigError("relative_shift: group is not discrete");
    }
}

} // namespace

double empirical_cntk(int width, const GroupSpec& group, const Vec& x,
                      const Vec& y, uint64_t seed) {
    if (width < 1) throw ConfigError("empirical_cntk: width must be >= 1");
    if (group.kind == GroupKind::shift_band)
        throw ConfigError("empirical_cntk: requires a discrete group");
    const Index d = group.d;
    if (x.size() != d || y.size() != d)
        throw ConfigError("empirical_cntk: point dimension mismatch");

    Correlator corr(group);
    const Index G = group.size();
    Vec cxy(G);
    corr.correlate(x, y, cxy); // cxy(e) = <x, g_e y>

    CounterRng rng(seed, "empirical-cntk");
    Vec w(d), cwx(G), cwy(G);
    std::vector<Index> ax, ay;
    ax.reserve(static_cast<size_t>(G));
    ay.reserve(static_cast<size_t>(G));
    const double gsq_d = static_cast<double>(G) * static_cast<double>(G) *
                         static_cast<double>(d);

    double acc = 0.0;
    for (int i = 0; i < width; ++i) {
        for (Index k = 0; k < d; ++k) w(k) = rng.normal();
        const double nw = w.norm();
        if (nw == 0.0) throw NumericError("empirical_cntk: zero weight draw");
        w /= nw; // first-layer weights uniform on the unit sphere
        const double a = rng.normal();

        corr.correlate(w, x, cwx); // <w, g_j x> for all j
        corr.correlate(w, y, cwy);

        // Second-layer gradient: group-averaged ReLU features.
        double ux = 0.0, uy = 0.0;
        ax.clear();
        ay.clear();
        for (Index j = 0; j < G; ++j) {
            if (cwx(j) > 0.0) {
                ux += cwx(j);
                ax.push_back(j);
            }
            if (cwy(j) > 0.0) {
                uy += cwy(j);
                ay.push_back(j);
            }
        }
        ux /= static_cast<double>(G);
        uy /= static_cast<double>(G);

        // First-layer gradient block, contracted through <g_j x, g_l y>/d.
        double s = 0.0;
        for (Index j : ax)
            for (Index l : ay) s += cxy(relative_shift(group, j, l));
        s /= gsq_d;

        acc += ux * uy + a * a * s;
    }
    return 2.0 * acc / static_cast<double>(width);
}

} // namespace orbit
