#include "orbit/group.hpp"

#include <cmath>

namespace orbit {

namespace {
// Fixed crossover between the direct O(d^2) correlation and the FFT path.
constexpr int kFftThreshold = 64;
} // namespace

void GroupSpec::validate(const DomainSpec& domain) const {
    if (d != domain.d)
        throw ConfigError("group dimension " + std::to_string(d) +
                          " does not match domain dimension " +
                          std::to_string(domain.d));
    switch (kind) {
    case GroupKind::trivial:
    case GroupKind::cyc1d:
        break;
    case GroupKind::cyc2d:
        if (d1 < 1 || d2 < 1 || d1 * d2 != d)
            throw ConfigError("cyc2d requires d = d1*d2 with d1,d2 >= 1");
        break;
    case GroupKind::shift_band:
        if (domain.kind != DomainKind::sphere)
            throw ConfigError("shift_band acts on the sphere only");
        if (d % 2 == 0)
            throw ConfigError("shift_band requires odd d");
        if (quad_m < 1)
            throw ConfigError("shift_band requires a positive node count");
        break;
    }
    if (domain.kind == DomainKind::hypercube && kind == GroupKind::shift_band)
        throw ConfigError("shift_band does not preserve the hypercube");
}

const char* to_string(GroupKind kind) {
    switch (kind) {
    case GroupKind::trivial: return "trivial";
    case GroupKind::cyc1d: return "cyc1d";
    case GroupKind::cyc2d: return "cyc2d";
    case GroupKind::shift_band: return "shift_band";
    }
    return "?";
}

Vec apply_group(const GroupSpec& group, double g, const Vec& x) {
    const Index d = x.size();
    if (d != group.d)
        throw ConfigError("apply_group: point dimension mismatch");
    switch (group.kind) {
    case GroupKind::trivial:
        if (g != 0.0) throw ConfigError("trivial group has a single element");
        return x;
    case GroupKind::cyc1d: {
        const Index i = static_cast<Index>(g);
        if (static_cast<double>(i) != g || i < 0 || i >= d)
            throw ConfigError("cyc1d element index out of range");
        Vec out(d);
        for (Index j = 0; j < d; ++j) out(j) = x((j + i) % d);
        return out;
    }
    case GroupKind::cyc2d: {
        const Index e = static_cast<Index>(g);
        if (static_cast<double>(e) != g || e < 0 || e >= d)
            throw ConfigError("cyc2d element index out of range");
        const Index d1 = group.d1, d2 = group.d2;
        const Index si = e / d2, sj = e % d2;
        Vec out(d);
        for (Index r = 0; r < d1; ++r)
            for (Index c = 0; c < d2; ++c)
                out(r * d2 + c) = x(((r + si) % d1) * d2 + (c + sj) % d2);
        return out;
    }
    case GroupKind::shift_band: {
        if (g < 0.0 || g >= 1.0)
            throw ConfigError("shift_band element u must lie in [0,1)");
        Vec out(d);
        out(0) = x(0);
        for (Index b = 1; 2 * b < d; ++b) {
            const double angle = 2.0 * M_PI * static_cast<double>(b) * g;
            const double c = std::cos(angle), s = std::sin(angle);
            const double xa = x(2 * b - 1), xb = x(2 * b);
            out(2 * b - 1) = c * xa + s * xb;
            out(2 * b) = -s * xa + c * xb;
        }
        return out;
    }
    }
    throw ConfigError("apply_group: unknown group kind");
}

Correlator::Correlator(const GroupSpec& group) : group_(group) {
    fft_path_ = (group.kind == GroupKind::cyc1d ||
                 group.kind == GroupKind::cyc2d) &&
                group.d >= kFftThreshold;
}

void Correlator::correlate_direct(const Vec& x, const Vec& y, Vec& out) const {
    const Index d = group_.d;
    switch (group_.kind) {
    case GroupKind::trivial:
        out(0) = x.dot(y);
        return;
    case GroupKind::cyc1d:
        for (Index i = 0; i < d; ++i) {
            double acc = 0.0;
            for (Index j = 0; j < d; ++j) acc += x(j) * y((j + i) % d);
            out(i) = acc;
        }
        return;
    case GroupKind::cyc2d: {
        const Index d1 = group_.d1, d2 = group_.d2;
        for (Index si = 0; si < d1; ++si)
            for (Index sj = 0; sj < d2; ++sj) {
                double acc = 0.0;
                for (Index r = 0; r < d1; ++r)
                    for (Index c = 0; c < d2; ++c)
                        acc += x(r * d2 + c) *
                               y(((r + si) % d1) * d2 + (c + sj) % d2);
                out(si * d2 + sj) = acc;
            }
        return;
    }
    case GroupKind::shift_band: {
        // <x, g_u.y> is a trigonometric polynomial in u: accumulate the
        // per-block cosine/sine amplitudes once, then evaluate at the nodes.
        const Index nb = (d - 1) / 2;
        const double base = x(0) * y(0);
        Vec amp_c(nb), amp_s(nb);
        for (Index b = 1; b <= nb; ++b) {
            const double xa = x(2 * b - 1), xb = x(2 * b);
            const double ya = y(2 * b - 1), yb = y(2 * b);
            amp_c(b - 1) = xa * ya + xb * yb;
            amp_s(b - 1) = xa * yb - xb * ya;
        }
        const Index M = group_.quad_m;
        for (Index m = 0; m < M; ++m) {
            const double u = static_cast<double>(m) / static_cast<double>(M);
            double acc = base;
            for (Index b = 1; b <= nb; ++b) {
                const double angle = 2.0 * M_PI * static_cast<double>(b) * u;
                acc += std::cos(angle) * amp_c(b - 1) +
                       std::sin(angle) * amp_s(b - 1);
            }
            out(m) = acc;
        }
        return;
    }
    }
}

CVec Correlator::transform(const Vec& x) {
    if (x.size() != group_.d)
        throw ConfigError("Correlator: point dimension mismatch");
    if (!fft_path_) return x.cast<std::complex<double>>();
    const Index d = group_.d;
    if (group_.kind == GroupKind::cyc1d) {
        CVec in = x.cast<std::complex<double>>();
        CVec out(d);
        fft_row_.fwd(out, in);
        return out;
    }
    // cyc2d: row-major grid, transform rows then columns.
    CMat grid(group_.d1, group_.d2);
    for (Index r = 0; r < group_.d1; ++r)
        for (Index c = 0; c < group_.d2; ++c)
            grid(r, c) = x(r * group_.d2 + c);
    fft2_grid(grid, /*inverse=*/false);
    CVec out(d);
    for (Index r = 0; r < group_.d1; ++r)
        for (Index c = 0; c < group_.d2; ++c)
            out(r * group_.d2 + c) = grid(r, c);
    return out;
}

void Correlator::fft2_grid(CMat& grid, bool inverse) {
    const Index d1 = grid.rows(), d2 = grid.cols();
    CVec line, tline;
    line.resize(d2);
    tline.resize(d2);
    for (Index r = 0; r < d1; ++r) {
        line = grid.row(r).transpose();
        if (inverse)
            fft_row_.inv(tline, line);
        else
            fft_row_.fwd(tline, line);
        grid.row(r) = tline.transpose();
    }
    line.resize(d1);
    tline.resize(d1);
    for (Index c = 0; c < d2; ++c) {
        line = grid.col(c);
        if (inverse)
            fft_col_.inv(tline, line);
        else
            fft_col_.fwd(tline, line);
        grid.col(c) = tline;
    }
}

void Correlator::correlate_spectra(const CVec& fx, const CVec& fy, Vec& out) {
    const Index d = group_.d;
    if (out.size() != size()) out.resize(size());
    if (!fft_path_) {
        // Spectra are the raw points in this mode.
        Vec x = fx.real(), y = fy.real();
        correlate_direct(x, y, out);
        return;
    }
    // Cross-correlation theorem: corr = IFFT(conj(FX) .* FY), and the 2-D
    // case factors through the same elementwise product.
    if (scratch_.size() != d) scratch_.resize(d);
    scratch_ = fx.conjugate().cwiseProduct(fy);
    if (group_.kind == GroupKind::cyc1d) {
        CVec res(d);
        fft_row_.inv(res, scratch_);
        out = res.real();
        return;
    }
    CMat grid(group_.d1, group_.d2);
    for (Index r = 0; r < group_.d1; ++r)
        for (Index c = 0; c < group_.d2; ++c)
            grid(r, c) = scratch_(r * group_.d2 + c);
    fft2_grid(grid, /*inverse=*/true);
    for (Index r = 0; r < group_.d1; ++r)
        for (Index c = 0; c < group_.d2; ++c)
            out(r * group_.d2 + c) = grid(r, c).real();
}

void Correlator::correlate(const Vec& x, const Vec& y, Vec& out) {
    if (x.size() != group_.d || y.size() != group_.d)
        throw ConfigError("Correlator: point dimension mismatch");
    if (out.size() != size()) out.resize(size());
    if (!fft_path_) {
        correlate_direct(x, y, out);
        return;
    }
    CVec fx = transform(x), fy = transform(y);
    correlate_spectra(fx, fy, out);
}

Vec group_inner_products(const GroupSpec& group, const Vec& x, const Vec& y) {
    Correlator corr(group);
    Vec out(corr.size());
    corr.correlate(x, y, out);
    return out;
}

double haar_average(const Vec& values) {
    if (values.size() == 0)
        throw ConfigError("haar_average: empty value list");
    return values.mean();
}

double haar_average(const GroupSpec& group,
                    const std::function<double(double)>& fn) {
    const Index m = group.size();
    double acc = 0.0;
    if (group.kind == GroupKind::shift_band) {
        for (Index i = 0; i < m; ++i)
            acc += fn(static_cast<double>(i) / static_cast<double>(m));
    } else {
        for (Index i = 0; i < m; ++i) acc += fn(static_cast<double>(i));
    }
    return acc / static_cast<double>(m);
}

} // namespace orbit
