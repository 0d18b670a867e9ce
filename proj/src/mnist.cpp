#include "orbit/mnist.hpp"

#include "orbit/group.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace orbit {

namespace {

using Complex = std::complex<double>;

// Dense 28-point DFT matrix; the 2-D transform of a 28x28 image A is
// F = W A W^T (unnormalized), inverted by conj(W) F conj(W)^T / 784.
const CMat& dft_matrix() {
    static const CMat W = [] {
        CMat m(kMnistSide, kMnistSide);
        const double pi = std::acos(-1.0);
        const double base = -2.0 * pi / static_cast<double>(kMnistSide);
        for (Index j = 0; j < kMnistSide; ++j)
            for (Index k = 0; k < kMnistSide; ++k)
                m(j, k) = std::polar(1.0, base * static_cast<double>(j * k));
        return m;
    }();
    return W;
}

CMat image_grid(const Mat& images, Index row) {
    CMat g(kMnistSide, kMnistSide);
    for (Index r = 0; r < kMnistSide; ++r)
        for (Index c = 0; c < kMnistSide; ++c)
            g(r, c) = Complex(images(row, r * kMnistSide + c), 0.0);
    return g;
}

Index conjugate_partner(Index flat) {
    const Index j = flat / kMnistSide, k = flat % kMnistSide;
    return ((kMnistSide - j) % kMnistSide) * kMnistSide +
           (kMnistSide - k) % kMnistSide;
}

void check_mnist_shape(const Mat& images, const char* who) {
    if (images.cols() != kMnistPixels)
        throw ConfigError(std::string(who) + ": images must be " +
                          std::to_string(kMnistSide) + "x" +
                          std::to_string(kMnistSide));
}

} // namespace

void MnistConfig::validate() const {
    if (T < 1 || T > static_cast<int>(kMnistPixels))
        throw ConfigError("MnistConfig: T must lie in [1, 784]");
    if (n_train < 1 || n_test < 1)
        throw ConfigError("MnistConfig: subset sizes must be >= 1");
    if (train_images.empty() || train_labels.empty() || test_images.empty() ||
        test_labels.empty())
        throw ConfigError("MnistConfig: all four IDX paths are required");
}

FreqSet select_frequencies(const Mat& stats_images, int T) {
    check_mnist_shape(stats_images, "select_frequencies");
    if (T < 1 || T > static_cast<int>(kMnistPixels))
        throw ConfigError("select_frequencies: T must lie in [1, 784]");
    if (stats_images.rows() < 1)
        throw ConfigError("select_frequencies: empty statistics set");

    Vec score = Vec::Zero(kMnistPixels);
    const CMat& W = dft_matrix();
    for (Index i = 0; i < stats_images.rows(); ++i) {
        const CMat F = W * image_grid(stats_images, i) * W.transpose();
        for (Index r = 0; r < kMnistSide; ++r)
            for (Index c = 0; c < kMnistSide; ++c)
                score(r * kMnistSide + c) += std::abs(F(r, c));
    }
    score /= static_cast<double>(stats_images.rows());

    std::vector<Index> order(kMnistPixels);
    std::iota(order.begin(), order.end(), Index(0));
    std::stable_sort(order.begin(), order.end(), [&score](Index a, Index b) {
        return score(a) > score(b);
    });

    // Walk the ranking in conjugate-closure groups (singleton when
    // self-conjugate, pair otherwise); take each group that still fits the
    // budget. |F| is conjugate-symmetric for real images, so partners tie in
    // score and a skipped group means the budget has one slot left, filled
    // by the next self-conjugate bin.
    std::vector<bool> taken(kMnistPixels, false);
    FreqSet omega;
    omega.reserve(static_cast<size_t>(T));
    for (Index idx : order) {
        if (static_cast<int>(omega.size()) >= T) break;
        if (taken[static_cast<size_t>(idx)]) continue;
        const Index p = conjugate_partner(idx);
        const int group_size = (p == idx) ? 1 : 2;
        if (static_cast<int>(omega.size()) + group_size > T) continue;
        taken[static_cast<size_t>(idx)] = true;
        omega.push_back(idx);
        if (p != idx) {
            taken[static_cast<size_t>(p)] = true;
            omega.push_back(p);
        }
    }
    std::sort(omega.begin(), omega.end());
    return omega;
}

DftProjection dft_project(const Mat& images, int T, const Mat& stats_images,
                          bool normalize) {
    check_mnist_shape(images, "dft_project");
    DftProjection out;
    out.omega = select_frequencies(stats_images, T);
    std::vector<bool> keep(kMnistPixels, false);
    for (Index f : out.omega) keep[static_cast<size_t>(f)] = true;

    const CMat& W = dft_matrix();
    const CMat Winv = W.conjugate();
    out.images.resize(images.rows(), kMnistPixels);
    for (Index i = 0; i < images.rows(); ++i) {
        CMat F = W * image_grid(images, i) * W.transpose();
        for (Index r = 0; r < kMnistSide; ++r)
            for (Index c = 0; c < kMnistSide; ++c)
                if (!keep[static_cast<size_t>(r * kMnistSide + c)])
                    F(r, c) = Complex(0.0, 0.0);
        const CMat back =
            (Winv * F * Winv.transpose()) / static_cast<double>(kMnistPixels);
        for (Index r = 0; r < kMnistSide; ++r)
            for (Index c = 0; c < kMnistSide; ++c)
                out.images(i, r * kMnistSide + c) = back(r, c).real();
        if (normalize) {
            const double norm = out.images.row(i).norm();
            if (norm == 0.0)
                throw NumericError(
                    "dft_project: zero image after projection at row " +
                    std::to_string(i));
            out.images.row(i) /= norm;
        }
    }
    return out;
}

Mat cyclic_shift_2d(const Mat& images,
                    const std::vector<std::pair<Index, Index>>& shifts) {
    check_mnist_shape(images, "cyclic_shift_2d");
    if (static_cast<Index>(shifts.size()) != images.rows())
        throw ConfigError("cyclic_shift_2d: one shift per image required");
    const GroupSpec grid = GroupSpec::cyclic2d(kMnistSide, kMnistSide);
    Mat out(images.rows(), kMnistPixels);
    for (Index i = 0; i < images.rows(); ++i) {
        const auto [si, sj] = shifts[static_cast<size_t>(i)];
        if (si < 0 || si >= kMnistSide || sj < 0 || sj >= kMnistSide)
            throw ConfigError("cyclic_shift_2d: shift out of range");
        const double e = static_cast<double>(si * kMnistSide + sj);
        out.row(i) =
            apply_group(grid, e, images.row(i).transpose()).transpose();
    }
    return out;
}

Mat random_cyclic_shift(const Mat& images, uint64_t seed) {
    check_mnist_shape(images, "random_cyclic_shift");
    CounterRng rng(seed, "mnist-shift");
    std::vector<std::pair<Index, Index>> shifts;
    shifts.reserve(static_cast<size_t>(images.rows()));
    for (Index i = 0; i < images.rows(); ++i) {
        const Index si = static_cast<Index>(
            rng.uniform_below(static_cast<uint64_t>(kMnistSide)));
        const Index sj = static_cast<Index>(
            rng.uniform_below(static_cast<uint64_t>(kMnistSide)));
        shifts.emplace_back(si, sj);
    }
    return cyclic_shift_2d(images, shifts);
}

namespace {

Vec encode_labels(const std::vector<std::uint8_t>& raw, Index n,
                  const char* who) {
    if (static_cast<Index>(raw.size()) < n)
        throw ConfigError(std::string(who) + ": not enough labels");
    Vec y(n);
    for (Index i = 0; i < n; ++i) {
        if (raw[static_cast<size_t>(i)] > 9)
            throw ConfigError(std::string(who) + ": label outside 0..9");
        y(i) = static_cast<double>(raw[static_cast<size_t>(i)]) - 4.5;
    }
    return y;
}

} // namespace

MnistData prepare_cyclic_mnist(const MnistConfig& cfg) {
    cfg.validate();
    const IdxTensor train_imgs = load_idx(cfg.train_images);
    const IdxTensor train_labs = load_idx(cfg.train_labels);
    const IdxTensor test_imgs = load_idx(cfg.test_images);
    const IdxTensor test_labs = load_idx(cfg.test_labels);
    if (train_imgs.kind != IdxKind::images ||
        test_imgs.kind != IdxKind::images)
        throw ConfigError("prepare_cyclic_mnist: image path holds labels");
    if (train_labs.kind != IdxKind::labels ||
        test_labs.kind != IdxKind::labels)
        throw ConfigError("prepare_cyclic_mnist: label path holds images");
    if (train_imgs.rows != kMnistSide || train_imgs.cols != kMnistSide ||
        test_imgs.rows != kMnistSide || test_imgs.cols != kMnistSide)
        throw ConfigError("prepare_cyclic_mnist: images are not 28x28");
    if (train_imgs.count() < cfg.n_train || test_imgs.count() < cfg.n_test)
        throw ConfigError("prepare_cyclic_mnist: not enough images for the "
                          "requested subset sizes");

    const Mat train_subset = train_imgs.data.topRows(cfg.n_train);
    const Mat test_subset = test_imgs.data.topRows(cfg.n_test);

    MnistData out;
    out.T = cfg.T;
    DftProjection train_proj = dft_project(train_subset, cfg.T, train_subset);
    DftProjection test_proj = dft_project(test_subset, cfg.T, train_subset);
    out.omega = train_proj.omega;
    // Train and test shifts come from adjacent seeds so the two draws are
    // independent but the whole pipeline stays reproducible from one seed.
    out.X_train = random_cyclic_shift(train_proj.images, cfg.shift_seed);
    out.X_test = random_cyclic_shift(test_proj.images, cfg.shift_seed + 1);
    out.y_train =
        encode_labels(train_labs.labels, cfg.n_train, "prepare_cyclic_mnist");
    out.y_test =
        encode_labels(test_labs.labels, cfg.n_test, "prepare_cyclic_mnist");
    return out;
}

double classification_error(const Vec& predictions,
                            const Vec& encoded_labels) {
    if (predictions.size() != encoded_labels.size())
        throw ConfigError("classification_error: length mismatch");
    if (predictions.size() == 0)
        throw ConfigError("classification_error: empty input");
    Index wrong = 0;
    for (Index i = 0; i < predictions.size(); ++i) {
        const double digit =
            std::clamp(std::round(predictions(i) + 4.5), 0.0, 9.0);
        const double truth = std::round(encoded_labels(i) + 4.5);
        if (digit != truth) ++wrong;
    }
    return static_cast<double>(wrong) /
           static_cast<double>(predictions.size());
}

} // namespace orbit
