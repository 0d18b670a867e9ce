#ifndef ORBIT_MNIST_HPP
#define ORBIT_MNIST_HPP

#include "orbit/idx.hpp"

#include <utility>
#include <vector>

namespace orbit {

inline constexpr Index kMnistSide = 28;
inline constexpr Index kMnistPixels = kMnistSide * kMnistSide;

// Band-limited, shift-randomized MNIST: per image, take the 2-D DFT, keep
// the T frequencies with the largest training-set mean modulus (closed under
// conjugate pairing so the result stays real), invert, normalize to unit
// Euclidean norm, then apply an independent uniform 2-D cyclic shift.
// Labels are regressed as digit - 4.5.
struct MnistConfig {
    std::string train_images;
    std::string train_labels;
    std::string test_images;
    std::string test_labels;
    int T = 784;
    Index n_train = 2000;
    Index n_test = 2000;
    uint64_t shift_seed = 0;

    void validate() const;
};

// Frequency indices are flat row-major positions in the 28x28 DFT grid.
using FreqSet = std::vector<Index>;

// Top-T frequencies of the mean |F| over the given images, made closed under
// the conjugate pairing (j,k) <-> (-j mod 28, -k mod 28): frequencies are
// taken in ranked closure groups (a self-conjugate bin, or a conjugate pair)
// while they fit in the budget, which keeps |Omega| = T and the projection
// real-valued.
FreqSet select_frequencies(const Mat& stats_images, int T);

struct DftProjection {
    Mat images; // one projected image per row
    FreqSet omega;
};

// Projects every row of `images` onto the top-T frequency set computed from
// `stats_images` (pass the training images for both calls so train and test
// share one frequency set). normalize=false skips the final unit-norm step.
DftProjection dft_project(const Mat& images, int T, const Mat& stats_images,
                          bool normalize = true);

// 2-D cyclic shift by (per-image) explicit offsets, or by uniform offsets
// drawn from the seed.
Mat cyclic_shift_2d(const Mat& images,
                    const std::vector<std::pair<Index, Index>>& shifts);
Mat random_cyclic_shift(const Mat& images, uint64_t seed);

struct MnistData {
    Mat X_train;
    Vec y_train;
    Mat X_test;
    Vec y_test;
    FreqSet omega;
    int T = 0;
};

MnistData prepare_cyclic_mnist(const MnistConfig& cfg);

// Fraction of predictions that land on the wrong digit after rounding to the
// nearest encoded label (encoded labels are digit - 4.5).
double classification_error(const Vec& predictions, const Vec& encoded_labels);

} // namespace orbit

#endif // ORBIT_MNIST_HPP
