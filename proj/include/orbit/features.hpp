#ifndef ORBIT_FEATURES_HPP
#define ORBIT_FEATURES_HPP

#include "orbit/group.hpp"
#include "orbit/orthopoly.hpp"

#include <memory>

namespace orbit {

// Random first-layer weights for the feature map
//   phi_j(x) = avg_g sigma(<w_j, g.x>).
// Weights are scaled domain samples: sqrt(d)*w_j is uniform on the domain, so
// on the sphere w_j is uniform on the unit sphere and <w_j, g.x> is O(1).
struct FeatureBank {
    Mat W; // N x d, one weight vector per row
    DomainSpec domain;
    GroupSpec group;
    ScalarFn sigma;
    uint64_t seed = 0;

    Index count() const { return W.rows(); }
};

FeatureBank sample_features(const DomainSpec& domain, Index N,
                            const ScalarFn& sigma, const GroupSpec& group,
                            uint64_t seed);

// Z(i, j) = avg_g sigma(<w_j, g.x_i>); rows index data points, columns index
// features. With the trivial group this is sigma(X * W^T) entrywise.
struct DesignMatrix {
    Mat Z;
    std::shared_ptr<const FeatureBank> bank;
};

DesignMatrix design(const FeatureBank& bank, const Mat& X, int threads = 1);

} // namespace orbit

#endif // ORBIT_FEATURES_HPP
