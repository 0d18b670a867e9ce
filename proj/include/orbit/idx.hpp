#ifndef ORBIT_IDX_HPP
#define ORBIT_IDX_HPP

#include "orbit/common.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace orbit {

// IDX tensor files (the MNIST container format): big-endian magic
// 0x00000803 for u8 image stacks (dims n x rows x cols) or 0x00000801 for u8
// label vectors (dims n). Anything else is rejected.
enum class IdxKind { images, labels };

struct IdxTensor {
    IdxKind kind = IdxKind::images;
    // images: n x (rows*cols), one row-major image per row, values 0..255.
    Mat data;
    Index rows = 0;
    Index cols = 0;
    // labels: raw byte values.
    std::vector<std::uint8_t> labels;

    Index count() const {
        return kind == IdxKind::images ? data.rows()
                                       : static_cast<Index>(labels.size());
    }
};

IdxTensor load_idx(const std::string& path);

// Writers for fixtures and cached subsets; load_idx(save_idx(t)) is
// byte-identical on disk.
void save_idx(const std::string& path, const IdxTensor& tensor);

} // namespace orbit

#endif // ORBIT_IDX_HPP
