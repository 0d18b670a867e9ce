#include "orbit/idx.hpp"

#include <cstdio>
#include <fstream>

namespace orbit {

namespace {

constexpr std::uint32_t kMagicImages = 0x00000803u;
constexpr std::uint32_t kMagicLabels = 0x00000801u;

std::uint32_t read_be32(std::istream& in, const std::string& path,
                        const char* what) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (in.gcount() != 4)
        throw ConfigError("load_idx: truncated header (" + std::string(what) +
                          ") in " + path);
    return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) |
           (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
}

void write_be32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v >> 24),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

} // namespace

IdxTensor load_idx(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("load_idx: cannot open " + path);
    const std::uint32_t magic = read_be32(in, path, "magic");
    IdxTensor t;
    if (magic == kMagicImages) {
        t.kind = IdxKind::images;
        const std::uint32_t n = read_be32(in, path, "count");
        t.rows = static_cast<Index>(read_be32(in, path, "rows"));
        t.cols = static_cast<Index>(read_be32(in, path, "cols"));
        if (t.rows < 1 || t.cols < 1)
            throw ConfigError("load_idx: bad image dimensions in " + path);
        const std::size_t pixels =
            std::size_t(n) * std::size_t(t.rows) * std::size_t(t.cols);
        std::vector<unsigned char> buf(pixels);
        in.read(reinterpret_cast<char*>(buf.data()),
                static_cast<std::streamsize>(pixels));
        if (static_cast<std::size_t>(in.gcount()) != pixels)
            throw ConfigError("load_idx: truncated image payload in " + path);
        t.data.resize(static_cast<Index>(n), t.rows * t.cols);
        for (Index i = 0; i < t.data.rows(); ++i)
            for (Index j = 0; j < t.data.cols(); ++j)
                t.data(i, j) = static_cast<double>(
                    buf[std::size_t(i) * std::size_t(t.data.cols()) +
                        std::size_t(j)]);
    } else if (magic == kMagicLabels) {
        t.kind = IdxKind::labels;
        const std::uint32_t n = read_be32(in, path, "count");
        t.labels.resize(n);
        in.read(reinterpret_cast<char*>(t.labels.data()), n);
        if (static_cast<std::uint32_t>(in.gcount()) != n)
            throw ConfigError("load_idx: truncated label payload in " + path);
    } else {
        char hex[16];
        std::snprintf(hex, sizeof(hex), "0x%08x", magic);
        throw ConfigError("load_idx: wrong magic " + std::string(hex) +
                          " in " + path);
    }
    return t;
}

void save_idx(const std::string& path, const IdxTensor& tensor) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("save_idx: cannot open " + path);
    if (tensor.kind == IdxKind::images) {
        if (tensor.data.cols() != tensor.rows * tensor.cols)
            throw ConfigError("save_idx: image width does not match dims");
        write_be32(out, kMagicImages);
        write_be32(out, static_cast<std::uint32_t>(tensor.data.rows()));
        write_be32(out, static_cast<std::uint32_t>(tensor.rows));
        write_be32(out, static_cast<std::uint32_t>(tensor.cols));
        std::vector<unsigned char> buf(
            static_cast<std::size_t>(tensor.data.size()));
        for (Index i = 0; i < tensor.data.rows(); ++i)
            for (Index j = 0; j < tensor.data.cols(); ++j) {
                const double v = tensor.data(i, j);
                if (v < 0.0 || v > 255.0)
                    throw ConfigError(
                        "save_idx: pixel outside the u8 range");
                buf[std::size_t(i) * std::size_t(tensor.data.cols()) +
                    std::size_t(j)] = static_cast<unsigned char>(v);
            }
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size()));
    } else {
        write_be32(out, kMagicLabels);
        write_be32(out, static_cast<std::uint32_t>(tensor.labels.size()));
        out.write(reinterpret_cast<const char*>(tensor.labels.data()),
                  static_cast<std::streamsize>(tensor.labels.size()));
    }
    if (!out) throw ConfigError("save_idx: write failed for " + path);
}

} // namespace orbit
