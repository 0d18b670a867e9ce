#include "orbit/serialize.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace orbit {

namespace {

void put_u64(std::ofstream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::ifstream& in, const std::string& path) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8))
        throw ConfigError("load_matrix: truncated header in " + path);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

} // namespace

void save_matrix(const std::string& path, const Mat& m) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("save_matrix: cannot open " + path);
    put_u64(out, static_cast<std::uint64_t>(m.rows()));
    put_u64(out, static_cast<std::uint64_t>(m.cols()));
    // Row-major on disk regardless of Eigen's in-memory layout.
    std::vector<double> row(static_cast<size_t>(m.cols()));
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j)
            row[static_cast<size_t>(j)] = m(i, j);
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(sizeof(double) * row.size()));
    }
    if (!out) throw ConfigError("save_matrix: write failed for " + path);
}

Mat load_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("load_matrix: cannot open " + path);
    const std::uint64_t rows = get_u64(in, path);
    const std::uint64_t cols = get_u64(in, path);
    if (rows > (1ULL << 32) || cols > (1ULL << 32))
        throw ConfigError("load_matrix: implausible header in " + path);
    Mat m(static_cast<Index>(rows), static_cast<Index>(cols));
    std::vector<double> row(static_cast<size_t>(cols));
    for (std::uint64_t i = 0; i < rows; ++i) {
        if (!in.read(reinterpret_cast<char*>(row.data()),
                     static_cast<std::streamsize>(sizeof(double) * row.size())))
            throw ConfigError("load_matrix: truncated payload in " + path);
        for (std::uint64_t j = 0; j < cols; ++j)
            m(static_cast<Index>(i), static_cast<Index>(j)) =
                row[static_cast<size_t>(j)];
    }
    return m;
}

std::string format_g17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string config_hash(const nlohmann::json& config) {
    const std::string dump = config.dump();
    const std::uint64_t h = fnv1a(dump);
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("write_text: cannot open " + path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw ConfigError("write_text: write failed for " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("read_text: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace orbit
