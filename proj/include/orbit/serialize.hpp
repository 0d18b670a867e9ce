#ifndef ORBIT_SERIALIZE_HPP
#define ORBIT_SERIALIZE_HPP

#include "orbit/common.hpp"

#include <string>

#include <json.hpp>

namespace orbit {

// Flat binary matrix format: header of two little-endian uint64 {rows, cols}
// followed by rows*cols little-endian IEEE doubles in row-major order.
void save_matrix(const std::string& path, const Mat& m);
Mat load_matrix(const std::string& path);

// Shortest round-trippable decimal rendering (printf %.17g); all floats in
// CSV/JSON outputs go through this so reruns are byte-comparable.
std::string format_g17(double value);

// FNV-1a 64-bit hash of the canonical (sorted-key, minified) JSON dump,
// rendered as 16 lowercase hex digits. Embedded in every output file so a
// result can be matched to the exact config that produced it.
std::string config_hash(const nlohmann::json& config);

// Whole-file text IO for CSV/JSON outputs; write is atomic enough for our
// purposes (truncate + write + close) and read errors carry the path.
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

} // namespace orbit

#endif // ORBIT_SERIALIZE_HPP
