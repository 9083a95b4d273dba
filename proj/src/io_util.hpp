#ifndef OCEL_SRC_IO_UTIL_HPP
#define OCEL_SRC_IO_UTIL_HPP

#include <string>
#include <string_view>

namespace ocel::io::detail {

/// Reads a whole file; throws IoError on failure.
std::string read_file(const std::string& path);

/// Writes via a sibling temp file and renames it into place, so a failed
/// write never leaves a partial output.
void write_file(const std::string& path, std::string_view content);

}  // namespace ocel::io::detail

#endif
