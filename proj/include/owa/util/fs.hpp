#pragma once

#include <string>
#include <string_view>

namespace owa {

// Whole-file reads; throws IoError. The gzip-aware variant transparently
// inflates files whose bytes carry the gzip magic.
std::string read_file(const std::string& path);
std::string read_file_maybe_gzip(const std::string& path);

void write_file(const std::string& path, std::string_view contents);

}  // namespace owa
