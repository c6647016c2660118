#pragma once

#include <string>
#include <string_view>

#include "cli/report.hpp"

namespace effpar::cli {

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

/// Reads the whole file; throws IoError.
std::string read_file(const std::string& path);

InputProvenance provenance_of(const std::string& path, std::string_view contents);

}  // namespace effpar::cli
