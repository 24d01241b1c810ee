#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace pbrkit {

/// Writes `contents` to a sibling temp file and renames it over `path`.
/// Throws Error(IoError) on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Whole file as bytes. Throws Error(IoError) if it cannot be read.
std::string read_file(const std::filesystem::path& path);

}  // namespace pbrkit
