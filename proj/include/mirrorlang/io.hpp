#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mirrorlang {

/// Shortest decimal text that reads back to the same double.
std::string format_number(double x);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

/// `# mirrorlang <version> config_hash=<hash>`
std::string metadata_line(std::string_view config_hash);

const char* tool_version() noexcept;

/// Writes to a sibling temporary file and renames it over `path`, so the
/// artifact is either complete or absent. Throws Io.
void write_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// CSV with a metadata comment line, a header row and equal-length columns.
std::string format_csv(std::string_view config_hash, const std::vector<std::string>& names,
                       const std::vector<Eigen::VectorXd>& columns);

void write_csv(const std::filesystem::path& path, std::string_view config_hash,
               const std::vector<std::string>& names, const std::vector<Eigen::VectorXd>& columns);

}  // namespace mirrorlang
