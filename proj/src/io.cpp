#include "mirrorlang/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "mirrorlang/error.hpp"

#ifndef MIRRORLANG_VERSION
#define MIRRORLANG_VERSION "0.0.0"
#endif

namespace mirrorlang {

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

const char* tool_version() noexcept { return MIRRORLANG_VERSION; }

std::string metadata_line(std::string_view config_hash) {
  std::string s = "# mirrorlang ";
  s += tool_version();
  s += " config_hash=";
  s += config_hash;
  return s;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw Error(ErrorCode::Io, "write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorCode::Io, "cannot rename to " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_csv(std::string_view config_hash, const std::vector<std::string>& names,
                       const std::vector<Eigen::VectorXd>& columns) {
  if (names.size() != columns.size()) throw Error(ErrorCode::InvalidGrid, "CSV header and column count differ");
  const Eigen::Index rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows) throw Error(ErrorCode::InvalidGrid, "CSV columns differ in length");

  std::string out = metadata_line(config_hash);
  out += '\n';
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (j) out += ',';
    out += names[j];
  }
  out += '\n';
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (j) out += ',';
      out += format_number(columns[j][i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::filesystem::path& path, std::string_view config_hash,
               const std::vector<std::string>& names, const std::vector<Eigen::VectorXd>& columns) {
  write_atomic(path, format_csv(config_hash, names, columns));
}

}  // namespace mirrorlang
