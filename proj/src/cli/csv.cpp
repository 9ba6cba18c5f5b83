#include "kcl/cli/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "kcl/error.hpp"

namespace kcl::cli {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : width_(header.size()) {
  row(std::move(header));
}

void CsvTable::row(std::vector<std::string> cells) {
  if (cells.size() != width_) throw Error(ErrorCode::InvalidArgument, "csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
}

std::string CsvTable::str() const { return text_; }

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::ConfigError, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error(ErrorCode::ConfigError, "write failed for " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) throw Error(ErrorCode::ConfigError, "cannot rename onto " + path + ": " + ec.message());
}

std::string summary_text(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string s;
  for (const auto& [k, v] : kv) s += k + "=" + v + "\n";
  return s;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace kcl::cli
