#pragma once

#include <string>
#include <utility>
#include <vector>

namespace kcl::cli {

// Locale-independent shortest-roundtrip-ish formatting ("%.17g").
std::string fmt(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void row(std::vector<std::string> cells);
  std::string str() const;

 private:
  std::size_t width_;
  std::string text_;
};

// Writes to path.tmp then renames over path.
void write_atomic(const std::string& path, const std::string& content);

// key=value lines, in insertion order.
std::string summary_text(const std::vector<std::pair<std::string, std::string>>& kv);

std::string join_path(const std::string& dir, const std::string& name);

}  // namespace kcl::cli
