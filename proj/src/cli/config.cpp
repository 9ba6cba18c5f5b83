#include "kcl/cli/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "kcl/error.hpp"

namespace kcl::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
    throw Error(ErrorCode::ConfigError, "invalid number for " + what + ": '" + text + "'");
  }
  return v;
}

long long parse_int(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || *end != '\0' || errno == ERANGE) {
    throw Error(ErrorCode::ConfigError, "invalid integer for " + what + ": '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t == "true" || t == "1") return true;
  if (t == "false" || t == "0") return false;
  throw Error(ErrorCode::ConfigError, "invalid boolean for " + what + ": '" + text + "'");
}

void apply_key(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "weight.epsilon") {
    c.epsilon = parse_double(value, key);
  } else if (key == "weight.tail_power") {
    c.tail_power = parse_double(value, key);
  } else if (key == "weight.rule") {
    if (trim(value) != "default") {
      throw Error(ErrorCode::ConfigError, "weight.rule supports only 'default'");
    }
  } else if (key == "quadrature.rel_tol") {
    c.quadrature.rel_tol = parse_double(value, key);
  } else if (key == "quadrature.abs_tol") {
    c.quadrature.abs_tol = parse_double(value, key);
  } else if (key == "quadrature.k0") {
    c.quadrature.k0 = parse_double(value, key);
  } else if (key == "quadrature.doublings") {
    c.quadrature.doublings = static_cast<int>(parse_int(value, key));
  } else if (key == "quadrature.nodes_per_panel") {
    c.quadrature.nodes_per_panel = static_cast<int>(parse_int(value, key));
  } else if (key == "quadrature.exponent_margin") {
    c.quadrature.exponent_margin = parse_double(value, key);
  } else if (key == "alpha") {
    c.alphas = parse_list(value);
  } else if (key == "beta") {
    c.beta = parse_double(value, key);
  } else if (key == "k") {
    c.ks = parse_k_range(value);
  } else if (key == "out") {
    c.out_dir = trim(value);
  } else if (key == "seed") {
    const long long s = parse_int(value, key);
    if (s < 0) throw Error(ErrorCode::ConfigError, "seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  } else if (key == "membership.fast_path") {
    c.membership_fast_path = parse_bool(value, key);
  } else if (key == "sl.cells") {
    const long long n = parse_int(value, key);
    if (n < 4 || n % 2 != 0) throw Error(ErrorCode::ConfigError, "sl.cells must be even and >= 4");
    c.sl_cells = static_cast<std::size_t>(n);
  } else if (key == "sl.grading") {
    c.sl_grading = parse_double(value, key);
  } else if (key == "sl.count") {
    c.sl_count = static_cast<int>(parse_int(value, key));
  } else if (key == "contour.n") {
    c.contour_n = static_cast<std::size_t>(parse_int(value, key));
  } else if (key == "contour.seeds") {
    c.contour_seeds = static_cast<int>(parse_int(value, key));
  } else {
    throw Error(ErrorCode::ConfigError, "unknown config key '" + key + "'");
  }
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item, "list entry"));
  if (out.empty()) throw Error(ErrorCode::ConfigError, "empty list");
  return out;
}

std::vector<double> parse_k_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return parse_list(text);
  const double lo = parse_double(text.substr(0, dots), "k range start");
  const double hi = parse_double(text.substr(dots + 2), "k range end");
  if (!(lo > 0.0) || !(hi >= lo)) throw Error(ErrorCode::ConfigError, "k range must satisfy 0 < lo <= hi");
  std::vector<double> out;
  for (double k = lo; k <= hi * (1.0 + 1e-12); k *= 2.0) out.push_back(k);
  return out;
}

void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ConfigError,
                  origin + ":" + std::to_string(lineno) + ": expected key = value");
    }
    try {
      apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigError, origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str(), path);
}

}  // namespace kcl::cli
