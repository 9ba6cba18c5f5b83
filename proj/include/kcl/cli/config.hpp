#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kcl/model_space.hpp"
#include "kcl/quadrature.hpp"

namespace kcl::cli {

struct RunConfig {
  double epsilon = 1.0;
  double tail_power = 0.0;
  QuadratureConfig quadrature;
  std::vector<double> alphas;
  double beta = -1.0;                 // unset
  std::vector<double> ks;             // empty selects the command default
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool membership_fast_path = false;
  std::size_t sl_cells = 4096;
  double sl_grading = 3.0;
  int sl_count = 24;
  std::size_t contour_n = 0;          // 0 selects {8, 32, 128}
  int contour_seeds = 10;

  ModelWeight weight() const { return ModelWeight(epsilon, tail_power); }
};

// key = value lines, '#' comments. Unknown keys and bad values throw ConfigError.
void apply_config_file(RunConfig& cfg, const std::string& path);
void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin);

// "0,0.5,1"
std::vector<double> parse_list(const std::string& text);
// "2..256" doubles from 2 to 256; a comma list is taken verbatim.
std::vector<double> parse_k_range(const std::string& text);

}  // namespace kcl::cli
