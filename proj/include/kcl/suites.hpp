#pragma once

// Property suites: each runs one family of checks at fixed tolerances and
// returns a report with one line per property.

#include <cstdint>
#include <string>
#include <vector>

#include "kcl/model_space.hpp"
#include "kcl/quadrature.hpp"
#include "kcl/report.hpp"

namespace kcl {

struct SuiteOptions {
  ModelWeight weight{};
  QuadratureConfig quadrature{};
  std::vector<std::size_t> contour_sizes{8, 32, 128};
  int contour_seeds = 10;
  std::uint64_t seed = 0;
  std::size_t sl_cells = 4096;
  double sl_grading = 3.0;
  int sl_count = 24;
};

struct SuiteInfo {
  std::string name;
  std::vector<std::string> aliases;  // names accepted by the command-line interface
  std::string summary;
};

const std::vector<SuiteInfo>& suites();

// Resolves a name or alias; empty when unknown. "all" is handled by callers.
std::string resolve_suite(const std::string& name);

PropertyReport run_suite(const std::string& name, const SuiteOptions& opt);

PropertyReport suite_weights(const SuiteOptions& opt);
PropertyReport suite_representation(const SuiteOptions& opt);
PropertyReport suite_witnesses(const SuiteOptions& opt);
PropertyReport suite_involution(const SuiteOptions& opt);
PropertyReport suite_compact_forms(const SuiteOptions& opt);
PropertyReport suite_hilbert_form(const SuiteOptions& opt);
PropertyReport suite_growth(const SuiteOptions& opt);
PropertyReport suite_critical_point(const SuiteOptions& opt);
PropertyReport suite_spectral_calculus(const SuiteOptions& opt);
PropertyReport suite_triplet_identities(const SuiteOptions& opt);
PropertyReport suite_sturm_liouville(const SuiteOptions& opt);

}  // namespace kcl
