#pragma once

#include <iosfwd>
#include <string>

#include "kcl/cli/config.hpp"
#include "kcl/report.hpp"

namespace kcl::cli {

void print_report(const PropertyReport& rep, std::ostream& out);

// Runs a named suite (or "all"); writes verify_<suite>.csv when write_csv is set.
int cmd_verify(const RunConfig& cfg, const std::string& suite, bool write_csv, std::ostream& out);

}  // namespace kcl::cli
