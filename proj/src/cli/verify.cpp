#include "kcl/cli/verify.hpp"

#include <cstdio>
#include <ostream>

#include "kcl/cli/commands.hpp"
#include "kcl/cli/csv.hpp"
#include "kcl/error.hpp"
#include "kcl/suites.hpp"

namespace kcl::cli {

void print_report(const PropertyReport& rep, std::ostream& out) {
  for (const auto& c : rep.checks) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-4s %-58s dev=%-12.4g tol=%.3g\n", c.passed ? "ok" : "FAIL",
                  c.name.c_str(), c.deviation, c.tolerance);
    out << buf;
  }
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, bool write_csv, std::ostream& out) {
  const std::string name = resolve_suite(suite);
  if (name.empty()) throw Error(ErrorCode::ConfigError, "unknown suite '" + suite + "'");
  SuiteOptions o;
  o.weight = cfg.weight();
  o.quadrature = cfg.quadrature;
  if (cfg.contour_n > 0) o.contour_sizes = {cfg.contour_n};
  o.contour_seeds = cfg.contour_seeds;
  o.seed = cfg.seed;
  o.sl_cells = cfg.sl_cells;
  o.sl_grading = cfg.sl_grading;
  o.sl_count = cfg.sl_count;
  const PropertyReport rep = run_suite(name, o);
  print_report(rep, out);
  out << (rep.passed() ? "suite " + suite + ": pass\n" : "suite " + suite + ": FAIL\n");
  if (write_csv) {
    CsvTable csv({"property", "deviation", "tolerance", "pass"});
    for (const auto& c : rep.checks) {
      csv.row({c.name, fmt(c.deviation), fmt(c.tolerance), c.passed ? "true" : "false"});
    }
    write_atomic(join_path(cfg.out_dir, "verify_" + name + ".csv"), csv.str());
  }
  return rep.passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace kcl::cli
