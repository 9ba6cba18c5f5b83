// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "kcl/suites.hpp"

namespace {

struct Criterion {
  const char* label;
  const char* suite;
  double time_limit_s;
};

const std::vector<Criterion> kCriteria = {
    {"weight identities", "weights", 1.0},
    {"Q_alpha representation of t_alpha", "representation", 10.0},
    {"membership witness pattern", "witnesses", 30.0},
    {"S_alpha involution and J/P+- algebra", "involution", 60.0},
    {"indefinite form on compact support, g_0 null", "compact-forms", 60.0},
    {"norm growth of E_alpha((1,k])", "growth", 120.0},
    {"classification of infinity", "critical-point", 300.0},
    {"contour spectral calculus on discretized models", "spectral-calculus", 60.0},
    {"Parseval-plus and representation identities", "triplet-identities", 60.0},
    {"indefinite Sturm-Liouville eigen study", "sturm-liouville", 300.0},
};

}  // namespace

int main() {
  const kcl::SuiteOptions opt;
  int failures = 0;
  for (const auto& c : kCriteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      const kcl::PropertyReport rep = kcl::run_suite(c.suite, opt);
      ok = rep.passed() && !rep.checks.empty();
      for (const auto& ch : rep.checks) {
        if (!ch.passed) detail += " " + ch.name;
      }
    } catch (const std::exception& e) {
      detail = std::string(" error: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.time_limit_s) {
      ok = false;
      detail += " over time limit";
    }
    std::printf("%s  %-50s %8.3fs (limit %gs)%s\n", ok ? "PASS" : "FAIL", c.label, secs,
                c.time_limit_s, detail.c_str());
    if (!ok) ++failures;
  }
  return failures;
}
