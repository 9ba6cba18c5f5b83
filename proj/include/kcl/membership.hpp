#pragma once

// Integrability oracle for L^2_w spaces and for dom t_alpha.

#include <string>
#include <vector>

#include "kcl/model_space.hpp"
#include "kcl/quadrature.hpp"

namespace kcl {

enum class Verdict { Member, NotMember, Indeterminate };

const char* to_string(Verdict v) noexcept;

struct MembershipConfig {
  QuadratureConfig quadrature;
  // Decide from tail metadata when both the function and the weight carry it.
  bool use_tail_metadata = true;
};

struct Evidence {
  std::string space;       // weight name, e.g. "omega(0.5)"
  IntegrationResult result;
  bool analytic = false;   // decided by exponent comparison, no quadrature
};

struct MembershipVerdict {
  Verdict verdict = Verdict::Indeterminate;
  std::vector<Evidence> evidence;
};

MembershipVerdict decide_membership(const TestFunction& f, const DerivedWeight& w,
                                    const MembershipConfig& cfg);

// f in L^2_{r-}, f_e in L^2_{eta_alpha}, f_o in L^2_{omega_alpha}
MembershipVerdict decide_dom_t_alpha(const TestFunction& f, const ModelWeight& r, double alpha,
                                     const MembershipConfig& cfg);

struct WitnessRow {
  std::string function;  // "f_1", "g_0.5"
  double domain_alpha;
  Verdict verdict;
  Verdict expected;
};

struct WitnessTable {
  double alpha;
  double beta;
  std::vector<WitnessRow> rows;

  bool pattern_holds() const noexcept;
};

// f_beta and g_alpha tested against dom t_alpha and dom t_beta; requires alpha < beta.
WitnessTable witness_table(double alpha, double beta, const ModelWeight& r,
                           const MembershipConfig& cfg);

}  // namespace kcl
