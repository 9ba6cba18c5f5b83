#include "kcl/membership.hpp"

#include <cstdio>

#include "kcl/error.hpp"

namespace kcl {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Member: return "member";
    case Verdict::NotMember: return "not_member";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

namespace {

Verdict aggregate(const std::vector<Evidence>& evidence) {
  bool all_converged = true;
  for (const auto& e : evidence) {
    if (e.result.status == Status::Diverged) return Verdict::NotMember;
    if (e.result.status != Status::Converged) all_converged = false;
  }
  return all_converged ? Verdict::Member : Verdict::Indeterminate;
}

std::string label(const char* name, double tau) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s_%g", name, tau);
  return buf;
}

}  // namespace

MembershipVerdict decide_membership(const TestFunction& f, const DerivedWeight& w,
                                    const MembershipConfig& cfg) {
  MembershipVerdict out;
  Evidence ev;
  ev.space = w.name();
  const auto fe = f.tail_exponent();
  const auto we = w.tail_exponent();
  if (cfg.use_tail_metadata && !f.compact() && fe && we) {
    const double p = 2.0 * *fe + *we;
    ev.analytic = true;
    ev.result.tail_exponent = p;
    ev.result.status = p < -1.0 ? Status::Converged : Status::Diverged;
  } else {
    ev.result = integrate_weighted(f, f, w, cfg.quadrature);
  }
  out.evidence.push_back(std::move(ev));
  out.verdict = aggregate(out.evidence);
  return out;
}

MembershipVerdict decide_dom_t_alpha(const TestFunction& f, const ModelWeight& r, double alpha,
                                     const MembershipConfig& cfg) {
  require_unit_range(alpha, "alpha");
  MembershipVerdict out;
  const std::pair<TestFunction, DerivedWeight> parts[] = {
      {f, DerivedWeight::r_minus(r)},
      {even_part(f), DerivedWeight::eta(r, alpha)},
      {odd_part(f), DerivedWeight::omega(r, alpha)},
  };
  for (const auto& [g, w] : parts) {
    auto v = decide_membership(g, w, cfg);
    for (auto& e : v.evidence) out.evidence.push_back(std::move(e));
  }
  out.verdict = aggregate(out.evidence);
  return out;
}

bool WitnessTable::pattern_holds() const noexcept {
  for (const auto& row : rows) {
    if (row.verdict != row.expected) return false;
  }
  return !rows.empty();
}

WitnessTable witness_table(double alpha, double beta, const ModelWeight& r,
                           const MembershipConfig& cfg) {
  require_unit_range(alpha, "alpha");
  require_unit_range(beta, "beta");
  if (!(alpha < beta)) {
    throw Error(ErrorCode::OrderViolation, "witness table needs alpha < beta");
  }
  WitnessTable t{alpha, beta, {}};
  const TestFunction f_beta = make_f_tau(beta, r);
  const TestFunction g_alpha = make_g_tau(alpha, r);
  const std::string fname = label("f", beta);
  const std::string gname = label("g", alpha);
  t.rows.push_back({fname, alpha, decide_dom_t_alpha(f_beta, r, alpha, cfg).verdict,
                    Verdict::Member});
  t.rows.push_back({fname, beta, decide_dom_t_alpha(f_beta, r, beta, cfg).verdict,
                    Verdict::NotMember});
  t.rows.push_back({gname, alpha, decide_dom_t_alpha(g_alpha, r, alpha, cfg).verdict,
                    Verdict::NotMember});
  t.rows.push_back({gname, beta, decide_dom_t_alpha(g_alpha, r, beta, cfg).verdict,
                    Verdict::Member});
  return t;
}

}  // namespace kcl
