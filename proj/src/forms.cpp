#include "kcl/forms.hpp"

#include <algorithm>
#include <cmath>

#include "kcl/error.hpp"

namespace kcl {

const char* to_string(InnerProductKind k) noexcept {
  switch (k) {
    case InnerProductKind::RMinus: return "r_minus_ip";
    case InnerProductKind::RPlus: return "r_plus_ip";
    case InnerProductKind::AbsR: return "abs_r_ip";
    case InnerProductKind::IndefiniteR: return "indefinite_r_ip";
    case InnerProductKind::Eta: return "eta_ip";
    case InnerProductKind::Omega: return "omega_ip";
  }
  return "unknown";
}

namespace {

int severity(Status s) {
  switch (s) {
    case Status::Converged: return 0;
    case Status::Indeterminate: return 1;
    case Status::Diverged: return 2;
  }
  return 1;
}

InnerProductValue wrap(const IntegrationResult& r) { return {r.value, r}; }

// sqrt(|x|^alpha + 1) and |x|^{alpha/2}
std::pair<double, double> q_coefficients(double x, double alpha) {
  if (alpha == 0.0) return {std::sqrt(2.0), 1.0};
  const double u = std::pow(std::abs(x), 0.5 * alpha);
  return {std::sqrt(u * u + 1.0), u};
}

void require_compact(const TestFunction& f, const char* op) {
  if (!f.compact()) {
    throw Error(ErrorCode::UnsupportedDomain,
                std::string(op) + " is defined on compactly supported functions only");
  }
}

std::vector<double> mirrored(const std::vector<double>& b) {
  std::vector<double> out = b;
  for (double x : b) out.push_back(-x);
  return out;
}

}  // namespace

IntegrationResult combine(const IntegrationResult& a, const IntegrationResult& b) {
  IntegrationResult out;
  out.value = a.value + b.value;
  out.abs_error_estimate = a.abs_error_estimate + b.abs_error_estimate;
  out.status = severity(a.status) >= severity(b.status) ? a.status : b.status;
  if (a.tail_exponent && b.tail_exponent) {
    out.tail_exponent = std::max(*a.tail_exponent, *b.tail_exponent);
  } else {
    out.tail_exponent = a.tail_exponent ? a.tail_exponent : b.tail_exponent;
  }
  out.doublings_used = std::max(a.doublings_used, b.doublings_used);
  return out;
}

InnerProductValue inner_product(const ModelWeight& r, InnerProductKind kind, double alpha,
                                const TestFunction& f, const TestFunction& g,
                                const QuadratureConfig& cfg) {
  switch (kind) {
    case InnerProductKind::RMinus:
      return wrap(integrate_weighted(f, g, DerivedWeight::r_minus(r), cfg));
    case InnerProductKind::RPlus:
      return wrap(integrate_weighted(f, g, DerivedWeight::r_plus(r), cfg));
    case InnerProductKind::AbsR:
      return wrap(integrate_weighted(f, g, DerivedWeight::abs_r(r), cfg));
    case InnerProductKind::IndefiniteR:
      return wrap(symmetric_principal_limit(f, g, r, cfg));
    case InnerProductKind::Eta:
      return wrap(integrate_weighted(f, g, DerivedWeight::eta(r, alpha), cfg));
    case InnerProductKind::Omega:
      return wrap(integrate_weighted(f, g, DerivedWeight::omega(r, alpha), cfg));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown inner product kind");
}

InnerProductValue t_alpha_pos(const ModelWeight& r, const TestFunction& f, const TestFunction& g,
                              double alpha, const QuadratureConfig& cfg) {
  require_unit_range(alpha, "alpha");
  const auto odd = inner_product(r, InnerProductKind::Omega, alpha, odd_part(f), odd_part(g), cfg);
  const auto eta = inner_product(r, InnerProductKind::Eta, alpha, f, g, cfg);
  IntegrationResult twice = odd.diagnostics;
  twice.value *= 2.0;
  twice.abs_error_estimate *= 2.0;
  const IntegrationResult total = combine(twice, eta.diagnostics);
  return {total.value, total};
}

InnerProductValue t_alpha_indef(const ModelWeight& r, const TestFunction& f,
                                const TestFunction& g, double alpha, const QuadratureConfig& cfg) {
  require_unit_range(alpha, "alpha");
  return inner_product(r, InnerProductKind::IndefiniteR, alpha, f, g, cfg);
}

TestFunction apply_Q_alpha(const TestFunction& f, double alpha) {
  require_unit_range(alpha, "alpha");
  TestFunction::Meta m;
  m.parity = f.parity();
  m.support_radius = f.support_radius();
  if (!f.compact() && f.tail_exponent() && f.parity() != Parity::None) {
    // even: (v - u) f ~ x^{-alpha/2} f / 2; odd: (v + u) f ~ 2 x^{alpha/2} f
    m.tail_exponent = *f.tail_exponent() + (f.parity() == Parity::Even ? -0.5 : 0.5) * alpha;
    if (alpha == 0.0) m.tail_exponent = f.tail_exponent();
  }
  m.breakpoints = mirrored(f.breakpoints());
  return TestFunction(
      [f, alpha](double x) -> cplx {
        const auto [v, u] = q_coefficients(x, alpha);
        return v * f(x) - u * f(-x);
      },
      std::move(m));
}

TestFunction apply_S_alpha(const TestFunction& f, double alpha) {
  require_compact(f, "S_alpha");
  const TestFunction q = apply_Q_alpha(f, alpha);
  TestFunction::Meta m = q.meta();
  if (m.parity == Parity::Even) {
    m.parity = Parity::Odd;
  } else if (m.parity == Parity::Odd) {
    m.parity = Parity::Even;
  }
  m.breakpoints.push_back(0.0);
  return TestFunction(
      [q](double x) -> cplx {
        if (x > 0.0) return q(x);
        if (x < 0.0) return -q(x);
        return 0.0;
      },
      std::move(m));
}

TestFunction apply_J_alpha(const TestFunction& f, double alpha) { return apply_S_alpha(f, alpha); }

std::pair<TestFunction, TestFunction> project_pm(const TestFunction& f, double alpha) {
  require_compact(f, "P_alpha");
  const TestFunction s = apply_S_alpha(f, alpha);
  return {(f + s).scaled(0.5), (f - s).scaled(0.5)};
}

}  // namespace kcl
