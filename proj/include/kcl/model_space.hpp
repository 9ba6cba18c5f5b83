#pragma once

// Weight family and named test functions on the real line.
//
// A ModelWeight r is odd, vanishes on the gap [-eps, eps] and satisfies
// x r(x) > 0 outside it. Every other weight (r_plus, r_minus, |r|, eta,
// omega, eta_tilde) is derived from it and is even and non-negative.

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kcl {

using cplx = std::complex<double>;

class ModelWeight {
 public:
  // Signed rule used outside the gap; must be odd with x * rule(x) > 0.
  using Rule = std::function<double(double)>;

  // Default family r(x) = sgn(x) |x|^s for |x| > eps.
  explicit ModelWeight(double epsilon = 1.0, double tail_power = 0.0);

  // User rule; no tail metadata is attached, so consumers fall back to numerics.
  static ModelWeight custom(double epsilon, Rule rule);

  double epsilon() const noexcept { return epsilon_; }
  // s of the default family; meaningless for custom rules.
  double tail_power() const noexcept { return tail_power_; }
  bool is_default_rule() const noexcept { return !rule_; }
  // Power p with |r(x)| ~ C |x|^p; empty for custom rules.
  std::optional<double> tail_exponent() const;

  bool in_gap(double x) const noexcept { return std::abs(x) <= epsilon_; }
  double operator()(double x) const;
  double abs(double x) const;

 private:
  double epsilon_;
  double tail_power_;
  Rule rule_;
};

enum class WeightKind { RPlus, RMinus, AbsR, Eta, Omega, EtaTilde };

std::string to_string(WeightKind kind);

class DerivedWeight {
 public:
  DerivedWeight(ModelWeight base, WeightKind kind, double alpha = 0.0);

  static DerivedWeight r_plus(const ModelWeight& w) { return {w, WeightKind::RPlus}; }
  static DerivedWeight r_minus(const ModelWeight& w) { return {w, WeightKind::RMinus}; }
  static DerivedWeight abs_r(const ModelWeight& w) { return {w, WeightKind::AbsR}; }
  static DerivedWeight eta(const ModelWeight& w, double alpha) { return {w, WeightKind::Eta, alpha}; }
  static DerivedWeight omega(const ModelWeight& w, double alpha) {
    return {w, WeightKind::Omega, alpha};
  }
  static DerivedWeight eta_tilde(const ModelWeight& w, double alpha) {
    return {w, WeightKind::EtaTilde, alpha};
  }

  const ModelWeight& base() const noexcept { return base_; }
  WeightKind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  double epsilon() const noexcept { return base_.epsilon(); }

  double operator()(double x) const;
  // Asymptotic power of the weight at infinity, when the base carries one.
  std::optional<double> tail_exponent() const;
  std::string name() const;

 private:
  ModelWeight base_;
  WeightKind kind_;
  double alpha_;
};

struct Interval {
  double lo;
  double hi;
  bool lo_closed = false;
  bool hi_closed = true;

  bool contains(double x) const noexcept {
    const bool above = lo_closed ? x >= lo : x > lo;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
  }
  bool empty() const noexcept {
    return lo > hi || (lo == hi && !(lo_closed && hi_closed));
  }
};

enum class Parity { Even, Odd, None };

std::string to_string(Parity p);

class TestFunction {
 public:
  using Rule = std::function<cplx(double)>;

  struct Meta {
    Parity parity = Parity::None;
    std::optional<double> support_radius;  // rule vanishes for |x| > radius
    std::optional<double> tail_exponent;   // |f(x)| ~ C |x|^p at infinity
    std::vector<double> breakpoints;       // points where the rule may jump
  };

  TestFunction();  // the zero function
  TestFunction(Rule rule, Meta meta);

  cplx operator()(double x) const { return rule_(x); }

  Parity parity() const noexcept { return meta_.parity; }
  bool compact() const noexcept { return meta_.support_radius.has_value(); }
  std::optional<double> support_radius() const noexcept { return meta_.support_radius; }
  std::optional<double> tail_exponent() const noexcept { return meta_.tail_exponent; }
  const std::vector<double>& breakpoints() const noexcept { return meta_.breakpoints; }
  const Meta& meta() const noexcept { return meta_; }

  static TestFunction zero();
  // Characteristic function of an interval times a constant.
  static TestFunction indicator(const Interval& iv, cplx value = 1.0);

  TestFunction operator+(const TestFunction& other) const;
  TestFunction operator-(const TestFunction& other) const;
  TestFunction scaled(cplx a) const;

 private:
  Rule rule_;
  Meta meta_;
};

// Checks the declared parity on the given sample points (exact comparison).
bool parity_holds(const TestFunction& f, std::span<const double> xs);

double eval_weight(const ModelWeight& w, double x);
double eval_weight(const DerivedWeight& w, double x);

// Odd: sgn(x) / (sqrt|r(x)| |x|^{(tau+2)/4}) outside the gap, zero inside.
TestFunction make_f_tau(double tau, const ModelWeight& w);
// Even: 1 / (sqrt|r(x)| |x|^{(2-tau)/4}) outside the gap, zero inside.
TestFunction make_g_tau(double tau, const ModelWeight& w);

TestFunction even_part(const TestFunction& f);
TestFunction odd_part(const TestFunction& f);
// chi_[-k,k] f
TestFunction truncate(const TestFunction& f, double k);
// chi_iv f, for intervals not necessarily symmetric.
TestFunction restrict_to(const TestFunction& f, const Interval& iv);

// Validates alpha or tau in [0, 2]; throws InvalidArgument otherwise.
void require_unit_range(double value, const char* what);

}  // namespace kcl
