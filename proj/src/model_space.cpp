#include "kcl/model_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "kcl/error.hpp"

namespace kcl {

void require_unit_range(double value, const char* what) {
  if (!(value >= 0.0 && value <= 2.0)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + " must lie in [0, 2], got " + std::to_string(value));
  }
}

ModelWeight::ModelWeight(double epsilon, double tail_power)
    : epsilon_(epsilon), tail_power_(tail_power) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::InvalidArgument, "weight epsilon must be positive");
  }
  if (!(tail_power > -1.0) || !std::isfinite(tail_power)) {
    throw Error(ErrorCode::InvalidArgument, "weight tail power must exceed -1");
  }
}

ModelWeight ModelWeight::custom(double epsilon, Rule rule) {
  if (!rule) throw Error(ErrorCode::InvalidArgument, "custom weight rule is empty");
  ModelWeight w(epsilon, 0.0);
  w.rule_ = std::move(rule);
  return w;
}

std::optional<double> ModelWeight::tail_exponent() const {
  if (rule_) return std::nullopt;
  return tail_power_;
}

double ModelWeight::operator()(double x) const {
  if (in_gap(x)) return 0.0;
  if (rule_) return rule_(x);
  const double mag = tail_power_ == 0.0 ? 1.0 : std::pow(std::abs(x), tail_power_);
  return x > 0.0 ? mag : -mag;
}

double ModelWeight::abs(double x) const { return std::abs((*this)(x)); }

std::string to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::RPlus: return "r_plus";
    case WeightKind::RMinus: return "r_minus";
    case WeightKind::AbsR: return "abs_r";
    case WeightKind::Eta: return "eta";
    case WeightKind::Omega: return "omega";
    case WeightKind::EtaTilde: return "eta_tilde";
  }
  return "unknown";
}

DerivedWeight::DerivedWeight(ModelWeight base, WeightKind kind, double alpha)
    : base_(std::move(base)), kind_(kind), alpha_(alpha) {
  if (kind == WeightKind::Eta || kind == WeightKind::Omega || kind == WeightKind::EtaTilde) {
    require_unit_range(alpha, "alpha");
  }
}

double DerivedWeight::operator()(double x) const {
  if (base_.in_gap(x)) return 0.0;
  const double ax = std::abs(x);
  const double ar = base_.abs(x);
  switch (kind_) {
    case WeightKind::RPlus:
      return x * base_(x);
    case WeightKind::RMinus:
      return base_(x) / x;
    case WeightKind::AbsR:
      return ar;
    case WeightKind::Eta: {
      if (alpha_ == 0.0) return (std::sqrt(2.0) - 1.0) * ar;
      // sqrt(u^2 + 1) - u without cancellation
      const double u = std::pow(ax, 0.5 * alpha_);
      return ar / (std::sqrt(u * u + 1.0) + u);
    }
    case WeightKind::Omega:
      if (alpha_ == 0.0) return ar;
      return std::pow(ax, 0.5 * alpha_) * ar;
    case WeightKind::EtaTilde:
      if (alpha_ == 0.0) return ar;
      return ar / std::pow(ax, 0.5 * alpha_);
  }
  return 0.0;
}

std::optional<double> DerivedWeight::tail_exponent() const {
  const auto s = base_.tail_exponent();
  if (!s) return std::nullopt;
  switch (kind_) {
    case WeightKind::RPlus: return *s + 1.0;
    case WeightKind::RMinus: return *s - 1.0;
    case WeightKind::AbsR: return *s;
    case WeightKind::Eta: return alpha_ == 0.0 ? *s : *s - 0.5 * alpha_;
    case WeightKind::Omega: return *s + 0.5 * alpha_;
    case WeightKind::EtaTilde: return *s - 0.5 * alpha_;
  }
  return std::nullopt;
}

std::string DerivedWeight::name() const {
  switch (kind_) {
    case WeightKind::Eta:
    case WeightKind::Omega:
    case WeightKind::EtaTilde: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s(%g)", to_string(kind_).c_str(), alpha_);
      return buf;
    }
    default:
      return to_string(kind_);
  }
}

std::string to_string(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::None: return "none";
  }
  return "none";
}

namespace {

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<double> mirrored(const std::vector<double>& a) {
  std::vector<double> out = a;
  for (double x : a) out.push_back(-x);
  return merged(std::move(out), {});
}

bool is_zero_meta(const TestFunction::Meta& m) {
  return m.support_radius && *m.support_radius == 0.0;
}

}  // namespace

TestFunction::TestFunction() : TestFunction(zero()) {}

TestFunction::TestFunction(Rule rule, Meta meta) : rule_(std::move(rule)), meta_(std::move(meta)) {
  if (!rule_) throw Error(ErrorCode::InvalidArgument, "test function rule is empty");
  meta_.breakpoints = merged(std::move(meta_.breakpoints), {});
}

TestFunction TestFunction::zero() {
  Meta m;
  m.parity = Parity::Even;
  m.support_radius = 0.0;
  TestFunction f([](double) { return cplx{0.0, 0.0}; }, Meta{});
  f.meta_ = m;
  return f;
}

TestFunction TestFunction::indicator(const Interval& iv, cplx value) {
  if (iv.empty() || value == cplx{0.0, 0.0}) return zero();
  Meta m;
  m.support_radius = std::max(std::abs(iv.lo), std::abs(iv.hi));
  m.breakpoints = {iv.lo, iv.hi};
  const bool symmetric = iv.lo == -iv.hi && iv.lo_closed == iv.hi_closed;
  m.parity = symmetric ? Parity::Even : Parity::None;
  return TestFunction([iv, value](double x) { return iv.contains(x) ? value : cplx{0.0, 0.0}; },
                      std::move(m));
}

TestFunction TestFunction::operator+(const TestFunction& other) const {
  if (is_zero_meta(meta_)) return other;
  if (is_zero_meta(other.meta_)) return *this;
  Meta m;
  m.parity = meta_.parity == other.meta_.parity ? meta_.parity : Parity::None;
  if (meta_.support_radius && other.meta_.support_radius) {
    m.support_radius = std::max(*meta_.support_radius, *other.meta_.support_radius);
  }
  if (meta_.support_radius && other.meta_.tail_exponent) {
    m.tail_exponent = other.meta_.tail_exponent;
  } else if (other.meta_.support_radius && meta_.tail_exponent) {
    m.tail_exponent = meta_.tail_exponent;
  } else if (meta_.tail_exponent && other.meta_.tail_exponent &&
             *meta_.tail_exponent != *other.meta_.tail_exponent) {
    // distinct powers cannot cancel
    m.tail_exponent = std::max(*meta_.tail_exponent, *other.meta_.tail_exponent);
  }
  m.breakpoints = merged(meta_.breakpoints, other.meta_.breakpoints);
  auto a = rule_;
  auto b = other.rule_;
  return TestFunction([a, b](double x) { return a(x) + b(x); }, std::move(m));
}

TestFunction TestFunction::operator-(const TestFunction& other) const {
  return *this + other.scaled(-1.0);
}

TestFunction TestFunction::scaled(cplx a) const {
  if (a == cplx{0.0, 0.0}) return zero();
  if (a == cplx{1.0, 0.0}) return *this;
  auto r = rule_;
  return TestFunction([r, a](double x) { return a * r(x); }, meta_);
}

bool parity_holds(const TestFunction& f, std::span<const double> xs) {
  for (double x : xs) {
    const cplx a = f(x);
    const cplx b = f(-x);
    if (f.parity() == Parity::Even && a != b) return false;
    if (f.parity() == Parity::Odd && a != -b) return false;
  }
  return true;
}

double eval_weight(const ModelWeight& w, double x) { return w(x); }
double eval_weight(const DerivedWeight& w, double x) { return w(x); }

TestFunction make_f_tau(double tau, const ModelWeight& w) {
  require_unit_range(tau, "tau");
  const double power = 0.25 * (tau + 2.0);
  TestFunction::Meta m;
  m.parity = Parity::Odd;
  m.breakpoints = {-w.epsilon(), w.epsilon()};
  if (const auto s = w.tail_exponent()) m.tail_exponent = -0.5 * *s - power;
  return TestFunction(
      [w, power](double x) -> cplx {
        if (w.in_gap(x)) return 0.0;
        const double mag = 1.0 / (std::sqrt(w.abs(x)) * std::pow(std::abs(x), power));
        return x > 0.0 ? mag : -mag;
      },
      std::move(m));
}

TestFunction make_g_tau(double tau, const ModelWeight& w) {
  require_unit_range(tau, "tau");
  const double power = 0.25 * (2.0 - tau);
  TestFunction::Meta m;
  m.parity = Parity::Even;
  m.breakpoints = {-w.epsilon(), w.epsilon()};
  if (const auto s = w.tail_exponent()) m.tail_exponent = -0.5 * *s - power;
  return TestFunction(
      [w, power](double x) -> cplx {
        if (w.in_gap(x)) return 0.0;
        return 1.0 / (std::sqrt(w.abs(x)) * std::pow(std::abs(x), power));
      },
      std::move(m));
}

TestFunction even_part(const TestFunction& f) {
  if (f.parity() == Parity::Even) return f;
  if (f.parity() == Parity::Odd) return TestFunction::zero();
  TestFunction::Meta m;
  m.parity = Parity::Even;
  m.support_radius = f.support_radius();
  m.breakpoints = mirrored(f.breakpoints());
  return TestFunction([f](double x) { return 0.5 * (f(x) + f(-x)); }, std::move(m));
}

TestFunction odd_part(const TestFunction& f) {
  if (f.parity() == Parity::Odd) return f;
  if (f.parity() == Parity::Even) return TestFunction::zero();
  TestFunction::Meta m;
  m.parity = Parity::Odd;
  m.support_radius = f.support_radius();
  m.breakpoints = mirrored(f.breakpoints());
  return TestFunction([f](double x) { return 0.5 * (f(x) - f(-x)); }, std::move(m));
}

TestFunction truncate(const TestFunction& f, double k) {
  if (!(k > 0.0)) throw Error(ErrorCode::InvalidArgument, "truncation radius must be positive");
  TestFunction::Meta m = f.meta();
  m.support_radius = f.support_radius() ? std::min(*f.support_radius(), k) : k;
  m.tail_exponent.reset();
  m.breakpoints = merged(m.breakpoints, {-k, k});
  return TestFunction(
      [f, k](double x) -> cplx { return std::abs(x) <= k ? f(x) : cplx{0.0, 0.0}; },
      std::move(m));
}

TestFunction restrict_to(const TestFunction& f, const Interval& iv) {
  if (iv.empty()) return TestFunction::zero();
  TestFunction::Meta m;
  const bool symmetric = iv.lo == -iv.hi && iv.lo_closed == iv.hi_closed;
  m.parity = symmetric ? f.parity() : Parity::None;
  double radius = std::max(std::abs(iv.lo), std::abs(iv.hi));
  if (f.support_radius()) radius = std::min(radius, *f.support_radius());
  if (std::isfinite(radius)) {
    m.support_radius = radius;
  } else {
    m.tail_exponent = f.tail_exponent();
  }
  std::vector<double> cuts;
  if (std::isfinite(iv.lo)) cuts.push_back(iv.lo);
  if (std::isfinite(iv.hi)) cuts.push_back(iv.hi);
  m.breakpoints = merged(f.breakpoints(), cuts);
  return TestFunction(
      [f, iv](double x) -> cplx { return iv.contains(x) ? f(x) : cplx{0.0, 0.0}; },
      std::move(m));
}

}  // namespace kcl
