#pragma once

// Weighted integration over the real line outside the weight gap.
//
// Integrals are accumulated on [-K, -eps] U [eps, K] with K doubled from k0.
// Each doubling adds one dyadic shell; the shell increments drive both the
// tail-exponent classifier and a geometric (Aitken) extrapolation of the
// limit. A result is Converged once three successive extrapolations agree
// to tolerance, Diverged once the fitted integrand exponent sits clearly
// above -1, and Indeterminate if the doubling budget runs out first.

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "kcl/model_space.hpp"

namespace kcl {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  // Initial truncation radius; 0 selects 2 * eps of the weight in use.
  double k0 = 0.0;
  int doublings = 64;
  int nodes_per_panel = 16;
  double exponent_margin = 0.1;

  // Throws InvalidArgument when a field violates its range.
  void validate() const;
  double tolerance(double magnitude) const noexcept;
};

enum class Status { Converged, Diverged, Indeterminate };

const char* to_string(Status s) noexcept;

struct IntegrationResult {
  cplx value{0.0, 0.0};
  double abs_error_estimate = 0.0;
  Status status = Status::Indeterminate;
  // Fitted p in |integrand| ~ C x^p; -inf when the tail is identically zero.
  std::optional<double> tail_exponent;
  int doublings_used = 0;
};

struct TailSample {
  double k;
  cplx partial;
};

inline constexpr double kZeroTail = -std::numeric_limits<double>::infinity();

// Least-squares exponent p of the integrand from partial integrals taken at
// increasing radii. Returns kZeroTail when the last increment vanishes.
double estimate_tail_exponent(std::span<const TailSample> samples, const QuadratureConfig& cfg);

// Integral of f conj(g) w over the real line.
IntegrationResult integrate_weighted(const TestFunction& f, const TestFunction& g,
                                     const DerivedWeight& w, const QuadratureConfig& cfg);

// lim_{k -> inf} of the integral of f conj(g) r over [-k, k].
IntegrationResult symmetric_principal_limit(const TestFunction& f, const TestFunction& g,
                                            const ModelWeight& r, const QuadratureConfig& cfg);

// Integral of f conj(g) w over a bounded interval [a, b]; no tail logic.
cplx integrate_weighted_on(const TestFunction& f, const TestFunction& g,
                           const std::function<double(double)>& w, double a, double b,
                           const QuadratureConfig& cfg);

// Composite Gauss-Legendre on [a, b] split at the given hints.
double integrate_interval(const std::function<double(double)>& fn, double a, double b,
                          std::span<const double> hints, int nodes_per_panel);

// Improper integral of fn over [a, inf) with the same doubling/extrapolation
// scheme; hints are extra panel cuts.
IntegrationResult integrate_half_line(const std::function<double(double)>& fn, double a,
                                      const QuadratureConfig& cfg,
                                      std::span<const double> hints = {});

}  // namespace kcl
