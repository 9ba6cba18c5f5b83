#pragma once

// Eigenspectral function of the multiplication operator: E(Delta) acts as
// multiplication by chi_Delta. Operator norms in the t_alpha Hilbert space
// are estimated by Ritz restriction to panel indicators.

#include <optional>
#include <span>
#include <vector>

#include "kcl/model_space.hpp"
#include "kcl/quadrature.hpp"

namespace kcl {

class SpectralInterval {
 public:
  static SpectralInterval empty();
  static SpectralInterval real_line();
  static SpectralInterval bounded(const Interval& iv);
  // R \ iv
  static SpectralInterval complement(const Interval& iv);

  bool is_empty() const noexcept { return kind_ == Kind::Empty; }
  bool is_real_line() const noexcept { return kind_ == Kind::RealLine; }
  bool is_bounded() const noexcept { return kind_ == Kind::Bounded; }
  bool is_complement() const noexcept { return kind_ == Kind::Complement; }
  const Interval& base() const noexcept { return base_; }

  bool contains(double x) const noexcept;
  // Finite endpoints of the base interval.
  std::vector<double> endpoints() const;

 private:
  enum class Kind { Empty, RealLine, Bounded, Complement };
  SpectralInterval(Kind k, Interval iv) : kind_(k), base_(iv) {}
  Kind kind_;
  Interval base_;
};

TestFunction apply_E(const SpectralInterval& delta, const TestFunction& f);

struct GridSpec {
  // Outer radius of the panel basis; 0 picks 4 * max(|finite endpoints|, 2 eps).
  double outer_radius = 0.0;
  int panels_per_octave = 1;
  // Geometric refinement levels toward each endpoint of Delta.
  int endpoint_levels = 24;
};

struct SpectralConfig {
  QuadratureConfig quadrature;
  double exponent_margin = 0.1;
};

// Lower bound for the norm of E_alpha(Delta) in (dom t_alpha, t_alpha).
double estimate_projection_norm(const SpectralInterval& delta, double alpha, const ModelWeight& r,
                                const GridSpec& grid, const SpectralConfig& cfg);

struct GrowthSample {
  double k;
  double norm_estimate;
  double paper_lower_bound;
  double sqrt_variant_bound;
};

struct GrowthCurve {
  double alpha;
  double epsilon;
  std::vector<GrowthSample> samples;
  double fitted_exponent;
};

// Norms of E_alpha((eps, k]) for each k.
GrowthCurve growth_curve(double alpha, std::span<const double> ks, const ModelWeight& r,
                         const GridSpec& grid, const SpectralConfig& cfg);

enum class Classification { Regular, Singular, Indeterminate };

const char* to_string(Classification c) noexcept;

struct CriticalPointVerdict {
  Classification classification;
  double fitted_exponent;
  std::optional<double> bounded_witness;
};

CriticalPointVerdict classify_infinity(const GrowthCurve& curve, const SpectralConfig& cfg);

// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace kcl
