#include "kcl/eigenspectral.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "kcl/error.hpp"
#include "kcl/parallel.hpp"

namespace kcl {

SpectralInterval SpectralInterval::empty() { return {Kind::Empty, {0.0, 0.0, false, false}}; }

SpectralInterval SpectralInterval::real_line() {
  const double inf = std::numeric_limits<double>::infinity();
  return {Kind::RealLine, {-inf, inf, false, false}};
}

SpectralInterval SpectralInterval::bounded(const Interval& iv) {
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
    throw Error(ErrorCode::InvalidArgument, "bounded spectral interval needs finite endpoints");
  }
  if (iv.lo > iv.hi) throw Error(ErrorCode::InvalidArgument, "interval endpoints out of order");
  if (iv.empty()) return empty();
  return {Kind::Bounded, iv};
}

SpectralInterval SpectralInterval::complement(const Interval& iv) {
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
    throw Error(ErrorCode::InvalidArgument, "complement of an unbounded interval");
  }
  if (iv.lo > iv.hi) throw Error(ErrorCode::InvalidArgument, "interval endpoints out of order");
  if (iv.empty()) return real_line();
  return {Kind::Complement, iv};
}

bool SpectralInterval::contains(double x) const noexcept {
  switch (kind_) {
    case Kind::Empty: return false;
    case Kind::RealLine: return true;
    case Kind::Bounded: return base_.contains(x);
    case Kind::Complement: return !base_.contains(x);
  }
  return false;
}

std::vector<double> SpectralInterval::endpoints() const {
  if (kind_ == Kind::Bounded || kind_ == Kind::Complement) return {base_.lo, base_.hi};
  return {};
}

TestFunction apply_E(const SpectralInterval& delta, const TestFunction& f) {
  if (delta.is_real_line()) return f;
  if (delta.is_empty()) return TestFunction::zero();
  const Interval iv = delta.base();
  if (delta.is_bounded()) return restrict_to(f, iv);
  TestFunction::Meta m = f.meta();
  const bool symmetric = iv.lo == -iv.hi && iv.lo_closed == iv.hi_closed;
  if (!symmetric) m.parity = Parity::None;
  m.breakpoints.push_back(iv.lo);
  m.breakpoints.push_back(iv.hi);
  return TestFunction(
      [f, iv](double x) -> cplx { return iv.contains(x) ? cplx{0.0, 0.0} : f(x); },
      std::move(m));
}

namespace {

std::vector<double> panel_cuts(const SpectralInterval& delta, double eps, const GridSpec& grid) {
  double reach = 2.0 * eps;
  for (double e : delta.endpoints()) reach = std::max(reach, std::abs(e));
  const double K = grid.outer_radius > 0.0 ? grid.outer_radius : 4.0 * reach;
  if (!(K > eps)) throw Error(ErrorCode::InvalidArgument, "grid radius must exceed the gap");
  if (grid.panels_per_octave < 1 || grid.endpoint_levels < 0) {
    throw Error(ErrorCode::InvalidArgument, "grid spec fields out of range");
  }
  std::vector<double> cuts;
  const double step = std::exp2(1.0 / grid.panels_per_octave);
  for (double x = eps; x < K; x *= step) cuts.push_back(x);
  cuts.push_back(K);
  for (double e : delta.endpoints()) {
    const double a = std::abs(e);
    if (!(a > eps && a < K)) continue;
    cuts.push_back(a);
    for (int j = 1; j <= grid.endpoint_levels; ++j) {
      const double h = std::ldexp(1.0, -j);
      for (double c : {a * (1.0 - h), a * (1.0 + h)}) {
        if (c > eps && c < K) cuts.push_back(c);
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

}  // namespace

double estimate_projection_norm(const SpectralInterval& delta, double alpha, const ModelWeight& r,
                                const GridSpec& grid, const SpectralConfig& cfg) {
  require_unit_range(alpha, "alpha");
  if (delta.is_empty()) return 0.0;
  const std::vector<double> cuts = panel_cuts(delta, r.epsilon(), grid);
  const std::size_t n = cuts.size() - 1;
  const DerivedWeight omega = DerivedWeight::omega(r, alpha);
  const DerivedWeight eta = DerivedWeight::eta(r, alpha);

  // Basis: chi of panel i on the right (index i) and its mirror (index n + i).
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  Eigen::VectorXd d(2 * n);
  const int nodes = cfg.quadrature.nodes_per_panel;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    const double W = integrate_interval([&](double x) { return omega(x); }, a, b, {}, nodes);
    const double H = integrate_interval([&](double x) { return eta(x); }, a, b, {}, nodes);
    G(i, i) = G(n + i, n + i) = W + H;
    G(i, n + i) = G(n + i, i) = -W;
    const double mid = 0.5 * (a + b);
    d(i) = delta.contains(mid) ? 1.0 : 0.0;
    d(n + i) = delta.contains(-mid) ? 1.0 : 0.0;
  }
  if (d.sum() == 0.0) return 0.0;

  // Jacobi scaling keeps tiny endpoint panels from masquerading as rank loss.
  const Eigen::VectorXd scale = G.diagonal().cwiseSqrt().cwiseInverse();
  G = scale.asDiagonal() * G * scale.asDiagonal();
  const Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularGram, "panel Gram matrix is not positive definite");
  }
  const Eigen::VectorXd ldiag = llt.matrixL().toDenseMatrix().diagonal();
  if (ldiag.minCoeff() <= 1e-7) {
    throw Error(ErrorCode::SingularGram, "panel Gram matrix is numerically rank deficient");
  }
  const Eigen::MatrixXd B = d.asDiagonal() * G * d.asDiagonal();

  // Endpoint refinement clusters the top Ritz values geometrically, which stalls
  // plain power iteration; the pencil is small, so solve it outright.
  const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(B, G,
                                                                      Eigen::EigenvaluesOnly);
  if (ges.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "generalized eigenvalue solve failed");
  }
  return std::sqrt(std::max(0.0, ges.eigenvalues().maxCoeff()));
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw Error(ErrorCode::InsufficientSamples, "slope fit needs two positive samples");
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw Error(ErrorCode::InvalidArgument, "slope fit needs distinct abscissae");
  return (n * sxy - sx * sy) / denom;
}

GrowthCurve growth_curve(double alpha, std::span<const double> ks, const ModelWeight& r,
                         const GridSpec& grid, const SpectralConfig& cfg) {
  require_unit_range(alpha, "alpha");
  const double eps = r.epsilon();
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (!(ks[i] > eps) || (i > 0 && !(ks[i] > ks[i - 1]))) {
      throw Error(ErrorCode::InvalidArgument, "k schedule must increase and exceed the gap");
    }
  }
  GrowthCurve curve{alpha, eps, std::vector<GrowthSample>(ks.size()), 0.0};

  // Bound 2 (k^{a/2} - eps^{a/2}) / (a (g_0, g_0)_{eta_a}); vacuous (0) when g_0 is not in dom t_a.
  double scale = 0.0;
  if (alpha > 0.0) {
    const TestFunction g0 = make_g_tau(0.0, r);
    const IntegrationResult c = integrate_weighted(g0, g0, DerivedWeight::eta(r, alpha),
                                                   cfg.quadrature);
    if (c.status == Status::Converged && c.value.real() > 0.0) {
      scale = 2.0 / (alpha * c.value.real());
    }
  }

  parallel_for(ks.size(), [&](std::size_t i) {
    const double k = ks[i];
    const auto delta = SpectralInterval::bounded({eps, k, false, true});
    GrowthSample& s = curve.samples[i];
    s.k = k;
    s.norm_estimate = estimate_projection_norm(delta, alpha, r, grid, cfg);
    s.paper_lower_bound =
        scale * (std::pow(k, 0.5 * alpha) - std::pow(eps, 0.5 * alpha));
    s.sqrt_variant_bound = std::sqrt(s.paper_lower_bound);
  });

  std::vector<double> xs, ys;
  for (const auto& s : curve.samples) {
    xs.push_back(s.k);
    ys.push_back(s.norm_estimate);
  }
  curve.fitted_exponent = xs.size() >= 2 ? loglog_slope(xs, ys) : 0.0;
  return curve;
}

const char* to_string(Classification c) noexcept {
  switch (c) {
    case Classification::Regular: return "regular";
    case Classification::Singular: return "singular";
    case Classification::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

CriticalPointVerdict classify_infinity(const GrowthCurve& curve, const SpectralConfig& cfg) {
  if (curve.samples.size() < 4) {
    throw Error(ErrorCode::InsufficientSamples, "classification needs at least 4 samples");
  }
  double witness = 0.0;
  for (const auto& s : curve.samples) witness = std::max(witness, s.norm_estimate);
  CriticalPointVerdict v{Classification::Indeterminate, curve.fitted_exponent, std::nullopt};

  // t_0 is sandwiched between (sqrt2 -+ 1) (.,.)_{|r|}, so alpha = 0 is regular outright.
  if (curve.alpha == 0.0) {
    v.classification = Classification::Regular;
    v.bounded_witness = witness;
    return v;
  }
  const double span =
      std::log10(curve.samples.back().k / curve.samples.front().k);
  if (curve.alpha <= 0.2 && span < 4.0) return v;
  if (curve.fitted_exponent > cfg.exponent_margin) {
    v.classification = Classification::Singular;
  } else {
    v.classification = Classification::Regular;
    v.bounded_witness = witness;
  }
  return v;
}

}  // namespace kcl
