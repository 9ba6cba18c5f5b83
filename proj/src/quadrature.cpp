#include "kcl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "kcl/error.hpp"
#include "kcl/gauss_legendre.hpp"
#include "kcl/simd/kernels.hpp"

namespace kcl {

void QuadratureConfig::validate() const {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::InvalidArgument, m); };
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) fail("quadrature tolerances must be positive");
  if (k0 < 0.0) fail("quadrature k0 must be positive (or 0 for the default)");
  if (doublings < 4) fail("quadrature doublings must be at least 4");
  if (nodes_per_panel < 8) fail("quadrature nodes_per_panel must be at least 8");
  if (!(exponent_margin > 0.0 && exponent_margin < 0.5)) {
    fail("quadrature exponent_margin must lie in (0, 0.5)");
  }
}

double QuadratureConfig::tolerance(double magnitude) const noexcept {
  return std::max(abs_tol, rel_tol * magnitude);
}

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::Converged: return "Converged";
    case Status::Diverged: return "Diverged";
    case Status::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

double estimate_tail_exponent(std::span<const TailSample> samples, const QuadratureConfig&) {
  if (samples.size() < 3) {
    throw Error(ErrorCode::InsufficientSamples, "tail exponent needs at least 3 samples");
  }
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].k > samples[i - 1].k)) {
      throw Error(ErrorCode::InvalidArgument, "tail samples must have increasing k");
    }
  }
  const std::size_t last = samples.size() - 1;
  if (samples[last].partial == samples[last - 1].partial) return kZeroTail;

  // mean-value form: |increment| / width ~ C k^p at the geometric midpoint
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < last; ++i) {
    const double d = std::abs(samples[i + 1].partial - samples[i].partial);
    if (d == 0.0) continue;
    const double width = samples[i + 1].k - samples[i].k;
    const double x = 0.5 * (std::log(samples[i].k) + std::log(samples[i + 1].k));
    const double y = std::log(d / width);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) {
    throw Error(ErrorCode::InsufficientSamples, "tail exponent needs two non-zero increments");
  }
  const double denom = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / denom;
}

namespace {

using Shell = std::function<cplx(double, double)>;

std::vector<double> cuts_between(double a, double b, std::span<const double> hints) {
  std::vector<double> cuts{a};
  for (double h : hints) {
    if (h > a && h < b) cuts.push_back(h);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

// Dyadic cuts eps * 2^j inside [a, b] merged with the hints.
std::vector<double> dyadic_hints(double eps, double a, double b, std::span<const double> hints) {
  std::vector<double> out(hints.begin(), hints.end());
  for (double x = eps; x < b; x *= 2.0) {
    if (x > a) out.push_back(x);
  }
  return out;
}

// Pointwise pair integrand w(x) f(x) conj g(x) + w(-x) f(-x) conj g(-x) on x > 0.
class PairIntegrand {
 public:
  PairIntegrand(const TestFunction& f, const TestFunction& g, std::function<double(double)> w,
                int nodes)
      : f_(f), g_(g), w_(std::move(w)), rule_(gauss_legendre(static_cast<std::size_t>(nodes))) {
    const std::size_t n = rule_.nodes.size();
    for (auto* v : {&x_, &c_, &wv_, &fr_, &fi_, &gr_, &gi_, &out_re_, &out_im_}) v->resize(n);
  }

  cplx panel(double a, double b) {
    const std::size_t n = rule_.nodes.size();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < n; ++i) {
      x_[i] = mid + half * rule_.nodes[i];
      c_[i] = half * rule_.weights[i];
    }
    std::fill(out_re_.begin(), out_re_.end(), 0.0);
    std::fill(out_im_.begin(), out_im_.end(), 0.0);
    side(+1.0);
    side(-1.0);
    return {simd::dot(c_, out_re_), simd::dot(c_, out_im_)};
  }

 private:
  void side(double sign) {
    const std::size_t n = x_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double x = sign * x_[i];
      const cplx fv = f_(x);
      const cplx gv = g_(x);
      const double wv = w_(x);
      if (!std::isfinite(fv.real()) || !std::isfinite(fv.imag()) || !std::isfinite(gv.real()) ||
          !std::isfinite(gv.imag()) || !std::isfinite(wv)) {
        throw Error(ErrorCode::NonFiniteEvaluation,
                    "integrand not finite at x = " + std::to_string(x));
      }
      fr_[i] = fv.real();
      fi_[i] = fv.imag();
      gr_[i] = gv.real();
      gi_[i] = gv.imag();
      wv_[i] = wv;
    }
    simd::accumulate_weighted_product(wv_, {fr_, fi_}, {gr_, gi_}, {out_re_, out_im_});
  }

  const TestFunction& f_;
  const TestFunction& g_;
  std::function<double(double)> w_;
  const GaussRule& rule_;
  std::vector<double> x_, c_, wv_, fr_, fi_, gr_, gi_, out_re_, out_im_;
};

cplx integrate_cuts(const std::vector<double>& cuts, PairIntegrand& integrand) {
  cplx sum{0.0, 0.0};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) sum += integrand.panel(cuts[i], cuts[i + 1]);
  return sum;
}

std::vector<double> positive_hints(const TestFunction& f, const TestFunction& g) {
  std::vector<double> h;
  for (double b : f.breakpoints()) h.push_back(std::abs(b));
  for (double b : g.breakpoints()) h.push_back(std::abs(b));
  return h;
}

std::optional<double> joint_support(const TestFunction& f, const TestFunction& g) {
  if (f.support_radius() && g.support_radius()) {
    return std::min(*f.support_radius(), *g.support_radius());
  }
  if (f.support_radius()) return f.support_radius();
  return g.support_radius();
}

// Drives the doubling schedule from an initial partial integral at radius k0.
double last_hint(const std::vector<double>& hints) {
  double m = 0.0;
  for (double h : hints) {
    if (std::isfinite(h)) m = std::max(m, std::abs(h));
  }
  return m;
}

IntegrationResult drive_tail(const Shell& shell, cplx initial, double k0,
                             const QuadratureConfig& cfg) {
  std::vector<TailSample> samples{{k0, initial}};
  std::deque<cplx> extrapolated;
  cplx partial = initial;
  cplx prev_increment{0.0, 0.0};
  double k = k0;
  double exponent = 0.0;
  bool have_exponent = false;
  int above_count = 0;
  const double lower = -1.0 - cfg.exponent_margin;
  const double upper = -1.0 + cfg.exponent_margin;

  IntegrationResult res;
  for (int j = 1; j <= cfg.doublings; ++j) {
    const cplx d = shell(k, 2.0 * k);
    partial += d;
    k *= 2.0;
    samples.push_back({k, partial});
    res.doublings_used = j;

    if (samples.size() >= 4) {
      const std::size_t m = samples.size();
      const bool zero_tail = samples[m - 1].partial == samples[m - 2].partial &&
                             samples[m - 2].partial == samples[m - 3].partial &&
                             samples[m - 3].partial == samples[m - 4].partial;
      if (zero_tail) {
        res.value = partial;
        res.abs_error_estimate = 0.0;
        res.status = Status::Converged;
        res.tail_exponent = kZeroTail;
        return res;
      }
      const std::size_t window = std::min<std::size_t>(6, m);
      try {
        exponent = estimate_tail_exponent(std::span(samples).subspan(m - window), cfg);
        have_exponent = true;
      } catch (const Error&) {
        have_exponent = false;
      }
      if (have_exponent && exponent < lower) {
        above_count = 0;
        cplx q = std::pow(2.0, exponent + 1.0);
        if (prev_increment != cplx{0.0, 0.0}) {
          const cplx local = d / prev_increment;
          if (std::isfinite(local.real()) && std::abs(local) < 1.0) q = local;
        }
        extrapolated.push_back(partial + d * q / (1.0 - q));
        if (extrapolated.size() > 3) extrapolated.pop_front();
        if (extrapolated.size() == 3) {
          const cplx v = extrapolated[2];
          const double e1 = std::abs(extrapolated[2] - extrapolated[1]);
          const double e0 = std::abs(extrapolated[1] - extrapolated[0]);
          const double tol = cfg.tolerance(std::abs(v));
          if (e1 <= tol && e0 <= tol) {
            res.value = v;
            res.abs_error_estimate = e1;
            res.status = Status::Converged;
            res.tail_exponent = exponent;
            return res;
          }
        }
      } else {
        extrapolated.clear();
        if (have_exponent && exponent > upper) {
          if (++above_count >= 2) {
            res.value = partial;
            res.abs_error_estimate = std::abs(d);
            res.status = Status::Diverged;
            res.tail_exponent = std::max(exponent, upper);
            return res;
          }
        } else {
          above_count = 0;
        }
      }
    }
    prev_increment = d;
  }

  res.value = partial;
  res.abs_error_estimate = std::abs(prev_increment);
  if (have_exponent) res.tail_exponent = exponent;
  // Boundary tie: a fitted exponent at -1 with increments that never settle
  // is the logarithmic divergence of x^{-1}.
  const bool tie = have_exponent && exponent >= -1.0 - 0.5 * cfg.exponent_margin &&
                   exponent <= upper;
  if (tie && std::abs(prev_increment) > cfg.tolerance(std::abs(partial))) {
    res.status = Status::Diverged;
    res.tail_exponent = std::max(exponent, lower + cfg.exponent_margin);
  } else {
    res.status = Status::Indeterminate;
  }
  return res;
}

IntegrationResult integrate_pair(const TestFunction& f, const TestFunction& g,
                                 std::function<double(double)> w, double eps,
                                 const QuadratureConfig& cfg) {
  cfg.validate();
  PairIntegrand integrand(f, g, std::move(w), cfg.nodes_per_panel);
  const std::vector<double> hints = positive_hints(f, g);

  if (const auto support = joint_support(f, g)) {
    IntegrationResult res;
    res.status = Status::Converged;
    res.tail_exponent = kZeroTail;
    if (*support > eps) {
      res.value =
          integrate_cuts(cuts_between(eps, *support, dyadic_hints(eps, eps, *support, hints)),
                         integrand);
    }
    return res;
  }

  // the doubling loop starts past every breakpoint so an exactly-zero run means a zero tail
  const double k0 = std::max(cfg.k0 > 0.0 ? std::max(cfg.k0, eps) : 2.0 * eps, last_hint(hints));
  const cplx initial = integrate_cuts(cuts_between(eps, k0, dyadic_hints(eps, eps, k0, hints)),
                                      integrand);
  const Shell shell = [&](double a, double b) {
    return integrate_cuts(cuts_between(a, b, hints), integrand);
  };
  return drive_tail(shell, initial, k0, cfg);
}

}  // namespace

IntegrationResult integrate_weighted(const TestFunction& f, const TestFunction& g,
                                     const DerivedWeight& w, const QuadratureConfig& cfg) {
  return integrate_pair(f, g, [w](double x) { return w(x); }, w.epsilon(), cfg);
}

IntegrationResult symmetric_principal_limit(const TestFunction& f, const TestFunction& g,
                                            const ModelWeight& r, const QuadratureConfig& cfg) {
  return integrate_pair(f, g, [r](double x) { return r(x); }, r.epsilon(), cfg);
}

cplx integrate_weighted_on(const TestFunction& f, const TestFunction& g,
                           const std::function<double(double)>& w, double a, double b,
                           const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(b > a)) return {0.0, 0.0};
  // one-sided: evaluate the pair integrand with a weight masked to [a, b]
  std::vector<double> hints;
  for (double x : f.breakpoints()) hints.push_back(x);
  for (double x : g.breakpoints()) hints.push_back(x);
  const auto& rule = gauss_legendre(static_cast<std::size_t>(cfg.nodes_per_panel));
  const std::vector<double> cuts = cuts_between(a, b, hints);
  cplx sum{0.0, 0.0};
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double mid = 0.5 * (cuts[p] + cuts[p + 1]);
    const double half = 0.5 * (cuts[p + 1] - cuts[p]);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = mid + half * rule.nodes[i];
      const cplx v = f(x) * std::conj(g(x)) * w(x);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw Error(ErrorCode::NonFiniteEvaluation,
                    "integrand not finite at x = " + std::to_string(x));
      }
      sum += half * rule.weights[i] * v;
    }
  }
  return sum;
}

double integrate_interval(const std::function<double(double)>& fn, double a, double b,
                          std::span<const double> hints, int nodes_per_panel) {
  if (!(b > a)) return 0.0;
  const auto& rule = gauss_legendre(static_cast<std::size_t>(nodes_per_panel));
  const std::size_t n = rule.nodes.size();
  std::vector<double> c(n), v(n);
  const std::vector<double> cuts = cuts_between(a, b, hints);
  double sum = 0.0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double mid = 0.5 * (cuts[p] + cuts[p + 1]);
    const double half = 0.5 * (cuts[p + 1] - cuts[p]);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = mid + half * rule.nodes[i];
      c[i] = half * rule.weights[i];
      v[i] = fn(x);
      if (!std::isfinite(v[i])) {
        throw Error(ErrorCode::NonFiniteEvaluation,
                    "integrand not finite at x = " + std::to_string(x));
      }
    }
    sum += simd::dot(c, v);
  }
  return sum;
}

IntegrationResult integrate_half_line(const std::function<double(double)>& fn, double a,
                                      const QuadratureConfig& cfg,
                                      std::span<const double> hints) {
  cfg.validate();
  if (!(a > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "half-line integration needs a positive start");
  }
  std::vector<double> h(hints.begin(), hints.end());
  const double k0 = std::max(cfg.k0 > 0.0 ? std::max(cfg.k0, a) : 2.0 * a, last_hint(h));
  const double initial = integrate_interval(fn, a, k0, dyadic_hints(a, a, k0, h), cfg.nodes_per_panel);
  const Shell shell = [&](double lo, double hi) -> cplx {
    return integrate_interval(fn, lo, hi, h, cfg.nodes_per_panel);
  };
  return drive_tail(shell, initial, k0, cfg);
}

}  // namespace kcl
