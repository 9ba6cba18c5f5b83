#include "kcl/langer_contour.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "kcl/error.hpp"
#include "kcl/gauss_legendre.hpp"
#include "kcl/quadrature.hpp"
#include "kcl/simd/kernels.hpp"

namespace kcl {

ModelGrid ModelGrid::symmetric(const std::vector<double>& positive) {
  ModelGrid g;
  for (double p : positive) g.points.push_back(-p);
  for (double p : positive) g.points.push_back(p);
  std::sort(g.points.begin(), g.points.end());
  return g;
}

ModelGrid ModelGrid::random(std::uint64_t seed, std::size_t n, double eps, double extent) {
  if (n < 2 || n % 2 != 0) throw Error(ErrorCode::InvalidArgument, "random grid size must be even");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(eps, eps + extent);
  ModelGrid g;
  for (double sign : {-1.0, 1.0}) {
    for (std::size_t i = 0; i < n / 2; ++i) {
      double x = u(rng);
      while (x <= eps) x = u(rng);
      g.points.push_back(sign * x);
    }
  }
  std::sort(g.points.begin(), g.points.end());
  if (std::adjacent_find(g.points.begin(), g.points.end()) != g.points.end()) {
    throw Error(ErrorCode::InvalidArgument, "random grid produced a repeated point");
  }
  return g;
}

Eigen::MatrixXd DiscretizedModel::operator_matrix() const {
  return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()))
      .asDiagonal();
}

double DiscretizedModel::scale() const noexcept {
  double s = 1.0;
  for (double v : x) s = std::max(s, std::abs(v));
  return s;
}

DiscretizedModel build_discretized_model(double alpha, const ModelWeight& r, const ModelGrid& grid) {
  require_unit_range(alpha, "alpha");
  const auto& pts = grid.points;
  const double eps = r.epsilon();
  if (pts.empty()) throw Error(ErrorCode::GapViolation, "discretized model needs grid points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!std::isfinite(pts[i])) throw Error(ErrorCode::InvalidArgument, "grid point not finite");
    if (std::abs(pts[i]) <= eps) {
      throw Error(ErrorCode::GapViolation, "grid point inside the gap [-eps, eps]");
    }
    if (i > 0 && !(pts[i] > pts[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "grid points must be strictly increasing");
    }
  }

  DiscretizedModel m;
  m.alpha = alpha;
  m.epsilon = eps;
  m.x = pts;
  const std::size_t n = pts.size();
  // Cells are Voronoi cells of each side, clipped at the gap.
  for (std::size_t i = 0; i < n; ++i) {
    const double x = pts[i];
    const bool left_same = i > 0 && (pts[i - 1] > 0) == (x > 0);
    const bool right_same = i + 1 < n && (pts[i + 1] > 0) == (x > 0);
    double lo, hi;
    if (left_same) {
      lo = 0.5 * (pts[i - 1] + x);
    } else {
      const double h = right_same ? 0.5 * (pts[i + 1] - x) : 0.5;
      lo = x > 0 ? std::max(eps, x - h) : x - h;
    }
    if (right_same) {
      hi = 0.5 * (x + pts[i + 1]);
    } else {
      const double h = left_same ? 0.5 * (x - pts[i - 1]) : 0.5;
      hi = x < 0 ? std::min(-eps, x + h) : x + h;
    }
    m.cell_lo.push_back(lo);
    m.cell_hi.push_back(hi);
    m.w.push_back(hi - lo);
    m.r.push_back(r(x));
  }
  m.gram_ind.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) m.gram_ind(static_cast<Eigen::Index>(i)) = m.r[i] * m.w[i];

  // t_alpha(chi_A, chi_B) = int_{A cap B} (omega + eta) - int_{A cap -B} omega
  const DerivedWeight omega = DerivedWeight::omega(r, alpha);
  const DerivedWeight eta = DerivedWeight::eta(r, alpha);
  auto integral = [&](const DerivedWeight& w, double a, double b) {
    if (!(b > a)) return 0.0;
    return integrate_interval([&](double t) { return w(t); }, a, b, {}, 16);
  };
  m.gram_pos = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const double a = m.cell_lo[i], b = m.cell_hi[i];
    m.gram_pos(ii, ii) = integral(omega, a, b) + integral(eta, a, b);
    for (std::size_t j = 0; j < n; ++j) {
      if ((pts[j] > 0) == (pts[i] > 0)) continue;
      const double lo = std::max(a, -m.cell_hi[j]);
      const double hi = std::min(b, -m.cell_lo[j]);
      if (hi > lo) m.gram_pos(ii, static_cast<Eigen::Index>(j)) -= integral(omega, lo, hi);
    }
  }
  m.gram_pos = 0.5 * (m.gram_pos + m.gram_pos.transpose()).eval();
  const Eigen::LLT<Eigen::MatrixXd> llt(m.gram_pos);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularGram, "t_alpha Gram matrix is not positive definite");
  }
  return m;
}

Eigen::VectorXcd resolvent_apply(const DiscretizedModel& m, std::complex<double> lambda,
                                 const Eigen::VectorXcd& v) {
  if (static_cast<std::size_t>(v.size()) != m.size()) {
    throw Error(ErrorCode::InvalidArgument, "vector length does not match the model");
  }
  const double tol = 1e-12 * m.scale();
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const std::complex<double> d = m.x[static_cast<std::size_t>(i)] - lambda;
    if (std::abs(d) < tol) throw Error(ErrorCode::PoleHit, "lambda on the spectrum");
    out(i) = v(i) / d;
  }
  return out;
}

void ContourSpec::validate() const {
  auto decreasing_in = [](const std::vector<double>& s, double hi) {
    if (s.empty()) return false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!(s[i] > 0.0 && s[i] < hi)) return false;
      if (i > 0 && !(s[i] < s[i - 1])) return false;
    }
    return true;
  };
  if (!decreasing_in(delta_schedule, 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "delta schedule must decrease inside (0, 1)");
  }
  if (!decreasing_in(epsilon_schedule, 0.5)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon schedule must decrease inside (0, 0.5)");
  }
  if (nodes_per_segment < 16) throw Error(ErrorCode::InvalidArgument, "nodes_per_segment < 16");
  if (vertical_extent != 1.0) throw Error(ErrorCode::InvalidArgument, "vertical extent is fixed at 1");
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Accumulator {
  const DiscretizedModel& m;
  const GaussRule& rule;
  std::vector<double> re, im;

  Accumulator(const DiscretizedModel& model, int nodes)
      : m(model), rule(gauss_legendre(static_cast<std::size_t>(nodes))),
        re(model.size(), 0.0), im(model.size(), 0.0) {}

  // Straight segment from z0 to z1 as one Gauss-Legendre panel.
  void segment(std::complex<double> z0, std::complex<double> z1) {
    const std::complex<double> mid = 0.5 * (z0 + z1);
    const std::complex<double> half = 0.5 * (z1 - z0);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const std::complex<double> lambda = mid + half * rule.nodes[k];
      const std::complex<double> c = half * rule.weights[k];
      simd::resolvent_accumulate(m.x, lambda.real(), lambda.imag(), c.real(), c.imag(),
                                 {re, im});
    }
  }

  // Horizontal run at height y from x0 to x1, unit-length panels.
  void horizontal(double x0, double x1, double y) {
    const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(x1 - x0) / 0.5)));
    for (int p = 0; p < panels; ++p) {
      const double a = x0 + (x1 - x0) * p / panels;
      const double b = x0 + (x1 - x0) * (p + 1) / panels;
      segment({a, y}, {b, y});
    }
  }

  // Vertical run at abscissa x between heights t0 and t1 (same sign),
  // geometrically graded toward the real axis.
  void vertical(double x, double t0, double t1) {
    const double sign = t0 + t1 > 0 ? 1.0 : -1.0;
    const double lo = std::min(std::abs(t0), std::abs(t1));
    const double hi = std::max(std::abs(t0), std::abs(t1));
    std::vector<double> cuts{lo};
    while (cuts.back() * 2.0 < hi) cuts.push_back(cuts.back() * 2.0);
    cuts.push_back(hi);
    const bool upward = t1 > t0;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
      const double a = sign * cuts[p], b = sign * cuts[p + 1];
      // orient each panel along the run direction
      if ((b > a) == upward) {
        segment({x, a}, {x, b});
      } else {
        segment({x, b}, {x, a});
      }
    }
  }
};

// Richardson weights eliminating delta^1, delta^3, ... for the given schedule.
std::vector<double> odd_richardson_weights(const std::vector<double>& d) {
  const auto L = static_cast<Eigen::Index>(d.size());
  Eigen::MatrixXd V(L, L);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(L);
  rhs(0) = 1.0;
  for (Eigen::Index j = 0; j < L; ++j) {
    V(0, j) = 1.0;
    for (Eigen::Index p = 1; p < L; ++p) {
      V(p, j) = std::pow(d[static_cast<std::size_t>(j)] / d[0], 2.0 * p - 1.0);
    }
  }
  const Eigen::VectorXd a = V.fullPivLu().solve(rhs);
  return {a.data(), a.data() + a.size()};
}

double distance_to_grid(const DiscretizedModel& m, double e, bool skip_exact) {
  double d = std::numeric_limits<double>::infinity();
  for (double x : m.x) {
    const double t = std::abs(x - e);
    if (skip_exact && t == 0.0) continue;
    d = std::min(d, t);
  }
  return d;
}

Eigen::VectorXd bounded_symbol(const DiscretizedModel& m, const Interval& iv,
                               const ContourSpec& spec) {
  const double scale = m.scale();
  double d = std::numeric_limits<double>::infinity();
  for (double e : {iv.lo, iv.hi}) {
    const double exact = distance_to_grid(m, e, false);
    if (exact > 0.0 && exact < 1e-9 * scale) {
      throw Error(ErrorCode::EndpointOnSpectrum, "interval endpoint too close to a grid point");
    }
    d = std::min(d, distance_to_grid(m, e, true));
  }
  if (!std::isfinite(d)) d = 1.0;

  Eigen::VectorXd previous;
  for (std::size_t s = 0; s < spec.epsilon_schedule.size(); ++s) {
    const double off = spec.epsilon_schedule[s] * d;
    const double a = iv.lo_closed ? iv.lo - off : iv.lo + off;
    const double b = iv.hi_closed ? iv.hi + off : iv.hi - off;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m.size()));
    if (b > a) {
      const double rho = std::min(distance_to_grid(m, a, false), distance_to_grid(m, b, false));
      const auto weights = odd_richardson_weights(spec.delta_schedule);
      Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m.size()));
      for (std::size_t j = 0; j < spec.delta_schedule.size(); ++j) {
        const double delta = std::min(0.5, spec.delta_schedule[j] * rho);
        acc += weights[j] * contour_symbol(m, a, b, delta, spec);
      }
      p = acc.real();
    }
    if (s > 0 && (p - previous).cwiseAbs().maxCoeff() > 1e-6) {
      throw Error(ErrorCode::EndpointOnSpectrum, "epsilon schedule does not separate the spectrum");
    }
    previous = p;
  }
  return previous;
}

Eigen::VectorXd symbol(const DiscretizedModel& m, const SpectralInterval& delta,
                       const ContourSpec& spec) {
  const auto n = static_cast<Eigen::Index>(m.size());
  if (delta.is_empty()) return Eigen::VectorXd::Zero(n);
  if (delta.is_real_line()) return Eigen::VectorXd::Ones(n);
  const Eigen::VectorXd p = bounded_symbol(m, delta.base(), spec);
  return delta.is_bounded() ? p : (Eigen::VectorXd::Ones(n) - p).eval();
}

}  // namespace

Eigen::VectorXcd contour_symbol(const DiscretizedModel& m, double a, double b, double delta,
                                const ContourSpec& spec) {
  if (!(b > a)) throw Error(ErrorCode::InvalidArgument, "contour needs a < b");
  if (!(delta > 0.0 && delta < spec.vertical_extent)) {
    throw Error(ErrorCode::InvalidArgument, "indentation must lie in (0, 1)");
  }
  const double h = spec.vertical_extent;
  Accumulator acc(m, spec.nodes_per_segment);
  // b+i -> a+i -> a-i -> b-i -> b+i with |Im| < delta removed on the sides
  acc.horizontal(b, a, h);
  acc.vertical(a, h, delta);
  acc.vertical(a, -delta, -h);
  acc.horizontal(a, b, -h);
  acc.vertical(b, -h, -delta);
  acc.vertical(b, delta, h);
  // -1/(2 pi i) z = (i / 2 pi) z
  Eigen::VectorXcd out(static_cast<Eigen::Index>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::complex<double> z{acc.re[i], acc.im[i]};
    out(static_cast<Eigen::Index>(i)) = std::complex<double>(0.0, 1.0 / kTwoPi) * z;
  }
  return out;
}

Eigen::MatrixXd contour_spectral_projection(const DiscretizedModel& m, const SpectralInterval& delta,
                                            const ContourSpec& spec) {
  spec.validate();
  // A is diagonal, so the resolvent integral applied to the all-ones vector
  // carries every column of E(Delta).
  return symbol(m, delta, spec).asDiagonal();
}

Eigen::MatrixXd indicator_matrix(const DiscretizedModel& m, const SpectralInterval& delta) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    d(static_cast<Eigen::Index>(i)) = delta.contains(m.x[i]) ? 1.0 : 0.0;
  }
  return d.asDiagonal();
}

SpectralInterval intersect(const SpectralInterval& a, const SpectralInterval& b) {
  if (a.is_complement() || b.is_complement()) {
    throw Error(ErrorCode::InvalidArgument, "intersection with a complement leaves the semiring");
  }
  if (a.is_empty() || b.is_empty()) return SpectralInterval::empty();
  if (a.is_real_line()) return b;
  if (b.is_real_line()) return a;
  const Interval& p = a.base();
  const Interval& q = b.base();
  Interval out;
  if (p.lo > q.lo) {
    out.lo = p.lo, out.lo_closed = p.lo_closed;
  } else if (q.lo > p.lo) {
    out.lo = q.lo, out.lo_closed = q.lo_closed;
  } else {
    out.lo = p.lo, out.lo_closed = p.lo_closed && q.lo_closed;
  }
  if (p.hi < q.hi) {
    out.hi = p.hi, out.hi_closed = p.hi_closed;
  } else if (q.hi < p.hi) {
    out.hi = q.hi, out.hi_closed = q.hi_closed;
  } else {
    out.hi = p.hi, out.hi_closed = p.hi_closed && q.hi_closed;
  }
  if (out.lo > out.hi || out.empty()) return SpectralInterval::empty();
  return SpectralInterval::bounded(out);
}

namespace {

double max_abs(const Eigen::MatrixXd& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

void sign_checks(PropertyReport& rep, const std::string& tag, const DiscretizedModel& m,
                 const SpectralInterval& d, const Eigen::MatrixXd& P, double tol) {
  if (!d.is_bounded()) return;
  const Interval& iv = d.base();
  const Eigen::MatrixXd GP = m.gram_ind_matrix() * P;
  const Eigen::MatrixXd S = 0.5 * (GP + GP.transpose());
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S).eigenvalues();
  if (iv.lo > 0.0 || (iv.lo == 0.0 && !iv.lo_closed)) {
    rep.add("sign_nonneg" + tag, std::max(0.0, -ev.minCoeff()), tol);
  } else if (iv.hi < 0.0 || (iv.hi == 0.0 && !iv.hi_closed)) {
    rep.add("sign_nonpos" + tag, std::max(0.0, ev.maxCoeff()), tol);
  }
}

void inclusion_check(PropertyReport& rep, const std::string& tag, const DiscretizedModel& m,
                     const SpectralInterval& d, const Eigen::MatrixXd& P, double tol) {
  const Eigen::MatrixXd Ps = 0.5 * (P + P.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Ps);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > 0.5) cols.push_back(i);
  }
  double worst = 0.0;
  if (!cols.empty()) {
    Eigen::MatrixXd Q(P.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      Q.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(cols[c]);
    }
    const Eigen::MatrixXd AQ = Q.transpose() * m.operator_matrix() * Q;
    const Eigen::VectorXd ev =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (AQ + AQ.transpose())).eigenvalues();
    for (double lam : ev) {
      double dist = 0.0;
      if (d.is_empty()) {
        dist = std::numeric_limits<double>::infinity();
      } else if (d.is_bounded()) {
        dist = std::max({0.0, d.base().lo - lam, lam - d.base().hi});
      } else if (d.is_complement()) {
        dist = std::max(0.0, std::min(lam - d.base().lo, d.base().hi - lam));
      }
      worst = std::max(worst, dist);
    }
  }
  rep.add("spectral_inclusion" + tag, worst, tol);
}

}  // namespace

PropertyReport verify_spectral_calculus(const DiscretizedModel& m, const SpectralInterval& d1,
                                        const SpectralInterval& d2, const ContourSpec& spec) {
  PropertyReport rep;
  const double scale = m.scale();
  const double tol = 1e-8 * scale;
  const Eigen::MatrixXd P1 = contour_spectral_projection(m, d1, spec);
  const Eigen::MatrixXd P2 = contour_spectral_projection(m, d2, spec);
  rep.add("matches_indicator[1]", max_abs(P1 - indicator_matrix(m, d1)), 1e-6);
  rep.add("matches_indicator[2]", max_abs(P2 - indicator_matrix(m, d2)), 1e-6);
  rep.add("idempotent[1]", max_abs(P1 * P1 - P1), 2e-6);

  if (!d1.is_complement() && !d2.is_complement()) {
    const Eigen::MatrixXd P12 = contour_spectral_projection(m, intersect(d1, d2), spec);
    rep.add("product_is_intersection", max_abs(P1 * P2 - P12), 2e-6);
  }

  const Eigen::MatrixXd G = m.gram_ind_matrix();
  const Eigen::MatrixXd A = m.operator_matrix();
  for (const auto& [tag, P, d] : {std::tuple{std::string("[1]"), &P1, &d1},
                                  std::tuple{std::string("[2]"), &P2, &d2}}) {
    rep.add("gram_ind_symmetric" + tag, max_abs(G * *P - P->transpose() * G), tol);
    rep.add("commutes_with_A" + tag, max_abs(A * *P - *P * A), tol);
    sign_checks(rep, tag, m, *d, *P, tol);
    inclusion_check(rep, tag, m, *d, *P, 1e-6);
  }
  return rep;
}

PropertyReport check_parseval_plus(const DiscretizedModel& m, const Eigen::VectorXcd& v,
                                   const ContourSpec& spec) {
  if (static_cast<std::size_t>(v.size()) != m.size()) {
    throw Error(ErrorCode::InvalidArgument, "vector length does not match the model");
  }
  PropertyReport rep;
  double lhs = 0.0, rhs = 0.0, mag = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double v2 = std::norm(v(static_cast<Eigen::Index>(i)));
    const double a = m.x[i] * v2 * m.r[i] * m.w[i];
    const double b = m.x[i] * m.x[i] * v2 * (m.r[i] / m.x[i]) * m.w[i];
    lhs += a;
    rhs += b;
    mag += std::abs(a);
  }
  rep.add("parseval_plus_algebraic", std::abs(lhs - rhs), 1e-13 * std::max(1.0, mag));

  // Partition [min x, max x] at midpoints between neighbours; each piece
  // carries its contour-built E and contributes [A E v, v].
  std::vector<double> cuts{m.x.front() - 0.5};
  const std::size_t stride = std::max<std::size_t>(1, m.size() / 8);
  for (std::size_t i = stride; i < m.size(); i += stride) {
    cuts.push_back(0.5 * (m.x[i - 1] + m.x[i]));
  }
  cuts.push_back(m.x.back() + 0.5);
  const Eigen::MatrixXd A = m.operator_matrix();
  std::complex<double> total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const auto piece = SpectralInterval::bounded({cuts[k], cuts[k + 1], false, true});
    const Eigen::MatrixXd P = contour_spectral_projection(m, piece, spec);
    const Eigen::VectorXcd APv = (A * P).cast<std::complex<double>>() * v;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      total += APv(i) * m.gram_ind(i) * std::conj(v(i));
    }
  }
  rep.add("parseval_plus_contour", std::abs(total - lhs), 1e-6 * std::max(1.0, mag));
  return rep;
}

PropertyReport check_representation(const DiscretizedModel& m, const Eigen::VectorXcd& u,
                                    const Eigen::VectorXcd& v) {
  if (static_cast<std::size_t>(u.size()) != m.size() ||
      static_cast<std::size_t>(v.size()) != m.size()) {
    throw Error(ErrorCode::InvalidArgument, "vector length does not match the model");
  }
  PropertyReport rep;
  std::complex<double> lhs = 0.0, rhs = 0.0;
  double mag = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const std::complex<double> a = u(ii) * std::conj(v(ii)) * m.r[i] * m.w[i];
    const std::complex<double> b = (m.x[i] * u(ii)) * std::conj(v(ii)) * (m.r[i] / m.x[i]) * m.w[i];
    lhs += a;
    rhs += b;
    mag += std::abs(a);
  }
  rep.add("representation", std::abs(lhs - rhs), 1e-13 * std::max(1.0, mag));
  return rep;
}

}  // namespace kcl
