#include "kcl/sturm_liouville.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kcl/eigenspectral.hpp"
#include "kcl/error.hpp"

namespace kcl {

namespace {

constexpr double kE = std::numbers::e;
const double kInvE = 1.0 / kE;
// slope of the affine ramp of u_0 on [1/e, 1]
const double kRamp = -8.0 * kE / (9.0 * (kE - 1.0));

void require_domain(double x) {
  if (!(x >= -1.0 && x <= 1.0)) {
    throw Error(ErrorCode::DomainViolation, "x outside [-1, 1]");
  }
}

}  // namespace

double eval_p(double x) {
  require_domain(x);
  if (x <= -2.0 * kInvE) return -2.0 * kInvE * std::pow(1.0 - std::numbers::ln2, 3);
  if (x >= kInvE) return kInvE;
  if (x == 0.0) return 0.0;
  const double l = std::abs(std::log(std::abs(x)));
  return x * l * l * l;
}

double eval_u0(double x) {
  require_domain(x);
  if (x <= 0.0) return 0.0;
  if (x < kInvE) return 8.0 / 9.0 * std::pow(-std::log(x), -9.0 / 8.0);
  return 8.0 / 9.0 + kRamp * (x - kInvE);
}

double eval_u0_prime(double x) {
  require_domain(x);
  if (x <= 0.0) return 0.0;
  if (x < kInvE) return std::pow(-std::log(x), -17.0 / 8.0) / x;
  return kRamp;
}

namespace {

SLProblem with_mesh(std::vector<double> mesh, double grading,
                    const std::function<double(double)>& p) {
  SLProblem pr;
  pr.mesh = std::move(mesh);
  pr.grading = grading;
  for (std::size_t i = 0; i + 1 < pr.mesh.size(); ++i) {
    const double a = pr.mesh[i], b = pr.mesh[i + 1];
    const double pa = p(a), pb = p(b), pm = p(0.5 * (a + b));
    const bool flips = pa * pb < 0.0 || (pa != 0.0 && pa * pm < 0.0) || (pb != 0.0 && pb * pm < 0.0);
    if (flips) throw Error(ErrorCode::MeshTooCoarse, "cell spans a sign change of p away from 0");
    pr.p_mid.push_back(pm);
  }
  return pr;
}

}  // namespace

SLProblem SLProblem::graded(std::size_t cells, double grading,
                            const std::function<double(double)>& p) {
  if (cells < 4 || cells % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "cell count must be even and at least 4");
  }
  if (!(grading >= 1.0)) throw Error(ErrorCode::InvalidArgument, "grading exponent must be >= 1");
  std::vector<double> mesh(cells + 1);
  const auto half = static_cast<long>(cells / 2);
  for (long j = 0; j <= static_cast<long>(cells); ++j) {
    const double xi = static_cast<double>(j - half) / static_cast<double>(half);
    mesh[static_cast<std::size_t>(j)] = std::copysign(std::pow(std::abs(xi), grading), xi);
  }
  mesh.front() = -1.0;
  mesh[cells / 2] = 0.0;
  mesh.back() = 1.0;
  return with_mesh(std::move(mesh), grading, p);
}

SLProblem SLProblem::uniform(std::size_t cells, const std::function<double(double)>& p) {
  return graded(cells, 1.0, p);
}

Eigen::MatrixXd SLOperator::stiffness_dense() const {
  const Eigen::Index n = size();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    K(i, i) = diag(i);
    if (i + 1 < n) K(i, i + 1) = K(i + 1, i) = off(i);
  }
  return K;
}

Eigen::VectorXd SLOperator::apply_stiffness(const Eigen::VectorXd& u) const {
  const Eigen::Index n = size();
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double v = diag(i) * u(i);
    if (i > 0) v += off(i - 1) * u(i - 1);
    if (i + 1 < n) v += off(i) * u(i + 1);
    out(i) = v;
  }
  return out;
}

Eigen::Index SLOperator::count_below(double sigma) const {
  const Eigen::Index n = size();
  Eigen::Index negatives = 0;
  double d = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = diag(i) - sigma * mass(i);
    d = i == 0 ? a : a - off(i - 1) * off(i - 1) / d;
    if (d == 0.0) d = -std::numeric_limits<double>::min();
    if (d < 0.0) ++negatives;
  }
  return negatives;
}

SLOperator assemble_operator(const SLProblem& problem) {
  const std::size_t cells = problem.cells();
  if (cells < 2 || problem.p_mid.size() != cells) {
    throw Error(ErrorCode::InvalidArgument, "inconsistent Sturm-Liouville problem");
  }
  const auto n = static_cast<Eigen::Index>(cells - 1);
  SLOperator op{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(std::max<Eigen::Index>(0, n - 1)),
                Eigen::VectorXd::Zero(n)};
  for (std::size_t c = 0; c < cells; ++c) {
    const double h = problem.mesh[c + 1] - problem.mesh[c];
    if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "mesh must be strictly increasing");
    const double k = problem.p_mid[c] / h;
    // cell c joins nodes c and c + 1; interior node j is mesh node j + 1
    const auto left = static_cast<Eigen::Index>(c) - 1;
    const auto right = static_cast<Eigen::Index>(c);
    if (left >= 0) {
      op.diag(left) += k;
      op.mass(left) += 0.5 * h;
    }
    if (right < n) {
      op.diag(right) += k;
      op.mass(right) += 0.5 * h;
    }
    if (left >= 0 && right < n) op.off(left) = -k;
  }
  return op;
}

double kth_eigenvalue(const SLOperator& op, Eigen::Index k) {
  if (k < 1 || k > op.size()) throw Error(ErrorCode::InvalidArgument, "eigenvalue index out of range");
  // bracket [lo, hi] with count(lo) < k <= count(hi)
  double lo = -1.0, hi = 1.0;
  while (op.count_below(hi) < k) hi *= 2.0;
  while (op.count_below(lo) >= k) lo *= 2.0;
  if (op.count_below(0.0) >= k) {
    hi = std::min(hi, 0.0);
  } else {
    lo = std::max(lo, 0.0);
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (op.count_below(mid) >= k) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (hi - lo <= 4e-16 * std::max(std::abs(lo), std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

namespace {

// Gaussian elimination with partial pivoting on a tridiagonal system.
Eigen::VectorXd tridiagonal_solve(Eigen::VectorXd dl, Eigen::VectorXd d, Eigen::VectorXd du,
                                  Eigen::VectorXd b) {
  const Eigen::Index n = d.size();
  Eigen::VectorXd du2 = Eigen::VectorXd::Zero(std::max<Eigen::Index>(n, 1));
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (std::abs(d(i)) >= std::abs(dl(i))) {
      if (d(i) == 0.0) d(i) = tiny;
      const double f = dl(i) / d(i);
      d(i + 1) -= f * du(i);
      b(i + 1) -= f * b(i);
      dl(i) = 0.0;
    } else {
      const double f = d(i) / dl(i);
      d(i) = dl(i);
      const double t = d(i + 1);
      d(i + 1) = du(i) - f * t;
      if (i + 2 < n) {
        du2(i) = du(i + 1);
        du(i + 1) = -f * du(i + 1);
      }
      du(i) = t;
      std::swap(b(i), b(i + 1));
      b(i + 1) -= f * b(i);
    }
  }
  if (d(n - 1) == 0.0) d(n - 1) = tiny;
  Eigen::VectorXd x(n);
  x(n - 1) = b(n - 1) / d(n - 1);
  if (n > 1) x(n - 2) = (b(n - 2) - du(n - 2) * x(n - 1)) / d(n - 2);
  for (Eigen::Index i = n - 3; i >= 0; --i) {
    x(i) = (b(i) - du(i) * x(i + 1) - du2(i) * x(i + 2)) / d(i);
  }
  return x;
}

double m_dot(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& mass) {
  return (a.array() * mass.array() * b.array()).sum();
}

void fix_sign(Eigen::VectorXd& v) {
  Eigen::Index at = 0;
  v.cwiseAbs().maxCoeff(&at);
  if (v(at) < 0.0) v = -v;
}

}  // namespace

std::vector<EigenPair> compute_eigenpairs(const SLOperator& op, int count_per_sign) {
  if (count_per_sign < 1) throw Error(ErrorCode::InvalidArgument, "count_per_sign must be >= 1");
  const Eigen::Index n = op.size();
  const Eigen::Index negatives = op.count_below(0.0);
  if (negatives < count_per_sign || n - negatives < count_per_sign) {
    throw Error(ErrorCode::ConvergenceFailure, "not enough eigenvalues of each sign");
  }
  std::vector<EigenPair> pairs;
  for (int j = count_per_sign; j >= 1; --j) {
    pairs.push_back({-j, kth_eigenvalue(op, negatives - j + 1), {}, 0.0, 0.0});
  }
  for (int j = 1; j <= count_per_sign; ++j) {
    pairs.push_back({j, kth_eigenvalue(op, negatives + j), {}, 0.0, 0.0});
  }

  // infinity norms of the tridiagonal K and the lumped M
  double knorm = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = std::abs(op.diag(i));
    if (i > 0) row += std::abs(op.off(i - 1));
    if (i + 1 < n) row += std::abs(op.off(i));
    knorm = std::max(knorm, row);
  }
  const double mnorm = op.mass.lpNorm<Eigen::Infinity>();

  std::vector<Eigen::VectorXd> done;
  for (auto& pr : pairs) {
    const double sigma = pr.lambda;
    const Eigen::VectorXd dl = op.off;
    const Eigen::VectorXd du = op.off;
    const Eigen::VectorXd dd = op.diag - sigma * op.mass;
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i));
    // Normwise backward error; stop when small or once it stalls at the rounding floor
    // (the shift is already exact to rounding, so further steps cannot improve it).
    auto rel_residual = [&](const Eigen::VectorXd& u) {
      const Eigen::VectorXd res = op.apply_stiffness(u) - pr.lambda * op.mass.cwiseProduct(u);
      return res.lpNorm<Eigen::Infinity>() / ((knorm + std::abs(pr.lambda) * mnorm) *
                                              u.lpNorm<Eigen::Infinity>());
    };
    double resid = std::numeric_limits<double>::infinity();
    bool settled = false;
    for (int it = 0; it < 12 && !settled; ++it) {
      Eigen::VectorXd y = tridiagonal_solve(dl, dd, du, op.mass.cwiseProduct(v));
      for (const auto& q : done) y -= m_dot(q, y, op.mass) / m_dot(q, q, op.mass) * q;
      const double nrm = std::sqrt(m_dot(y, y, op.mass));
      if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
      y /= nrm;
      fix_sign(y);
      v = std::move(y);
      const double prev = resid;
      resid = rel_residual(v);
      settled = resid < 1e-13 || (resid < 1e-10 && resid > 0.9 * prev);
    }
    if (!settled) {
      throw Error(ErrorCode::ConvergenceFailure, "inverse iteration did not settle");
    }
    const double mm = m_dot(v, v, op.mass);
    pr.u = v / std::sqrt(std::abs(pr.lambda) * mm);
    pr.residual = std::abs(1.0 - std::abs(pr.lambda) * m_dot(pr.u, pr.u, op.mass));
    pr.backward_error = resid;
    done.push_back(v);
  }
  return pairs;
}

std::vector<double> expansion_coefficients(const Eigen::VectorXd& u_nodal,
                                           const std::vector<EigenPair>& pairs,
                                           const SLOperator& op) {
  if (u_nodal.size() != op.size()) throw Error(ErrorCode::InvalidArgument, "nodal size mismatch");
  const Eigen::VectorXd Ku = op.apply_stiffness(u_nodal);
  std::vector<double> c;
  c.reserve(pairs.size());
  for (const auto& pr : pairs) c.push_back(Ku.dot(pr.u));
  return c;
}

Eigen::VectorXd u0_nodal(const SLProblem& problem) {
  const auto n = static_cast<Eigen::Index>(problem.interior());
  Eigen::VectorXd u(n);
  for (Eigen::Index i = 0; i < n; ++i) u(i) = eval_u0(problem.mesh[static_cast<std::size_t>(i) + 1]);
  return u;
}

std::vector<double> expansion_coefficients_u0(const std::vector<EigenPair>& pairs,
                                              const SLProblem& problem) {
  const std::size_t cells = problem.cells();
  // flux integrals of p u_0' per cell; p u_0' = |log x|^{7/8} on (0, 1/e)
  std::vector<double> flux(cells, 0.0);
  for (std::size_t c = 0; c < cells; ++c) {
    const double a = problem.mesh[c], b = problem.mesh[c + 1];
    if (b <= 0.0) continue;
    std::vector<double> hints{kInvE};
    if (a == 0.0) {
      for (int j = 1; j <= 48; ++j) hints.push_back(std::ldexp(b, -j));
    }
    flux[c] = integrate_interval(
        [](double x) {
          if (x < kInvE) return std::pow(-std::log(x), 7.0 / 8.0);
          return eval_p(x) * eval_u0_prime(x);
        },
        std::max(a, 0.0), b, hints, 16);
  }
  std::vector<double> coeffs;
  coeffs.reserve(pairs.size());
  for (const auto& pr : pairs) {
    double s = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
      const double ul = c == 0 ? 0.0 : pr.u(static_cast<Eigen::Index>(c) - 1);
      const double ur = c + 1 == cells ? 0.0 : pr.u(static_cast<Eigen::Index>(c));
      s += (ur - ul) / (problem.mesh[c + 1] - problem.mesh[c]) * flux[c];
    }
    coeffs.push_back(s);
  }
  return coeffs;
}

namespace {

double positive_norm(const Eigen::VectorXd& s, const SLProblem& problem) {
  const std::size_t cells = problem.cells();
  double acc = 0.0;
  for (std::size_t c = 0; c < cells; ++c) {
    const double ul = c == 0 ? 0.0 : s(static_cast<Eigen::Index>(c) - 1);
    const double ur = c + 1 == cells ? 0.0 : s(static_cast<Eigen::Index>(c));
    const double h = problem.mesh[c + 1] - problem.mesh[c];
    acc += std::abs(problem.p_mid[c]) * (ur - ul) * (ur - ul) / h;
  }
  return std::sqrt(acc);
}

}  // namespace

ExpansionReport partial_sum_study(const std::vector<double>& coefficients,
                                  const std::vector<EigenPair>& pairs,
                                  const std::vector<double>& m_schedule, const SLProblem& problem,
                                  const SLOperator& op) {
  if (coefficients.size() != pairs.size() || pairs.empty()) {
    throw Error(ErrorCode::InvalidArgument, "coefficients and pairs disagree");
  }
  double top_pos = 0.0, top_neg = 0.0;
  for (const auto& pr : pairs) {
    if (pr.lambda > 0) top_pos = std::max(top_pos, pr.lambda);
    if (pr.lambda < 0) top_neg = std::max(top_neg, -pr.lambda);
  }
  const double cover = std::min(top_pos, top_neg);
  for (double m : m_schedule) {
    if (!(m > 0.0)) throw Error(ErrorCode::InvalidArgument, "m schedule must be positive");
    if (m >= cover) {
      throw Error(ErrorCode::ScheduleExceedsSpectrum, "m schedule outruns computed eigenvalues");
    }
  }

  ExpansionReport rep;
  rep.coefficients = coefficients;
  const Eigen::Index n = op.size();
  for (double m : m_schedule) {
    Eigen::VectorXd plus = Eigen::VectorXd::Zero(n), minus = Eigen::VectorXd::Zero(n);
    double energy = 0.0;
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (std::abs(pairs[j].lambda) > m) continue;
      energy += coefficients[j] * coefficients[j];
      if (pairs[j].lambda > 0) {
        plus += coefficients[j] * pairs[j].u;
      } else {
        minus -= coefficients[j] * pairs[j].u;
      }
    }
    const Eigen::VectorXd S = plus + minus;
    rep.rows.push_back({m, positive_norm(S, problem), positive_norm(plus, problem),
                        positive_norm(minus, problem), S.dot(op.apply_stiffness(S)),
                        std::sqrt(m_dot(S, S, op.mass)), energy});
  }

  rep.max_one_sided_growth = 0.0;
  for (int side = 0; side < 2; ++side) {
    double first = 0.0, best = 0.0;
    for (const auto& row : rep.rows) {
      const double v = side == 0 ? row.norm_S_plus : row.norm_S_minus;
      if (first == 0.0) first = v;
      best = std::max(best, v);
    }
    if (first > 0.0) rep.max_one_sided_growth = std::max(rep.max_one_sided_growth, best / first);
  }
  std::vector<double> ms, es;
  for (const auto& row : rep.rows) {
    if (row.coeff_energy > 0.0) {
      ms.push_back(row.m);
      es.push_back(row.coeff_energy);
    }
  }
  rep.energy_growth_rate = ms.size() >= 2 ? loglog_slope(ms, es) : 0.0;
  return rep;
}

IntegrationResult u0_form_integral(const QuadratureConfig& cfg) {
  // x |p(x)| u_0'(x)^2 at x = e^{-t} equals t^{-5/4}
  IntegrationResult head = integrate_half_line([](double t) { return std::pow(t, -1.25); }, 1.0, cfg);
  const double ramp = integrate_interval(
      [](double x) { return std::abs(eval_p(x)) * eval_u0_prime(x) * eval_u0_prime(x); }, kInvE,
      1.0, {}, cfg.nodes_per_panel);
  head.value += ramp;
  return head;
}

SLSummary check_eigen_structure(const SLProblem& problem, int count_per_sign) {
  SLSummary out;
  out.cells = problem.cells();
  const SLOperator op = assemble_operator(problem);
  const Eigen::MatrixXd K = op.stiffness_dense();
  out.report.add("operator_symmetric", (K - K.transpose()).cwiseAbs().maxCoeff(), 0.0);
  out.pairs = compute_eigenpairs(op, count_per_sign);

  double order_violation = 0.0;
  for (std::size_t j = 1; j < out.pairs.size(); ++j) {
    order_violation = std::max(order_violation, out.pairs[j - 1].lambda - out.pairs[j].lambda);
    if (out.pairs[j - 1].lambda == out.pairs[j].lambda) order_violation = 1.0;
  }
  out.report.add("eigenvalues_simple_and_ordered", order_violation, 0.0);

  const auto neg1 = std::find_if(out.pairs.begin(), out.pairs.end(), [](auto& p) { return p.n == -1; });
  const auto pos1 = std::find_if(out.pairs.begin(), out.pairs.end(), [](auto& p) { return p.n == 1; });
  const bool straddle = neg1->lambda < 0.0 && pos1->lambda > 0.0;
  out.report.add("lambda_minus1_lt_0_lt_lambda_1", straddle ? 0.0 : 1.0, 0.0);

  out.lambda_gap = 0.5 * std::min(-neg1->lambda, pos1->lambda);
  const auto inside = op.count_below(out.lambda_gap) - op.count_below(-out.lambda_gap);
  out.report.add("no_eigenvalue_in_gap", static_cast<double>(inside), 0.0);

  double worst_norm = 0.0;
  for (const auto& p : out.pairs) worst_norm = std::max(worst_norm, p.residual);
  out.report.add("normalization_residual", worst_norm, 1e-10);

  double worst_orth = 0.0;
  std::vector<Eigen::VectorXd> Ku;
  for (const auto& p : out.pairs) Ku.push_back(op.apply_stiffness(p.u));
  for (std::size_t a = 0; a < out.pairs.size(); ++a) {
    for (std::size_t b = a + 1; b < out.pairs.size(); ++b) {
      worst_orth = std::max(worst_orth, std::abs(Ku[a].dot(out.pairs[b].u)));
    }
  }
  out.report.add("discrete_orthogonality", worst_orth, 1e-6);
  return out;
}

}  // namespace kcl
