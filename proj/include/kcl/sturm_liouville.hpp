#pragma once

// -(p u')' on [-1, 1] with Dirichlet conditions and the indefinite
// coefficient
//   p(x) = -(2/e)(1 - log 2)^3   on [-1, -2/e]
//          x |log|x||^3          on (-2/e, 1/e), p(0) = 0
//          1/e                   on [1/e, 1]
// discretized by conservative finite differences on a mesh graded toward 0.

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "kcl/quadrature.hpp"
#include "kcl/report.hpp"

namespace kcl {

double eval_p(double x);
double eval_u0(double x);
double eval_u0_prime(double x);

struct SLProblem {
  std::vector<double> mesh;   // -1 = y_0 < ... < y_M = 1
  std::vector<double> p_mid;  // p at cell midpoints
  double grading = 3.0;

  std::size_t cells() const noexcept { return mesh.size() - 1; }
  std::size_t interior() const noexcept { return mesh.size() - 2; }

  // y_j = sgn(xi) |xi|^grading on a uniform xi grid; cells must be even so 0 is a node.
  static SLProblem graded(std::size_t cells, double grading = 3.0,
                          const std::function<double(double)>& p = eval_p);
  static SLProblem uniform(std::size_t cells, const std::function<double(double)>& p);
};

// Tridiagonal stiffness K and lumped (diagonal) mass M on interior nodes.
// The generalized problem K u = lambda M u is the discrete operator.
struct SLOperator {
  Eigen::VectorXd diag;   // K_ii
  Eigen::VectorXd off;    // K_{i,i+1}
  Eigen::VectorXd mass;   // M_ii

  Eigen::Index size() const noexcept { return diag.size(); }
  Eigen::MatrixXd stiffness_dense() const;
  Eigen::VectorXd apply_stiffness(const Eigen::VectorXd& u) const;
  // Number of generalized eigenvalues below sigma (Sylvester inertia).
  Eigen::Index count_below(double sigma) const;
};

SLOperator assemble_operator(const SLProblem& problem);

// k-th smallest generalized eigenvalue (1-based) by inertia bisection.
double kth_eigenvalue(const SLOperator& op, Eigen::Index k);

struct EigenPair {
  int n;                 // +-1, +-2, ... by sign and magnitude
  double lambda;
  Eigen::VectorXd u;     // interior nodal values
  double residual;       // |1 - |lambda| (u, u)_M|
  double backward_error; // ||K u - lambda M u|| / ((||K|| + |lambda| ||M||) ||u||), inf-norms
};

// count_per_sign pairs on each side of 0, ordered lambda_{-count}..lambda_{-1}, lambda_1..
std::vector<EigenPair> compute_eigenpairs(const SLOperator& op, int count_per_sign);

// t[u, u_n] = u^T K u_n for a nodal u (interior values).
std::vector<double> expansion_coefficients(const Eigen::VectorXd& u_nodal,
                                           const std::vector<EigenPair>& pairs,
                                           const SLOperator& op);

// t[u_0, u_n] with u_0' taken analytically cell by cell.
std::vector<double> expansion_coefficients_u0(const std::vector<EigenPair>& pairs,
                                              const SLProblem& problem);

// u_0 at the interior nodes.
Eigen::VectorXd u0_nodal(const SLProblem& problem);

struct TrajectoryRow {
  double m;
  double norm_S;        // positive-form norm sqrt(sum |p| (dS)^2 / h)
  double norm_S_plus;
  double norm_S_minus;
  double t_S;           // indefinite form t[S, S]
  double l2_S;          // sqrt((S, S)_M)
  double coeff_energy;  // sum_{|lambda_n| <= m} c_n^2
};

struct ExpansionReport {
  std::vector<double> coefficients;
  std::vector<TrajectoryRow> rows;
  double max_one_sided_growth;  // max over sides of max(norm)/first nonzero norm
  double energy_growth_rate;    // log-log slope of coeff_energy against m
};

ExpansionReport partial_sum_study(const std::vector<double>& coefficients,
                                  const std::vector<EigenPair>& pairs,
                                  const std::vector<double>& m_schedule, const SLProblem& problem,
                                  const SLOperator& op);

// int_{-1}^{1} |p| |u_0'|^2 over [0, 1], in t = -log x on (0, 1/e).
IntegrationResult u0_form_integral(const QuadratureConfig& cfg);

struct SLSummary {
  std::size_t cells;
  std::vector<EigenPair> pairs;
  double lambda_gap;
  PropertyReport report;
};

// Symmetry, interlacing, gap, normalization and orthogonality checks.
SLSummary check_eigen_structure(const SLProblem& problem, int count_per_sign);

}  // namespace kcl
