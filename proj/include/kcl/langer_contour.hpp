#pragma once

// Finite-dimensional Krein spaces: a grid x_1 < ... < x_N outside the gap,
// the diagonal operator A = diag(x_i), the indefinite Gram diag(r_i w_i) and
// the panel Gram of t_alpha. Spectral projections are computed from the
// resolvent by integrating over an indented rectangle around Delta.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "kcl/eigenspectral.hpp"
#include "kcl/model_space.hpp"
#include "kcl/report.hpp"

namespace kcl {

struct ModelGrid {
  std::vector<double> points;  // strictly increasing

  // Mirror of the given positive points.
  static ModelGrid symmetric(const std::vector<double>& positive);
  // n / 2 uniform points on each side of the gap within eps + extent.
  static ModelGrid random(std::uint64_t seed, std::size_t n, double eps, double extent = 8.0);
};

struct DiscretizedModel {
  double alpha;
  double epsilon;
  std::vector<double> x;
  std::vector<double> w;        // cell lengths
  std::vector<double> r;        // r(x_i)
  std::vector<double> cell_lo;  // cell i = (cell_lo, cell_hi)
  std::vector<double> cell_hi;
  Eigen::MatrixXd gram_pos;     // t_alpha on cell indicators
  Eigen::VectorXd gram_ind;     // r_i w_i

  std::size_t size() const noexcept { return x.size(); }
  Eigen::MatrixXd gram_ind_matrix() const { return gram_ind.asDiagonal(); }
  Eigen::MatrixXd operator_matrix() const;
  double scale() const noexcept;  // max(1, max |x_i|)
};

DiscretizedModel build_discretized_model(double alpha, const ModelWeight& r, const ModelGrid& grid);

Eigen::VectorXcd resolvent_apply(const DiscretizedModel& m, std::complex<double> lambda,
                                 const Eigen::VectorXcd& v);

struct ContourSpec {
  // Indentation half-gaps, as fractions of the distance from the contour's
  // real crossings to the nearest grid point; strictly decreasing in (0, 1).
  std::vector<double> delta_schedule{1e-3, 5e-4, 2.5e-4};
  // Endpoint offsets as fractions of the endpoint-to-grid distance.
  std::vector<double> epsilon_schedule{0.25, 0.125};
  int nodes_per_segment = 16;
  double vertical_extent = 1.0;

  void validate() const;
};

// -1/(2 pi i) times the contour integral of the resolvent around Delta.
Eigen::MatrixXd contour_spectral_projection(const DiscretizedModel& m, const SpectralInterval& delta,
                                            const ContourSpec& spec = {});

// Contour integral with one fixed indentation and endpoint offset; the
// diagonal symbol is returned (complex, imaginary part is quadrature noise).
Eigen::VectorXcd contour_symbol(const DiscretizedModel& m, double a, double b, double delta,
                                const ContourSpec& spec);

Eigen::MatrixXd indicator_matrix(const DiscretizedModel& m, const SpectralInterval& delta);

// Intersection inside the semiring; complements are rejected.
SpectralInterval intersect(const SpectralInterval& a, const SpectralInterval& b);

PropertyReport verify_spectral_calculus(const DiscretizedModel& m, const SpectralInterval& d1,
                                        const SpectralInterval& d2, const ContourSpec& spec = {});

PropertyReport check_parseval_plus(const DiscretizedModel& m, const Eigen::VectorXcd& v,
                                   const ContourSpec& spec = {});

PropertyReport check_representation(const DiscretizedModel& m, const Eigen::VectorXcd& u,
                                    const Eigen::VectorXcd& v);

}  // namespace kcl
