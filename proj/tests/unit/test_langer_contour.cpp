#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "kcl/error.hpp"
#include "kcl/langer_contour.hpp"

using namespace kcl;

namespace {

DiscretizedModel eight_point() {
  return build_discretized_model(1.0, ModelWeight{}, ModelGrid::symmetric({1.5, 2.5, 3.5, 4.5}));
}

}  // namespace

TEST_CASE("eight-point model") {
  const DiscretizedModel m = eight_point();
  REQUIRE(m.size() == 8);
  CHECK(m.x.front() == -4.5);
  CHECK(m.x.back() == 4.5);
  // positive Gram is diagonal and positive definite
  const Eigen::LLT<Eigen::MatrixXd> llt(m.gram_pos);
  CHECK(llt.info() == Eigen::Success);
}

TEST_CASE("contour projection selects the enclosed points") {
  const DiscretizedModel m = eight_point();
  const auto d = SpectralInterval::bounded({2.0, 4.0, false, false});
  const Eigen::MatrixXd P = contour_spectral_projection(m, d);
  const Eigen::MatrixXd chi = indicator_matrix(m, d);
  CHECK((P - chi).cwiseAbs().maxCoeff() < 1e-6);
  for (Eigen::Index i = 0; i < 8; ++i) {
    const bool in = m.x[static_cast<std::size_t>(i)] == 2.5 || m.x[static_cast<std::size_t>(i)] == 3.5;
    CHECK(chi(i, i) == (in ? 1.0 : 0.0));
  }
  CHECK((P * P - P).cwiseAbs().maxCoeff() < 2e-6);
}

TEST_CASE("spectral calculus on a random model") {
  const DiscretizedModel m = build_discretized_model(1.0, ModelWeight{}, ModelGrid::random(3, 32, 1.0));
  const auto a = SpectralInterval::bounded({-3.05, 2.05, true, false});
  const auto b = SpectralInterval::bounded({1.55, 6.05, false, true});
  CHECK(verify_spectral_calculus(m, a, b).passed());
}

TEST_CASE("error paths") {
  const DiscretizedModel m = eight_point();
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(8);
  CHECK_THROWS_AS(resolvent_apply(m, {2.5, 0.0}, v), Error);
  CHECK_THROWS_AS(resolvent_apply(m, {2.5, 0.0}, Eigen::VectorXcd::Ones(3)), Error);
  try {
    contour_spectral_projection(m, SpectralInterval::bounded({2.5 + 1e-12, 4.0, false, false}));
    FAIL("expected EndpointOnSpectrum");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EndpointOnSpectrum);
  }
  try {
    build_discretized_model(1.0, ModelWeight{}, ModelGrid::symmetric({0.5, 2.0}));
    FAIL("expected GapViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GapViolation);
  }
  CHECK_THROWS_AS(intersect(SpectralInterval::complement({0.0, 1.0, true, true}),
                            SpectralInterval::bounded({0.0, 1.0, true, true})),
                  Error);
}

TEST_CASE("triplet identities") {
  const DiscretizedModel m = build_discretized_model(0.5, ModelWeight{}, ModelGrid::random(11, 8, 1.0));
  Eigen::VectorXcd u(8), v(8);
  for (int i = 0; i < 8; ++i) {
    u(i) = {std::sin(1.0 + i), std::cos(2.0 * i)};
    v(i) = {std::cos(0.3 * i), -std::sin(i)};
  }
  CHECK(check_parseval_plus(m, u).passed());
  CHECK(check_representation(m, u, v).passed());
}
