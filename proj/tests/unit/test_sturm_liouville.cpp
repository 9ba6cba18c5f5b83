#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kcl/error.hpp"
#include "kcl/sturm_liouville.hpp"

using namespace kcl;

TEST_CASE("coefficient and reference solution") {
  CHECK(eval_p(-1.0) == doctest::Approx(-0.0212581696153395580).epsilon(1e-14));
  CHECK(eval_p(0.2) == doctest::Approx(0.833782312857130546).epsilon(1e-14));
  CHECK(eval_p(0.5) == doctest::Approx(1.0 / std::numbers::e).epsilon(1e-15));
  CHECK(eval_p(0.0) == 0.0);
  CHECK(eval_p(-0.1) < 0.0);
  CHECK_THROWS_AS(eval_p(1.5), Error);
  CHECK(eval_u0(-0.5) == 0.0);
  CHECK(eval_u0(1.0) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("form integral of u_0") {
  const IntegrationResult v = u0_form_integral(QuadratureConfig{});
  REQUIRE(v.status == Status::Converged);
  const double exact = 4.0 + 64.0 / (81.0 * (std::numbers::e - 1.0));
  CHECK(v.value.real() == doctest::Approx(exact).epsilon(1e-8));
  CHECK(exact == doctest::Approx(4.45983344740292458).epsilon(1e-15));
}

TEST_CASE("eigen structure on a small mesh") {
  const SLProblem prob = SLProblem::graded(512, 3.0);
  const SLSummary s = check_eigen_structure(prob, 8);
  CHECK(s.report.passed());
  CHECK(s.pairs.size() == 16);
  CHECK(s.lambda_gap > 0.0);
  const SLOperator op = assemble_operator(prob);
  // the inertia count agrees with the computed pairs
  CHECK(op.count_below(s.pairs.front().lambda - 1e-9) + 8 == op.count_below(0.0));
}

TEST_CASE("mesh and schedule errors") {
  CHECK_THROWS_AS(SLProblem::graded(7, 3.0), Error);
  CHECK_THROWS_AS(SLProblem::graded(64, 0.5), Error);
  const SLProblem prob = SLProblem::graded(256, 3.0);
  const SLOperator op = assemble_operator(prob);
  const auto pairs = compute_eigenpairs(op, 4);
  const auto coeffs = expansion_coefficients_u0(pairs, prob);
  try {
    partial_sum_study(coeffs, pairs, {1e9}, prob, op);
    FAIL("expected ScheduleExceedsSpectrum");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ScheduleExceedsSpectrum);
  }
}
