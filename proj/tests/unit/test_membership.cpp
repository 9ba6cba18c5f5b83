#include <doctest.h>

#include "kcl/error.hpp"
#include "kcl/membership.hpp"

using namespace kcl;

TEST_CASE("witness table pattern") {
  const ModelWeight r;
  for (bool fast : {false, true}) {
    MembershipConfig cfg;
    cfg.use_tail_metadata = fast;
    const WitnessTable t = witness_table(0.5, 1.0, r, cfg);
    REQUIRE(t.rows.size() == 4);
    CHECK(t.pattern_holds());
    for (const auto& row : t.rows) CHECK(row.verdict == row.expected);
  }
}

TEST_CASE("alpha must be below beta") {
  const ModelWeight r;
  CHECK_THROWS_AS(witness_table(1.0, 1.0, r, {}), Error);
  try {
    witness_table(2.0, 1.0, r, {});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrderViolation);
  }
}

TEST_CASE("single memberships") {
  const ModelWeight r;
  MembershipConfig cfg;
  cfg.use_tail_metadata = false;
  CHECK(decide_dom_t_alpha(make_f_tau(1.0, r), r, 0.5, cfg).verdict == Verdict::Member);
  CHECK(decide_dom_t_alpha(make_f_tau(1.0, r), r, 1.0, cfg).verdict == Verdict::NotMember);
  CHECK(decide_dom_t_alpha(make_g_tau(0.0, r), r, 0.0, cfg).verdict == Verdict::NotMember);
  CHECK(decide_dom_t_alpha(make_g_tau(0.0, r), r, 2.0, cfg).verdict == Verdict::Member);
  const TestFunction chi = TestFunction::indicator({1.0, 9.0, false, true});
  CHECK(decide_dom_t_alpha(chi, r, 2.0, cfg).verdict == Verdict::Member);
}
