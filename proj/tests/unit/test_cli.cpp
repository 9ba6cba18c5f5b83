#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kcl/cli/config.hpp"
#include "kcl/cli/csv.hpp"
#include "kcl/error.hpp"
#include "kcl/parallel.hpp"
#include "kcl/suites.hpp"

using namespace kcl;
using namespace kcl::cli;

TEST_CASE("k ranges and lists") {
  const auto ks = parse_k_range("2..256");
  REQUIRE(ks.size() == 8);
  CHECK(ks.front() == 2.0);
  CHECK(ks.back() == 256.0);
  CHECK(parse_k_range("3,5,9") == std::vector<double>{3.0, 5.0, 9.0});
  CHECK(parse_list("0, 0.5,1") == std::vector<double>{0.0, 0.5, 1.0});
  CHECK_THROWS_AS(parse_list("0,x"), Error);
}

TEST_CASE("config text") {
  RunConfig c;
  apply_config_text(c, "# comment\nweight.epsilon = 2\nquadrature.rel_tol = 1e-9\nalpha = 0.5,1\n", "t");
  CHECK(c.epsilon == 2.0);
  CHECK(c.quadrature.rel_tol == 1e-9);
  CHECK(c.alphas.size() == 2);
  try {
    apply_config_text(c, "no.such.key = 1\n", "t");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
  }
  CHECK_THROWS_AS(apply_config_text(c, "seed = -3\n", "t"), Error);
}

TEST_CASE("csv formatting") {
  CHECK(fmt(0.1) == "0.10000000000000001");
  CHECK(fmt(2.0) == "2");
  CsvTable t({"a", "b"});
  t.row({"1", "2"});
  CHECK(t.str() == "a,b\n1,2\n");
  CHECK_THROWS(t.row({"1"}));
}

TEST_CASE("atomic write") {
  const auto dir = std::filesystem::temp_directory_path() / "kcl_unit_csv";
  std::filesystem::remove_all(dir);
  const std::string path = join_path(dir.string(), "x.csv");
  write_atomic(path, "a\n1\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "a\n1\n");
  CHECK(!std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("parallel_for covers every index and rethrows") {
  std::vector<int> hit(1000, 0);
  parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(50, [](std::size_t i) {
                    if (i == 17) throw Error(ErrorCode::InvalidArgument, "boom");
                  }),
                  Error);
}

TEST_CASE("suite names and aliases") {
  CHECK(resolve_suite("involution") == "involution");
  for (const auto& s : suites()) {
    CHECK(resolve_suite(s.name) == s.name);
    for (const auto& a : s.aliases) CHECK(resolve_suite(a) == s.name);
  }
  CHECK(resolve_suite("all") == "all");
  CHECK(resolve_suite("nope").empty());
}
