#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "raptorwe/degree_distribution.hpp"
#include "raptorwe/error.hpp"

using namespace raptorwe;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_SUITE("degree_distribution") {

TEST_CASE("parse accepts comments and blank lines") {
  auto d = parse_distribution("# header\n\n1,0.3\n2, 0.5\n  3,0.2\n");
  REQUIRE(d.size() == 3);
  CHECK(d.max_degree() == 3);
  CHECK(d.mean_degree() == doctest::Approx(0.3 + 1.0 + 0.6));
  CHECK(d.cumulative().back() == 1.0);
}

TEST_CASE("parse renormalizes within tolerance and sorts") {
  auto d = parse_distribution("3,0.2004\n1,0.3\n2,0.5\n");
  CHECK(d.entries()[0].degree == 1);
  double total = 0.0;
  for (auto e : d.entries()) total += e.probability;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("parse rejects malformed input") {
  CHECK(code_of([] { parse_distribution("1,0.5\n1,0.5\n"); }) == ErrorCode::parse);
  CHECK(code_of([] { parse_distribution("1;0.5\n2,0.5\n"); }) == ErrorCode::parse);
  CHECK(code_of([] { parse_distribution("x,1\n"); }) == ErrorCode::parse);
  CHECK_THROWS_AS(parse_distribution("1,0.5\n2,0.4\n"), Error);
  CHECK_THROWS_AS(parse_distribution("0,1.0\n"), Error);
  CHECK_THROWS_AS(parse_distribution("1,-0.1\n2,1.1\n"), Error);
  CHECK_THROWS_AS(parse_distribution(""), Error);
}

TEST_CASE("builtin distributions match the bundled tables") {
  // Mean degrees recomputed from the listed table values.
  const double mean1 = 1 * 0.0098 + 2 * 0.4590 + 3 * 0.2110 + 4 * 0.1134 + 10 * 0.1113 + 11 * 0.0799 + 40 * 0.0156;
  const double mean2 = 1 * 0.0048 + 2 * 0.4965 + 3 * 0.1669 + 4 * 0.0734 + 5 * 0.0822 + 8 * 0.0575 +
                       9 * 0.0360 + 18 * 0.0012 + 19 * 0.0543 + 65 * 0.0182 + 66 * 0.0091;
  auto o1 = builtin_distribution("omega1");
  auto o2 = builtin_distribution("omega2");
  CHECK(o1.size() == 7);
  CHECK(o2.size() == 11);
  CHECK(o1.max_degree() == 40);
  CHECK(o2.max_degree() == 66);
  CHECK(o1.mean_degree() == doctest::Approx(mean1).epsilon(1e-12));
  // The second table sums to 1.0001 and is renormalized.
  const double total2 = 0.0048 + 0.4965 + 0.1669 + 0.0734 + 0.0822 + 0.0575 + 0.0360 + 0.0012 + 0.0543 + 0.0182 + 0.0091;
  CHECK(o2.mean_degree() == doctest::Approx(mean2 / total2).epsilon(1e-12));
  CHECK(o1.mean_degree() == doctest::Approx(4.6303).epsilon(1e-4));
  CHECK_THROWS_AS(builtin_distribution("omega3"), Error);
}

TEST_CASE("file loading and resolution") {
  const auto path = std::filesystem::temp_directory_path() / "raptorwe_unit_dist.csv";
  {
    std::ofstream f(path);
    f << "# two degrees\n1,0.25\n4,0.75\n";
  }
  auto d = resolve_distribution(path.string());
  CHECK(d.mean_degree() == doctest::Approx(3.25));
  CHECK(resolve_distribution("omega1").max_degree() == 40);
  std::filesystem::remove(path);
  CHECK(code_of([&] { load_distribution_file(path.string()); }) == ErrorCode::io);
}

TEST_CASE("mixing is linear in the mean") {
  auto a = parse_distribution("1,0.5\n2,0.5\n");
  auto b = parse_distribution("2,0.25\n5,0.75\n");
  for (double lambda : {0.0, 0.3, 1.0}) {
    auto m = DegreeDistribution::mix(a, b, lambda);
    CHECK(m.mean_degree() == doctest::Approx(lambda * a.mean_degree() + (1 - lambda) * b.mean_degree()));
  }
  CHECK_THROWS_AS(DegreeDistribution::mix(a, b, 1.5), Error);
}

TEST_CASE("degenerate and symmetric distributions") {
  auto one = parse_distribution("1,1.0");
  CHECK(one.size() == 1);
  CHECK(one.mean_degree() == 1.0);
  CHECK(parse_distribution("1,0.5\n3,0.5\n").mean_degree() == doctest::Approx(2.0));
  CHECK(code_of([] { parse_distribution("2,0.5\n2,0.5"); }) == ErrorCode::parse);
}


}
