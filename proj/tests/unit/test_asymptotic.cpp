#include <cmath>
#include <vector>

#include "doctest.h"
#include "raptorwe/asymptotic.hpp"
#include "raptorwe/degree_distribution.hpp"
#include "raptorwe/error.hpp"
#include "raptorwe/exact_spectrum.hpp"
#include "raptorwe/numeric.hpp"

using namespace raptorwe;

namespace {

// Direct evaluation of f(w, l) on a dense grid; powers of (1 - 2l) are built
// by repeated multiplication up to the largest degree.
double brute_f_max(const DegreeDistribution& dist, double ri, double w, int linear) {
  const auto entries = dist.entries();
  const std::uint32_t dmax = dist.max_degree();
  auto f = [&](double l) {
    const double x = 1.0 - 2.0 * l;
    double power = 1.0;
    double p = 0.0;
    std::size_t next = 0;
    for (std::uint32_t d = 1; d <= dmax; ++d) {
      power *= x;
      if (entries[next].degree == d) p += entries[next++].probability * 0.5 * (1.0 - power);
    }
    const double h = l >= 1.0 ? 0.0 : -l * std::log2(l) - (1 - l) * std::log2(1 - l);
    return ri * h + (w == 0 ? 0.0 : w * std::log2(p)) + (w == 1 ? 0.0 : (1 - w) * std::log2(1 - p));
  };
  double best = -INFINITY;
  for (int i = 1; i <= linear; ++i) best = std::max(best, f(static_cast<double>(i) / linear));
  for (int i = 0; i <= 20000; ++i) best = std::max(best, f(1e-12 * std::pow(1e9, i / 20000.0)));
  return best;
}

}  // namespace

TEST_SUITE("asymptotic") {

TEST_CASE("asymptotic parity probability") {
  for (std::uint32_t j : {1U, 2U, 3U, 7U, 40U}) {
    for (double l : {0.0, 1e-9, 0.1, 0.5, 0.77, 1.0}) {
      const double expected = 0.5 * (1.0 - std::pow(1.0 - 2.0 * l, j));
      CHECK(parity_prob_asym(j, l) == doctest::Approx(expected).epsilon(1e-14));
    }
  }
  // No cancellation near the origin: ~ j l.
  CHECK(parity_prob_asym(3, 1e-15) == doctest::Approx(3e-15).epsilon(1e-9));
  CHECK_THROWS_AS(parity_prob_asym(0, 0.5), Error);
  CHECK_THROWS_AS(parity_prob_asym(2, 1.5), Error);
}

TEST_CASE("finite parity probability converges to the asymptotic form") {
  const std::uint32_t h = 1'000'000;
  for (std::uint32_t j : {1U, 2U, 5U, 11U}) {
    for (std::uint32_t l : {1000U, 250000U, 700000U}) {
      CHECK(parity_prob(j, l, h) ==
            doctest::Approx(parity_prob_asym(j, static_cast<double>(l) / h)).epsilon(1e-5));
    }
  }
}

TEST_CASE("p_asym averages over the distribution") {
  auto d = parse_distribution("1,0.3\n2,0.5\n3,0.2\n");
  const double l = 0.2;
  CHECK(p_asym(l, d) == doctest::Approx(0.3 * 0.2 + 0.5 * 0.32 + 0.2 * 0.392).epsilon(1e-14));
  CHECK(p_asym(0.0, d) == 0.0);
  CHECK(p_asym(0.5, d) == doctest::Approx(0.5));
}

TEST_CASE("f_max never loses to a dense brute-force grid") {
  for (const char* name : {"omega1", "omega2"}) {
    const auto dist = builtin_distribution(name);
    GrowthModel model(dist);
    for (double ri : {0.5, 0.9}) {
      for (double w : {1e-4, 0.003, 0.05, 0.3, 0.5, 0.8}) {
        CAPTURE(name);
        CAPTURE(ri);
        CAPTURE(w);
        const double brute = brute_f_max(dist, ri, w, 1'000'000);
        const auto got = model.f_max(w, ri);
        CHECK(got.value >= brute - 1e-12);
        CHECK(got.value <= brute + 1e-7);
        CHECK(model.objective(w, got.argmax, ri) == doctest::Approx(got.value).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("f_max matches a 1e7-point scan at w = 0.25") {
  const auto dist = builtin_distribution("omega1");
  GrowthModel model(dist);
  const double brute = brute_f_max(dist, 0.9, 0.25, 10'000'000);
  CHECK(std::abs(model.f_max(0.25, 0.9).value - brute) <= 1e-9);
}

TEST_CASE("f_max special points") {
  GrowthModel model(builtin_distribution("omega2"));
  for (double ri : {0.3, 0.88, 1.0}) {
    const auto mid = model.f_max(0.5, ri);
    CHECK(mid.value == doctest::Approx(ri - 1.0).epsilon(1e-12));
    CHECK(mid.argmax == doctest::Approx(0.5).epsilon(1e-6));
  }
  CHECK(model.f_max(0.0, 0.88).value == doctest::Approx(model.f_max_star(0.88)).epsilon(1e-12));
  // Rate-one precode never gives a positive distance.
  for (double ri : {0.1, 0.5, 1.0}) CHECK(model.g_zero_plus(ri, 1.0) >= 0.0);
}

TEST_CASE("degree one at r_i = 1 has a closed-form objective") {
  // p = l gives f(w, l) = (w - l) log2(l / (1 - l)): zero at l = w, but
  // larger for some l > w whenever w < 1/2.
  GrowthModel model(parse_distribution("1,1\n"));
  for (double w : {0.01, 0.1, 0.3}) {
    auto f = [w](double l) { return (w - l) * std::log2(l / (1 - l)); };
    const double l_star = bisect_root(
        [w](double l) { return std::log2(l / (1 - l)) - (w - l) / (l * (1 - l) * std::log(2.0)); }, w, 0.5, 1e-15);
    const auto g = model.growth_rate(w, 1.0, 0.8);
    CAPTURE(w);
    CHECK(g.growth == doctest::Approx(binary_entropy(w) - 0.2 + f(l_star)).epsilon(1e-10));
    CHECK(g.l_tilde_argmax == doctest::Approx(l_star).epsilon(1e-5));
    CHECK(g.growth > binary_entropy(w) - 0.2);
  }
  CHECK(model.f_max(0.5, 1.0).value == doctest::Approx(0.0));
}

TEST_CASE("typical minimum distance is the first zero of G") {
  GrowthModel model(builtin_distribution("omega2"));
  for (auto [ri, ro] : {std::pair{0.5, 0.9}, std::pair{0.8, 0.99}, std::pair{0.3, 0.5}}) {
    const double d = model.typical_dmin(ri, ro);
    CAPTURE(ri);
    CAPTURE(ro);
    REQUIRE(d > 0.0);
    CHECK(std::abs(model.growth_rate(d, ri, ro).growth) <= 1e-6);
    CHECK(model.growth_rate(0.5 * d, ri, ro).growth < 0.0);
    CHECK(model.growth_rate(std::min(2.0 * d, 0.5), ri, ro).growth > 0.0);
  }
  // Lower outer rate means a larger distance.
  CHECK(model.typical_dmin(0.8, 0.9) > model.typical_dmin(0.8, 0.99));
}

TEST_CASE("landmarks with the standards distribution") {
  GrowthModel model(builtin_distribution("omega1"));
  const double d = model.typical_dmin(0.8, 0.99);
  CHECK(d == doctest::Approx(5e-4).epsilon(0.4));
  CHECK(model.typical_dmin(0.95, 0.99) == 0.0);
  CHECK(model.g_zero_plus(0.95, 0.99) > 0.0);
  const double boundary = bisect_root([&](double ri) { return model.g_zero_plus(ri, 0.99); }, 0.8, 0.95, 1e-9);
  CHECK(boundary == doctest::Approx(0.88).epsilon(0.01 / 0.88));
  CHECK(model.f_max_star(0.88) == doctest::Approx(0.0088).epsilon(0.05));
}

TEST_CASE("growth curve matches pointwise evaluation and is thread independent") {
  GrowthModel model(builtin_distribution("omega1"));
  const auto grid = linear_grid(0.01, 0.99, 50);
  const auto one = model.curve(0.7, 0.9, grid, 1);
  const auto many = model.curve(0.7, 0.9, grid, 4);
  REQUIRE(one.samples.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(one.samples[i].growth == many.samples[i].growth);
    CHECK(one.samples[i].growth == model.growth_rate(grid[i], 0.7, 0.9).growth);
  }
  CHECK(one.d_min_typ == model.typical_dmin(0.7, 0.9));
  CHECK(one.g_at_zero_plus == model.g_zero_plus(0.7, 0.9));
}

TEST_CASE("finite-length exponent approaches G") {
  const auto dist = builtin_distribution("omega1");
  GrowthModel model(dist);
  double previous = INFINITY;
  for (std::uint32_t n : {100U, 400U, 1600U}) {
    const auto params = EnsembleParams::from_rates(n, 0.9, 0.9889);
    const auto s = raptor_awe(params, dist, SpectrumMode::paper);
    const auto w = static_cast<std::size_t>(std::lround(0.3 * n));
    const double gap = std::abs(s.log2_aw[w] / n - model.growth_rate(0.3, 0.9, params.outer_rate()).growth);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 0.01);
}

TEST_CASE("argument validation") {
  GrowthModel model(builtin_distribution("omega1"));
  CHECK_THROWS_AS(model.growth_rate(-0.1, 0.5, 0.5), Error);
  CHECK_THROWS_AS(model.growth_rate(0.3, 0.0, 0.5), Error);
  CHECK_THROWS_AS(model.growth_rate(0.3, 0.5, 1.5), Error);
}

TEST_CASE("asymptotic spot values") {
  CHECK(parity_prob_asym(3, 0.1) == doctest::Approx(0.244).epsilon(1e-14));
  for (std::uint32_t j : {1U, 2U, 9U}) CHECK(parity_prob_asym(j, 0.5) == 0.5);
  CHECK(parity_prob_asym(1, 0.37) == doctest::Approx(0.37));
  const auto o1 = builtin_distribution("omega1");
  double expected = 0.0;
  for (auto e : o1.entries()) expected += e.probability * 0.5 * (1.0 - std::pow(0.98, e.degree));
  CHECK(p_asym(0.01, o1) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(p_asym(0.01, o1) == doctest::Approx(o1.mean_degree() * 0.01).epsilon(0.1));
  CHECK(p_asym(0.37, parse_distribution("1,1")) == doctest::Approx(0.37));
  CHECK(p_asym(0.5, builtin_distribution("omega2")) == 0.5);
}

TEST_CASE("objective boundary behaviour") {
  GrowthModel model(builtin_distribution("omega2"));
  CHECK(model.objective(0.5, 0.5, 0.7) == doctest::Approx(-0.3).epsilon(1e-14));
  CHECK(model.objective(0.3, 0.0, 0.7) == kNegInf);
  const double l = 0.2;
  CHECK(model.objective(0.0, l, 0.7) ==
        doctest::Approx(0.7 * binary_entropy(l) + std::log2(1 - p_asym(l, model.distribution()))).epsilon(1e-13));
}

TEST_CASE("f_max_star is nonnegative and nondecreasing in r_i") {
  GrowthModel model(builtin_distribution("omega1"));
  double previous = 0.0;
  for (double ri = 0.05; ri <= 1.0; ri += 0.05) {
    const double v = model.f_max_star(ri);
    CHECK(v >= 0.0);
    CHECK(v >= previous - 1e-15);
    previous = v;
  }
  CHECK(model.typical_dmin(0.7, 1.0) == 0.0);
}

TEST_CASE("growth curve stays under the rate") {
  GrowthModel model(builtin_distribution("omega2"));
  const auto grid = linear_grid(0.001, 0.999, 200);
  for (auto [ri, ro] : {std::pair{0.8, 0.99}, std::pair{0.5, 0.5}, std::pair{1.0, 0.9}}) {
    const auto c = model.curve(ri, ro, grid);
    for (const auto& s : c.samples) CHECK(s.growth <= ri * ro + 1e-9);
  }
}


}
