#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "raptorwe/degree_distribution.hpp"
#include "raptorwe/ensemble.hpp"
#include "raptorwe/ensemble_oracle.hpp"
#include "raptorwe/error.hpp"
#include "raptorwe/exact_spectrum.hpp"

using namespace raptorwe;

namespace {

const DegreeDistribution& validation_dist() {
  static const auto d = parse_distribution("1,0.3\n2,0.5\n3,0.2\n");
  return d;
}

}  // namespace

TEST_SUITE("ensemble_oracle") {

TEST_CASE("brute-force parity on a hand-counted case") {
  // h = 4, l = 2, j = 2: 4 of the 6 pairs hit exactly one of the first two.
  CHECK(parity_prob_bruteforce(2, 2, 4) == doctest::Approx(4.0 / 6.0));
  CHECK_THROWS_AS(parity_prob_bruteforce(2, 2, 25), Error);
}

TEST_CASE("Gray-code enumeration matches naive encoding") {
  const auto params = EnsembleParams::from_lengths(16, 12, 8);
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto rng = substream(7, s);
    const auto r = sample_realization(params, validation_dist(), rng);
    const auto fast = exhaustive_spectrum(r.precode, r.lt);
    CHECK(fast == exhaustive_spectrum_naive(r.precode, r.lt));
    std::uint64_t total = 0;
    for (auto c : fast) total += c;
    CHECK(total == 255);
  }
}

TEST_CASE("sampled LT graphs respect the degree law") {
  auto rng = substream(1, 0);
  const auto lt = sample_lt(12, 30000, validation_dist(), rng);
  std::vector<double> freq(4, 0.0);
  for (const auto& nb : lt.neighbors) {
    std::vector<std::uint32_t> sorted = nb;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    freq[nb.size()] += 1.0 / 30000.0;
  }
  CHECK(freq[1] == doctest::Approx(0.3).epsilon(0.05));
  CHECK(freq[2] == doctest::Approx(0.5).epsilon(0.05));
  CHECK(freq[3] == doctest::Approx(0.2).epsilon(0.05));
}

TEST_CASE("substreams are deterministic and distinct") {
  auto a = substream(42, 3);
  auto b = substream(42, 3);
  auto c = substream(42, 4);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
}

TEST_CASE("Monte-Carlo average matches the exact-mode spectrum") {
  const auto params = EnsembleParams::from_lengths(16, 12, 8);
  const auto analytic = raptor_awe(params, validation_dist(), SpectrumMode::exact);
  const auto est = estimate_average_spectrum(params, validation_dist(), 4000, 99, 0);
  double max_z = 0.0;
  for (std::size_t w = 0; w <= 16; ++w) {
    if (est.std_err[w] > 0.0) max_z = std::max(max_z, std::abs(est.mean_aw[w] - std::exp2(analytic.log2_aw[w])) / est.std_err[w]);
  }
  CHECK(max_z <= 4.0);
}

TEST_CASE("estimate does not depend on thread count") {
  const auto params = EnsembleParams::from_lengths(10, 8, 6);
  const auto one = estimate_average_spectrum(params, validation_dist(), 300, 5, 1);
  const auto many = estimate_average_spectrum(params, validation_dist(), 300, 5, 7);
  CHECK(one.mean_aw == many.mean_aw);
  CHECK(one.std_err == many.std_err);
}

TEST_CASE("estimate guards") {
  const auto params = EnsembleParams::from_lengths(40, 20, 17);
  CHECK_THROWS_AS(estimate_average_spectrum(params, validation_dist(), 1000, 1, 1), Error);
  const auto small = EnsembleParams::from_lengths(16, 12, 8);
  CHECK_THROWS_AS(estimate_average_spectrum(small, validation_dist(), 0, 1, 1), Error);
  CHECK_THROWS_AS(estimate_average_spectrum(small, validation_dist(), 99, 1, 1), Error);
}

TEST_CASE("LT output weight is binomial given the input weight") {
  for (std::uint32_t l : {1U, 5U, 12U}) {
    const double p = output_bit_prob(l, 12, validation_dist());
    const auto check = lt_weight_law_check(12, 16, l, p, validation_dist(), 20000, 11);
    CAPTURE(l);
    CHECK(check.degrees_of_freedom > 0);
    CHECK(check.p_value >= 1e-3);
  }
  // A wrong reference is rejected.
  const auto wrong = lt_weight_law_check(12, 16, 5, 0.3, validation_dist(), 20000, 11);
  CHECK(wrong.p_value < 1e-3);
}

TEST_CASE("degree-one realizations are singletons and sampling is deterministic") {
  const auto deg1 = parse_distribution("1,1");
  const auto params = EnsembleParams::from_lengths(20, 10, 4);
  auto rng = substream(3, 0);
  const auto r = sample_realization(params, deg1, rng);
  for (const auto& nb : r.lt.neighbors) {
    CHECK(nb.size() == 1);
    CHECK(nb[0] < 10);
  }
  auto rng_a = substream(9, 1);
  auto rng_b = substream(9, 1);
  const auto a = sample_realization(params, validation_dist(), rng_a);
  const auto b = sample_realization(params, validation_dist(), rng_b);
  CHECK(a.lt.neighbors == b.lt.neighbors);
  CHECK(a.precode.generator == b.precode.generator);
}

TEST_CASE("degree histogram passes a chi-square test") {
  auto rng = substream(12, 0);
  std::vector<double> counts(4, 0.0);
  for (int i = 0; i < 100000; ++i) counts[sample_degree(validation_dist(), rng)] += 1.0;
  const double expected[4] = {0.0, 30000.0, 50000.0, 20000.0};
  double chi2 = 0.0;
  for (int d = 1; d <= 3; ++d) chi2 += (counts[d] - expected[d]) * (counts[d] - expected[d]) / expected[d];
  // 2 degrees of freedom, 0.001 critical value.
  CHECK(chi2 < 13.816);
}

TEST_CASE("hand-computed toy realization") {
  // k = 2, h = 3: G rows 110 and 011; LT outputs {0}, {1,2}, {0,2}, {1}.
  PrecodeRealization pre{2, 3, {}};
  BitRow g0(3), g1(3);
  g0[0] = g0[1] = true;
  g1[1] = g1[2] = true;
  pre.generator = {g0, g1};
  LtRealization lt{3, 4, {{0}, {1, 2}, {0, 2}, {1}}};
  // u=1: v=110 -> x=1,1,1,1; u=2: v=011 -> x=0,0,1,1; u=3: v=101 -> x=1,1,0,0.
  const auto counts = exhaustive_spectrum(pre, lt);
  CHECK(counts == std::vector<std::uint64_t>{0, 0, 2, 0, 1});
  CHECK(exhaustive_spectrum_naive(pre, lt) == counts);
}

TEST_CASE("degree-one coordinate sampling still matches the analytic spectrum") {
  const auto deg1 = parse_distribution("1,1");
  const auto params = EnsembleParams::from_lengths(10, 10, 6);
  const auto analytic = raptor_awe(params, deg1, SpectrumMode::exact);
  const auto est = estimate_average_spectrum(params, deg1, 5000, 4, 0);
  double total = 0.0;
  for (std::size_t w = 0; w <= 10; ++w) {
    total += est.mean_aw[w];
    if (est.std_err[w] > 0.0) {
      CHECK(std::abs(est.mean_aw[w] - std::exp2(analytic.log2_aw[w])) / est.std_err[w] <= 4.0);
    }
  }
  CHECK(total == doctest::Approx(63.0).epsilon(1e-12));
}


}
