#include "raptorwe/ensemble_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include "raptorwe/error.hpp"
#include "raptorwe/parallel.hpp"

namespace raptorwe {

namespace {

constexpr std::uint32_t kMaxBruteForceH = 24;
constexpr std::uint32_t kMaxExhaustiveK = 20;
constexpr std::uint32_t kMaxEstimateK = 16;
constexpr std::uint64_t kMinSamples = 100;

void check_shapes(const PrecodeRealization& precode, const LtRealization& lt) {
  if (precode.k > kMaxExhaustiveK) {
    fail(ErrorCode::infeasible, "exhaustive enumeration needs k <= " + std::to_string(kMaxExhaustiveK));
  }
  if (precode.h != lt.h || precode.generator.size() != precode.k || lt.neighbors.size() != lt.n) {
    fail(ErrorCode::invalid_argument, "precode and LT realizations do not fit together");
  }
}

}  // namespace

BitRow LtRealization::encode(const BitRow& v) const {
  BitRow x(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    bool bit = false;
    for (auto idx : neighbors[i]) bit ^= v[idx];
    x[i] = bit;
  }
  return x;
}

BitRow PrecodeRealization::encode(std::uint64_t u) const {
  BitRow v(h);
  for (std::uint32_t r = 0; r < k; ++r) {
    if ((u >> r) & 1U) v ^= generator[r];
  }
  return v;
}

double parity_prob_bruteforce(std::uint32_t j, std::uint32_t l, std::uint32_t h) {
  if (h > kMaxBruteForceH) fail(ErrorCode::infeasible, "brute-force parity needs h <= 24");
  if (j < 1 || j > h || l > h) fail(ErrorCode::out_of_range, "brute-force parity: need 1 <= j <= h, l <= h");

  const std::uint64_t fixed = (std::uint64_t{1} << l) - 1;
  const std::uint64_t limit = std::uint64_t{1} << h;
  std::uint64_t odd = 0;
  std::uint64_t total = 0;
  // Gosper's hack walks every h-bit mask with exactly j ones.
  for (std::uint64_t s = (std::uint64_t{1} << j) - 1; s < limit;) {
    ++total;
    odd += std::popcount(s & fixed) & 1U;
    const std::uint64_t c = s & (~s + 1);
    const std::uint64_t r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return static_cast<double>(odd) / static_cast<double>(total);
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::uint32_t sample_degree(const DegreeDistribution& dist, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  const auto cdf = dist.cumulative();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) --it;
  return dist.entries()[static_cast<std::size_t>(it - cdf.begin())].degree;
}

std::vector<std::uint32_t> sample_subset(std::uint32_t j, std::uint32_t h, std::mt19937_64& rng,
                                         std::vector<std::uint32_t>& scratch) {
  if (j > h) fail(ErrorCode::out_of_range, "subset size exceeds the ground set");
  scratch.resize(h);
  std::iota(scratch.begin(), scratch.end(), 0U);
  for (std::uint32_t t = 0; t < j; ++t) {
    std::uniform_int_distribution<std::uint32_t> pick(t, h - 1);
    std::swap(scratch[t], scratch[pick(rng)]);
  }
  return {scratch.begin(), scratch.begin() + j};
}

LtRealization sample_lt(std::uint32_t h, std::uint32_t n, const DegreeDistribution& dist, std::mt19937_64& rng) {
  if (dist.max_degree() > h) fail(ErrorCode::out_of_range, "degree exceeds the intermediate length h");
  LtRealization lt{h, n, {}};
  lt.neighbors.reserve(n);
  std::vector<std::uint32_t> scratch;
  for (std::uint32_t i = 0; i < n; ++i) lt.neighbors.push_back(sample_subset(sample_degree(dist, rng), h, rng, scratch));
  return lt;
}

EnsembleRealization sample_realization(const EnsembleParams& params, const DegreeDistribution& dist,
                                       std::mt19937_64& rng) {
  EnsembleRealization out;
  out.precode.k = params.k();
  out.precode.h = params.h();
  out.precode.generator.reserve(params.k());
  for (std::uint32_t r = 0; r < params.k(); ++r) {
    BitRow row(params.h());
    for (std::uint32_t c = 0; c < params.h(); c += 64) {
      const std::uint64_t word = rng();
      for (std::uint32_t b = 0; b < 64 && c + b < params.h(); ++b) row[c + b] = (word >> b) & 1U;
    }
    out.precode.generator.push_back(std::move(row));
  }
  out.lt = sample_lt(params.h(), params.n(), dist, rng);
  return out;
}

std::vector<std::uint64_t> exhaustive_spectrum(const PrecodeRealization& precode, const LtRealization& lt) {
  check_shapes(precode, lt);
  // The concatenated map is linear, so each generator row has a fixed output
  // image and flipping input bit b XORs image[b] into x.
  std::vector<BitRow> image;
  image.reserve(precode.k);
  for (const auto& row : precode.generator) image.push_back(lt.encode(row));

  std::vector<std::uint64_t> counts(static_cast<std::size_t>(lt.n) + 1, 0);
  BitRow x(lt.n);
  const std::uint64_t words = std::uint64_t{1} << precode.k;
  for (std::uint64_t step = 1; step < words; ++step) {
    x ^= image[static_cast<std::size_t>(std::countr_zero(step))];
    ++counts[x.count()];
  }
  return counts;
}

std::vector<std::uint64_t> exhaustive_spectrum_naive(const PrecodeRealization& precode, const LtRealization& lt) {
  check_shapes(precode, lt);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(lt.n) + 1, 0);
  const std::uint64_t words = std::uint64_t{1} << precode.k;
  for (std::uint64_t u = 1; u < words; ++u) ++counts[lt.encode(precode.encode(u)).count()];
  return counts;
}

SpectrumEstimate estimate_average_spectrum(const EnsembleParams& params, const DegreeDistribution& dist,
                                           std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  if (params.k() > kMaxEstimateK) {
    fail(ErrorCode::infeasible, "Monte-Carlo estimate needs k <= " + std::to_string(kMaxEstimateK));
  }
  if (samples < kMinSamples) {
    fail(ErrorCode::invalid_argument, "Monte-Carlo estimate needs at least " + std::to_string(kMinSamples) +
                                          " samples");
  }
  if (dist.max_degree() > params.h()) fail(ErrorCode::out_of_range, "degree exceeds the intermediate length h");

  const std::size_t bins = static_cast<std::size_t>(params.n()) + 1;
  const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), samples);
  std::vector<std::vector<std::uint64_t>> sum(workers, std::vector<std::uint64_t>(bins, 0));
  std::vector<std::vector<std::uint64_t>> sum_sq(workers, std::vector<std::uint64_t>(bins, 0));

  parallel_blocks(samples, static_cast<unsigned>(workers), [&](std::size_t begin, std::size_t end, std::size_t w) {
    for (std::size_t s = begin; s < end; ++s) {
      auto rng = substream(seed, s);
      const auto realization = sample_realization(params, dist, rng);
      const auto counts = exhaustive_spectrum(realization.precode, realization.lt);
      for (std::size_t b = 0; b < bins; ++b) {
        sum[w][b] += counts[b];
        sum_sq[w][b] += counts[b] * counts[b];
      }
    }
  });

  SpectrumEstimate out;
  out.samples = samples;
  out.seed = seed;
  out.mean_aw.assign(bins, 0.0);
  out.std_err.assign(bins, 0.0);
  const double count = static_cast<double>(samples);
  for (std::size_t b = 0; b < bins; ++b) {
    std::uint64_t s1 = 0;
    std::uint64_t s2 = 0;
    for (std::size_t w = 0; w < workers; ++w) {
      s1 += sum[w][b];
      s2 += sum_sq[w][b];
    }
    const double mean = static_cast<double>(s1) / count;
    const double variance =
        std::max(0.0, (static_cast<double>(s2) - count * mean * mean) / (count - 1.0));
    out.mean_aw[b] = mean;
    out.std_err[b] = std::sqrt(variance / count);
  }
  return out;
}

WeightLawCheck lt_weight_law_check(std::uint32_t h, std::uint32_t n, std::uint32_t l, double p,
                                   const DegreeDistribution& dist, std::uint64_t trials, std::uint64_t seed) {
  if (l > h) fail(ErrorCode::out_of_range, "input weight exceeds h");
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::out_of_range, "reference probability must lie in [0, 1]");
  if (trials == 0) fail(ErrorCode::invalid_argument, "weight-law check needs at least one trial");

  WeightLawCheck out;
  out.l = l;
  out.p_l = p;
  out.trials = trials;
  out.histogram.assign(static_cast<std::size_t>(n) + 1, 0);

  std::vector<std::uint32_t> scratch;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = substream(seed, t);
    BitRow v(h);
    for (auto idx : sample_subset(l, h, rng, scratch)) v[idx] = true;
    const auto lt = sample_lt(h, n, dist, rng);
    ++out.histogram[lt.encode(v).count()];
  }

  // Pool adjacent cells until each expects at least 5 observations.
  const boost::math::binomial_distribution<double> reference(n, p);
  std::vector<std::pair<double, double>> cells;  // (observed, expected)
  double obs = 0.0;
  double expected = 0.0;
  for (std::uint32_t w = 0; w <= n; ++w) {
    obs += static_cast<double>(out.histogram[w]);
    expected += static_cast<double>(trials) * boost::math::pdf(reference, w);
    if (expected >= 5.0) {
      cells.emplace_back(obs, expected);
      obs = expected = 0.0;
    }
  }
  if (cells.empty()) {
    cells.emplace_back(obs, expected);
  } else {
    cells.back().first += obs;
    cells.back().second += expected;
  }

  out.chi_square = 0.0;
  for (const auto& [o, e] : cells) {
    if (e > 0.0) out.chi_square += (o - e) * (o - e) / e;
  }
  out.degrees_of_freedom = cells.size() > 1 ? static_cast<std::uint32_t>(cells.size() - 1) : 0;
  if (out.degrees_of_freedom > 0) {
    const boost::math::chi_squared_distribution<double> chi(out.degrees_of_freedom);
    out.p_value = boost::math::cdf(boost::math::complement(chi, out.chi_square));
  } else {
    out.p_value = 1.0;
  }
  return out;
}

}  // namespace raptorwe
