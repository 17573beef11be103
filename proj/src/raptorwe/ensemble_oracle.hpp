#pragma once

// Independent checks of the analytic spectrum: exhaustive subset counting,
// sampled ensemble realizations, and exhaustive per-realization enumerators.
// Nothing in here calls into exact_spectrum.

#include <cstdint>
#include <random>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "raptorwe/degree_distribution.hpp"
#include "raptorwe/ensemble.hpp"

namespace raptorwe {

using BitRow = boost::dynamic_bitset<std::uint64_t>;

struct LtRealization {
  std::uint32_t h = 0;
  std::uint32_t n = 0;
  /// neighbors[i] lists the distinct intermediate positions XORed into output i.
  std::vector<std::vector<std::uint32_t>> neighbors;

  /// x = LT(v).
  BitRow encode(const BitRow& v) const;
};

struct PrecodeRealization {
  std::uint32_t k = 0;
  std::uint32_t h = 0;
  /// k rows of length h.
  std::vector<BitRow> generator;

  /// v = u G for the input whose bits are the low k bits of `u`.
  BitRow encode(std::uint64_t u) const;
};

struct SpectrumEstimate {
  std::vector<double> mean_aw;
  std::vector<double> std_err;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Exact fraction of j-subsets of {0..h-1} meeting {0..l-1} in an odd number
/// of positions, by enumerating all C(h, j) subsets. h <= 24.
double parity_prob_bruteforce(std::uint32_t j, std::uint32_t l, std::uint32_t h);

/// Per-sample generator seeded from (seed, index) only.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);

/// Draws a degree by inverse CDF over the sparse distribution.
std::uint32_t sample_degree(const DegreeDistribution& dist, std::mt19937_64& rng);

/// Uniform j-subset of {0..h-1} by partial Fisher-Yates; `scratch` is reused.
std::vector<std::uint32_t> sample_subset(std::uint32_t j, std::uint32_t h, std::mt19937_64& rng,
                                         std::vector<std::uint32_t>& scratch);

LtRealization sample_lt(std::uint32_t h, std::uint32_t n, const DegreeDistribution& dist, std::mt19937_64& rng);

struct EnsembleRealization {
  PrecodeRealization precode;
  LtRealization lt;
};

/// i.i.d. uniform generator bits, then one LT realization.
EnsembleRealization sample_realization(const EnsembleParams& params, const DegreeDistribution& dist,
                                       std::mt19937_64& rng);

/// Weight histogram of LT(u G) over all 2^k - 1 nonzero inputs u (counted
/// with multiplicity). Walks inputs in Gray-code order so each step is one
/// XOR of a precomputed output image. k <= 20.
std::vector<std::uint64_t> exhaustive_spectrum(const PrecodeRealization& precode, const LtRealization& lt);

/// Same histogram by re-encoding every input from scratch.
std::vector<std::uint64_t> exhaustive_spectrum_naive(const PrecodeRealization& precode, const LtRealization& lt);

/// Monte-Carlo ensemble average of exhaustive_spectrum. Sample s uses
/// substream(seed, s); per-bin sums are integers, so the result is identical
/// for every thread count. k <= 16, samples >= 100.
SpectrumEstimate estimate_average_spectrum(const EnsembleParams& params, const DegreeDistribution& dist,
                                           std::uint64_t samples, std::uint64_t seed, unsigned threads = 1);

struct WeightLawCheck {
  std::uint32_t l = 0;
  double p_l = 0.0;  // success probability used for the binomial reference
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> histogram;  // w = 0..n
  double chi_square = 0.0;
  std::uint32_t degrees_of_freedom = 0;
  double p_value = 1.0;
};

/// Goodness of fit of w_H(LT(v)), v uniform of weight l and a fresh LT
/// realization per trial, against Binomial(n, p). Cells with expected count
/// below 5 are pooled with their neighbors.
WeightLawCheck lt_weight_law_check(std::uint32_t h, std::uint32_t n, std::uint32_t l, double p,
                                   const DegreeDistribution& dist, std::uint64_t trials, std::uint64_t seed);

}  // namespace raptorwe
