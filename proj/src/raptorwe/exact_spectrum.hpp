#pragma once

#include <cstdint>
#include <vector>

#include "raptorwe/degree_distribution.hpp"
#include "raptorwe/ensemble.hpp"

namespace raptorwe {

/// How the precode weight enumerator is averaged.
///  - paper: C(h,l) 2^{-h(1-r_o)} for every l, which counts 2^k input words.
///  - exact: (2^k - 1) C(h,l) 2^{-h}, the average over i.i.d. uniform generator
///    matrices restricted to the 2^k - 1 nonzero inputs. Inputs that the
///    precode maps to the zero word are reported at output weight 0.
enum class SpectrumMode { paper, exact };

/// Ensemble-average weight enumerator, log2 A_w for w = 0..n. Entry 0 is a
/// diagnostic column that makes the sum identities checkable.
struct WeightSpectrum {
  EnsembleParams params;
  SpectrumMode mode;
  std::vector<double> log2_aw;
};

/// Probability that a degree-j output symbol is 1 when the intermediate word
/// has weight l out of h: the odd tail of a hypergeometric(h, l, j) law.
double parity_prob(std::uint32_t j, std::uint32_t l, std::uint32_t h);

/// p_l = sum_j Omega_j p_{j,l}. Throws if a degree exceeds h.
double output_bit_prob(std::uint32_t l, std::uint32_t h, const DegreeDistribution& dist);

/// p_l for l = 0..h in one pass.
std::vector<double> output_bit_probs(std::uint32_t h, const DegreeDistribution& dist);

/// log2 of the LT input-output weight enumerator A^i_{l,w}.
double lt_iowe_log(std::uint32_t l, std::uint32_t w, const EnsembleParams& params, const DegreeDistribution& dist);

/// log2 of the precode weight enumerator A^o_l.
double outer_we_log(std::uint32_t l, const EnsembleParams& params, SpectrumMode mode);

/// A_w for the serially concatenated ensemble. The w-loop is split across
/// `threads` workers (0 = hardware concurrency); output does not depend on it.
WeightSpectrum raptor_awe(const EnsembleParams& params, const DegreeDistribution& dist, SpectrumMode mode,
                          unsigned threads = 1);

}  // namespace raptorwe
