#include "raptorwe/exact_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "raptorwe/error.hpp"
#include "raptorwe/numeric.hpp"
#include "raptorwe/parallel.hpp"

namespace raptorwe {

namespace {

void check_degrees(std::uint32_t h, const DegreeDistribution& dist) {
  if (dist.max_degree() > h) {
    fail(ErrorCode::out_of_range, "degree " + std::to_string(dist.max_degree()) +
                                      " exceeds the intermediate length h = " + std::to_string(h));
  }
}

// log2(2^k - 1)
double log2_nonzero_inputs(std::uint32_t k) {
  return static_cast<double>(k) + std::log1p(-std::exp2(-static_cast<double>(k))) / std::numbers::ln2;
}

double outer_log2_scale(const EnsembleParams& params, SpectrumMode mode) {
  if (mode == SpectrumMode::paper) return -static_cast<double>(params.h() - params.k());
  return log2_nonzero_inputs(params.k()) - static_cast<double>(params.h());
}

}  // namespace

double parity_prob(std::uint32_t j, std::uint32_t l, std::uint32_t h) {
  if (j < 1 || j > h || l > h) {
    fail(ErrorCode::out_of_range, "parity_prob: need 1 <= j <= h and 0 <= l <= h (j=" + std::to_string(j) +
                                      ", l=" + std::to_string(l) + ", h=" + std::to_string(h) + ")");
  }
  if (l == 0) return 0.0;

  // Intersection size i of a random j-subset with a fixed l-subset. Terms are
  // generated from the mode outward by the pmf ratio, so the largest is 1 and
  // the normalizer is the sum over every admissible i.
  const std::int64_t jj = j, ll = l, hh = h;
  const std::int64_t lo = std::max<std::int64_t>(0, ll + jj - hh);
  const std::int64_t hi = std::min(ll, jj);
  std::int64_t mode = (jj + 1) * (ll + 1) / (hh + 2);
  mode = std::clamp(mode, lo, hi);

  double odd = 0.0;
  double total = 0.0;
  auto accumulate = [&](std::int64_t i, double t) {
    total += t;
    if (i % 2 == 1) odd += t;
  };

  accumulate(mode, 1.0);
  double t = 1.0;
  for (std::int64_t i = mode; i < hi; ++i) {
    t *= static_cast<double>((jj - i) * (ll - i)) / static_cast<double>((i + 1) * (hh - jj - ll + i + 1));
    if (t == 0.0) break;
    accumulate(i + 1, t);
  }
  t = 1.0;
  for (std::int64_t i = mode; i > lo; --i) {
    t *= static_cast<double>(i * (hh - jj - ll + i)) / static_cast<double>((jj - i + 1) * (ll - i + 1));
    if (t == 0.0) break;
    accumulate(i - 1, t);
  }
  return odd / total;
}

double output_bit_prob(std::uint32_t l, std::uint32_t h, const DegreeDistribution& dist) {
  check_degrees(h, dist);
  if (l > h) fail(ErrorCode::out_of_range, "output_bit_prob: l exceeds h");
  double p = 0.0;
  for (const auto& e : dist.entries()) p += e.probability * parity_prob(e.degree, l, h);
  return std::clamp(p, 0.0, 1.0);
}

std::vector<double> output_bit_probs(std::uint32_t h, const DegreeDistribution& dist) {
  check_degrees(h, dist);
  std::vector<double> p(static_cast<std::size_t>(h) + 1);
  for (std::uint32_t l = 0; l <= h; ++l) p[l] = output_bit_prob(l, h, dist);
  return p;
}

double lt_iowe_log(std::uint32_t l, std::uint32_t w, const EnsembleParams& params, const DegreeDistribution& dist) {
  if (l > params.h() || w > params.n()) fail(ErrorCode::out_of_range, "lt_iowe_log: weight out of range");
  const double p = output_bit_prob(l, params.h(), dist);
  const double tail = log2_bernoulli_weight(p, w, params.n());
  if (tail == kNegInf) return kNegInf;
  return log2_binomial(params.h(), l) + log2_binomial(params.n(), w) + tail;
}

double outer_we_log(std::uint32_t l, const EnsembleParams& params, SpectrumMode mode) {
  if (l > params.h()) fail(ErrorCode::out_of_range, "outer_we_log: l exceeds h");
  return log2_binomial(params.h(), l) + outer_log2_scale(params, mode);
}

WeightSpectrum raptor_awe(const EnsembleParams& params, const DegreeDistribution& dist, SpectrumMode mode,
                          unsigned threads) {
  const std::uint32_t n = params.n();
  const std::uint32_t h = params.h();
  const auto p = output_bit_probs(h, dist);

  std::vector<double> log2_choose_h(static_cast<std::size_t>(h) + 1);
  for (std::uint32_t l = 0; l <= h; ++l) log2_choose_h[l] = log2_binomial(h, l);

  const double scale = outer_log2_scale(params, mode);
  // Paper mode follows the l >= 1 sum literally; exact mode also keeps the
  // nonzero inputs that the precode sends to the zero intermediate word.
  const std::uint32_t first_l = mode == SpectrumMode::exact ? 0 : 1;

  WeightSpectrum out{params, mode, std::vector<double>(static_cast<std::size_t>(n) + 1, kNegInf)};
  parallel_for(out.log2_aw.size(), threads, [&](std::size_t w) {
    Log2SumExp acc;
    for (std::uint32_t l = first_l; l <= h; ++l) {
      const double tail = log2_bernoulli_weight(p[l], static_cast<double>(w), n);
      if (tail != kNegInf) acc.add(log2_choose_h[l] + tail);
    }
    const double sum = acc.value();
    out.log2_aw[w] = sum == kNegInf ? kNegInf : log2_binomial(n, w) + scale + sum;
  });
  return out;
}

}  // namespace raptorwe
