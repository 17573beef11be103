#include "raptorwe/ensemble.hpp"

#include <cmath>
#include <string>

#include "raptorwe/error.hpp"

namespace raptorwe {

namespace {

std::uint32_t integral_length(double rate, std::uint32_t base, const char* what) {
  if (!(rate > 0.0 && rate <= 1.0)) {
    fail(ErrorCode::out_of_range, std::string(what) + " rate must lie in (0, 1]");
  }
  const double exact = rate * static_cast<double>(base);
  const double rounded = std::round(exact);
  if (std::abs(rounded / base - rate) > EnsembleParams::kRateResolution) {
    fail(ErrorCode::invalid_argument, std::string(what) + " length " + std::to_string(exact) +
                                          " is not an integer (rate " + std::to_string(rate) + " of " +
                                          std::to_string(base) + ")");
  }
  return static_cast<std::uint32_t>(rounded);
}

}  // namespace

EnsembleParams EnsembleParams::from_lengths(std::uint32_t n, std::uint32_t h, std::uint32_t k) {
  if (!(1 <= k && k <= h && h <= n)) {
    fail(ErrorCode::invalid_argument, "ensemble lengths must satisfy 1 <= k <= h <= n (got n=" + std::to_string(n) +
                                          ", h=" + std::to_string(h) + ", k=" + std::to_string(k) + ")");
  }
  return EnsembleParams(n, h, k);
}

EnsembleParams EnsembleParams::from_rates(std::uint32_t n, double inner_rate, double outer_rate) {
  if (n == 0) fail(ErrorCode::invalid_argument, "codeword length n must be positive");
  const auto h = integral_length(inner_rate, n, "intermediate (h = r_i n)");
  if (h == 0) fail(ErrorCode::invalid_argument, "intermediate length h = r_i n is zero");
  const auto k = integral_length(outer_rate, h, "source (k = r_o h)");
  return from_lengths(n, h, k);
}

}  // namespace raptorwe
