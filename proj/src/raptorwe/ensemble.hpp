#pragma once

#include <cstdint>

namespace raptorwe {

/// Finite-length Raptor ensemble geometry: an (h, k) precode followed by an
/// (n, h) fixed-rate LT code. Invariant: 1 <= k <= h <= n.
class EnsembleParams {
 public:
  /// Rates are accepted when r*m rounds to an integer reproducing r to within
  /// `kRateResolution`, i.e. decimal rates with four significant digits.
  static constexpr double kRateResolution = 5e-5;

  static EnsembleParams from_lengths(std::uint32_t n, std::uint32_t h, std::uint32_t k);
  static EnsembleParams from_rates(std::uint32_t n, double inner_rate, double outer_rate);

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t h() const noexcept { return h_; }
  std::uint32_t k() const noexcept { return k_; }

  double inner_rate() const noexcept { return static_cast<double>(h_) / n_; }
  double outer_rate() const noexcept { return static_cast<double>(k_) / h_; }
  double rate() const noexcept { return static_cast<double>(k_) / n_; }

 private:
  EnsembleParams(std::uint32_t n, std::uint32_t h, std::uint32_t k) : n_(n), h_(h), k_(k) {}

  std::uint32_t n_;
  std::uint32_t h_;
  std::uint32_t k_;
};

}  // namespace raptorwe
