#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace raptorwe {

struct DegreeEntry {
  std::uint32_t degree = 0;
  double probability = 0.0;
};

/// LT output degree distribution, stored sparsely as (degree, probability)
/// pairs with strictly increasing degrees. Probabilities are renormalized by
/// their raw sum on construction; the raw sum must be within
/// `kNormalizationTolerance` of 1. Immutable once built.
class DegreeDistribution {
 public:
  static constexpr double kNormalizationTolerance = 1e-3;

  explicit DegreeDistribution(std::vector<DegreeEntry> entries);

  std::span<const DegreeEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::uint32_t max_degree() const noexcept { return entries_.back().degree; }

  /// Average output degree, sum_i i * Omega_i.
  double mean_degree() const noexcept { return mean_; }

  /// Cumulative probabilities aligned with entries(); last element is 1.
  std::span<const double> cumulative() const noexcept { return cumulative_; }

  /// Mixture lambda * a + (1 - lambda) * b.
  static DegreeDistribution mix(const DegreeDistribution& a, const DegreeDistribution& b, double lambda);

 private:
  std::vector<DegreeEntry> entries_;
  std::vector<double> cumulative_;
  double mean_ = 0.0;
};

/// Parses the `degree,probability` line format. Blank lines and lines whose
/// first non-blank character is `#` are skipped.
DegreeDistribution parse_distribution(std::string_view text);

DegreeDistribution load_distribution_file(const std::string& path);

/// Bundled distributions by name: "omega1" (standardized Raptor codes) and
/// "omega2". Throws for unknown names.
DegreeDistribution builtin_distribution(std::string_view name);

/// Resolves a builtin name first, then a file path.
DegreeDistribution resolve_distribution(const std::string& name_or_path);

}  // namespace raptorwe
