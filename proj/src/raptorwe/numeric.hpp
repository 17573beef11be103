#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace raptorwe {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

/// log2 of the binomial coefficient C(m, t); -inf when t > m.
double log2_binomial(std::uint64_t m, std::uint64_t t);

/// Binary entropy in bits with 0 log 0 = 0. Arguments within 1e-12 outside
/// [0, 1] are clamped, anything further out throws.
double binary_entropy(double x);

/// w log2(p) + (n - w) log2(1 - p) with the conventions 0 log 0 = 0 and
/// -inf for a zero-probability outcome of positive multiplicity.
double log2_bernoulli_weight(double p, double w, double n);

/// Streaming log2-sum-exp: accumulates log2(sum 2^x_i).
class Log2SumExp {
 public:
  void add(double x);
  double value() const;

 private:
  double max_ = kNegInf;
  double scaled_sum_ = 0.0;
};

double log2_sum_exp(std::span<const double> xs);

struct ScalarMaximum {
  double argmax = 0.0;
  double value = kNegInf;
};

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
/// Stops once the bracket is narrower than `tolerance`. Endpoints are also
/// evaluated so a monotone objective returns its boundary maximum.
ScalarMaximum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                      double tolerance = 1e-12, int max_iterations = 200);

/// Bisection for a sign change of `f` on [lo, hi]; f(lo) and f(hi) must have
/// opposite signs (f(lo) <= 0 < f(hi) or the reverse). Returns the midpoint of
/// the final bracket.
double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tolerance,
                   int max_iterations = 200);

/// `count` points log-spaced from `lo` to `hi` inclusive.
std::vector<double> geometric_grid(double lo, double hi, std::size_t count);

/// `count` points evenly spaced from `lo` to `hi` inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

}  // namespace raptorwe
