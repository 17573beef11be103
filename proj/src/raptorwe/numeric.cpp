#include "raptorwe/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "raptorwe/error.hpp"

namespace raptorwe {

namespace {
constexpr double kInvLn2 = 1.0 / std::numbers::ln2;
}

double log2_binomial(std::uint64_t m, std::uint64_t t) {
  if (t > m) return kNegInf;
  if (t == 0 || t == m) return 0.0;
  const double md = static_cast<double>(m);
  const double td = static_cast<double>(t);
  return (std::lgamma(md + 1.0) - std::lgamma(td + 1.0) - std::lgamma(md - td + 1.0)) * kInvLn2;
}

double binary_entropy(double x) {
  if (x < -1e-12 || x > 1.0 + 1e-12) {
    fail(ErrorCode::out_of_range, "binary_entropy: argument " + std::to_string(x) + " outside [0, 1]");
  }
  x = std::clamp(x, 0.0, 1.0);
  if (x == 0.0 || x == 1.0) return 0.0;
  return -(x * std::log2(x) + (1.0 - x) * std::log1p(-x) * kInvLn2);
}

double log2_bernoulli_weight(double p, double w, double n) {
  const double ones = w;
  const double zeros = n - w;
  double out = 0.0;
  if (ones > 0.0) {
    if (p <= 0.0) return kNegInf;
    out += ones * std::log2(p);
  }
  if (zeros > 0.0) {
    if (p >= 1.0) return kNegInf;
    out += zeros * std::log1p(-p) * kInvLn2;
  }
  return out;
}

void Log2SumExp::add(double x) {
  if (x == kNegInf) return;
  if (x <= max_) {
    scaled_sum_ += std::exp2(x - max_);
  } else {
    scaled_sum_ = scaled_sum_ * std::exp2(max_ - x) + 1.0;
    max_ = x;
  }
}

double Log2SumExp::value() const {
  if (max_ == kNegInf) return kNegInf;
  return max_ + std::log2(scaled_sum_);
}

double log2_sum_exp(std::span<const double> xs) {
  Log2SumExp acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

ScalarMaximum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                      double tolerance, int max_iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iterations && (b - a) > tolerance; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = f(d);
    }
  }

  ScalarMaximum best{c, fc};
  if (fd > best.value) best = {d, fd};
  const double mid = 0.5 * (a + b);
  if (const double fm = f(mid); fm > best.value) best = {mid, fm};
  if (const double flo = f(lo); flo > best.value) best = {lo, flo};
  if (const double fhi = f(hi); fhi > best.value) best = {hi, fhi};
  return best;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tolerance,
                   int max_iterations) {
  const bool rising = f(lo) <= 0.0;
  for (int it = 0; it < max_iterations && (hi - lo) > tolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    const bool positive = f(mid) > 0.0;
    if (positive == rising) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = std::exp(log_lo + step * static_cast<double>(i));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

}  // namespace raptorwe
