#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "raptorwe/asymptotic.hpp"

namespace raptorwe {

enum class RegionKind { p_boundary, o_boundary, gv, isorate };

/// Sampled curve in the rate plane. For p_boundary/o_boundary the points are
/// (r_i, r_o); for gv they are (d_min, r); for isorate they are (r_o, d_min).
/// Points are sorted by their first coordinate.
struct RegionCurve {
  RegionKind kind;
  std::vector<std::pair<double, double>> points;
  std::string metadata;
};

/// Slack used for the strict / non-strict membership comparisons.
inline constexpr double kMembershipSlack = 1e-12;

/// (r_i, r_o) has a positive typical minimum distance iff
/// r_i (1 - r_o) > f_max_star(r_i).
bool in_positive_region(const GrowthModel& model, double inner_rate, double outer_rate);

/// Boundary r_o*(r_i) = 1 - f_max_star(r_i) / r_i of the positive region; the
/// region is r_o < r_o*. Grid points with r_o* <= 0 are dropped.
RegionCurve p_boundary(const GrowthModel& model, std::span<const double> inner_rates, unsigned threads = 1);

/// phi(r_o) bounding the outer region.
///
/// The necessary condition behind the outer region is
///   r_i [(1 - r_o) - H_b(1 - r_o)] >= mean_deg log2(r_o).
/// When the bracket is negative (r_o above ~0.227) this reads
/// r_i <= mean_deg log2(r_o) / [(1 - r_o) - H_b(1 - r_o)]; otherwise it holds
/// for every r_i and phi is +inf. `as_printed` instead evaluates
/// mean_deg log2(r_o) / [H_b(1 - r_o) - (1 - r_o)] with no case split, which is
/// negative wherever the corrected form is finite. r_o = 1 returns +inf.
double outer_region_phi(double outer_rate, double mean_deg, bool as_printed = false);

/// r_i <= min(phi(r_o), 1 / r_o).
bool in_outer_region(double inner_rate, double outer_rate, double mean_deg, bool as_printed = false);

/// Outer-region boundary r_i = min(phi(r_o), 1/r_o) over `outer_rates`,
/// sorted by r_i. Points with an empty bound (negative phi) are dropped.
RegionCurve o_boundary(std::span<const double> outer_rates, double mean_deg, bool as_printed = false);

/// Membership of every (r_i, r_o) grid cell in P and in O, row-major with r_i
/// as the row index. f_max_star is evaluated once per row.
struct MembershipGrid {
  std::vector<double> inner_rates;
  std::vector<double> outer_rates;
  std::vector<std::uint8_t> in_p;
  std::vector<std::uint8_t> in_o;

  std::size_t index(std::size_t i, std::size_t j) const { return i * outer_rates.size() + j; }
};

MembershipGrid membership_grid(const GrowthModel& model, std::span<const double> inner_rates,
                               std::span<const double> outer_rates, bool phi_as_printed = false,
                               unsigned threads = 1);

/// Gilbert-Varshamov rate 1 - H_b(delta).
double gv_bound(double delta);

/// Smallest delta in [0, 1/2] with 1 - H_b(delta) = rate.
double gv_delta(double rate);

RegionCurve gv_curve(std::span<const double> deltas);

struct IsorateScan {
  double rate = 0.0;
  RegionCurve curve;  // (r_o, d_min) samples
  std::vector<double> skipped_outer_rates;  // r / r_o > 1
  /// Largest r_o for which the ensemble has d_min > 0, refined by bisection on
  /// the region condition between the last member grid point and the next.
  std::optional<double> threshold_outer_rate;
};

IsorateScan isorate_scan(const GrowthModel& model, double rate, std::span<const double> outer_rates,
                         unsigned threads = 1);

}  // namespace raptorwe
