#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "raptorwe/degree_distribution.hpp"
#include "raptorwe/numeric.hpp"

namespace raptorwe {

/// Limit of the degree-j parity probability as h grows with l = lt h:
/// (1 - (1 - 2 lt)^j) / 2.
double parity_prob_asym(std::uint32_t j, double lt);

/// sum_j Omega_j parity_prob_asym(j, lt).
double p_asym(double lt, const DegreeDistribution& dist);

struct GrowthPoint {
  double w_tilde = 0.0;
  double growth = 0.0;
  double l_tilde_argmax = 0.0;
};

struct GrowthCurve {
  double inner_rate = 0.0;
  double outer_rate = 0.0;
  std::vector<GrowthPoint> samples;
  double d_min_typ = 0.0;
  double g_at_zero_plus = 0.0;
};

/// Growth-rate analysis of C_inf(C_o, Omega, r_i, r_o) for one degree
/// distribution.
///
/// The inner objective
///   f(w, l) = r_i H_b(l) + w log2 p_l + (1 - w) log2(1 - p_l)
/// is maximized over l in (0, 1] by scanning a fixed grid, then refining every
/// near-best grid point by golden-section search. The grid is a uniform grid
/// of `uniform_points` on (0, 1] plus `origin_points` log-spaced points below
/// the first uniform node, and l = 0 itself, where f takes its limit value (0
/// for w = 0, -inf otherwise). H_b(l), log2 p_l and log2(1 - p_l) are cached
/// per node, so the object is cheap to query for many (w, r_i, r_o).
///
/// Thread-safe: all queries are const.
class GrowthModel {
 public:
  static constexpr std::size_t kDefaultUniformPoints = 4096;
  static constexpr std::size_t kDefaultOriginPoints = 512;
  static constexpr double kOriginFloor = 1e-12;
  /// Grid nodes within this much of the best value are refined too.
  static constexpr double kNearBestSlack = 1e-6;
  static constexpr double kRefineTolerance = 1e-12;

  explicit GrowthModel(DegreeDistribution dist, std::size_t uniform_points = kDefaultUniformPoints,
                       std::size_t origin_points = kDefaultOriginPoints);

  const DegreeDistribution& distribution() const noexcept { return dist_; }

  /// f(w, l) for the given inner rate.
  double objective(double w_tilde, double l_tilde, double inner_rate) const;

  /// max_l f(w, l), with the maximizing l.
  ScalarMaximum f_max(double w_tilde, double inner_rate) const;

  /// f_max at w = 0, the right limit of f_max at the origin.
  double f_max_star(double inner_rate) const;

  /// G(w) = H_b(w) - r_i (1 - r_o) + f_max(w).
  GrowthPoint growth_rate(double w_tilde, double inner_rate, double outer_rate) const;

  /// lim_{w -> 0+} G(w) = -r_i (1 - r_o) + f_max_star(r_i).
  double g_zero_plus(double inner_rate, double outer_rate) const;

  /// Typical minimum distance inf{w > 0 : G(w) > 0}. Returns 0 when
  /// g_zero_plus >= 0, which covers both "G never dips below zero" and the
  /// boundary case G(0+) = 0; callers that need to tell them apart should look
  /// at g_zero_plus directly.
  double typical_dmin(double inner_rate, double outer_rate) const;

  /// Samples G on `w_grid` and fills in d_min_typ and g_at_zero_plus.
  GrowthCurve curve(double inner_rate, double outer_rate, std::span<const double> w_grid,
                    unsigned threads = 1) const;

 private:
  struct Node {
    double l_tilde;
    double entropy;
    double log2_p;
    double log2_q;
  };

  Node make_node(double l_tilde) const;
  double evaluate(const Node& node, double w_tilde, double inner_rate) const;

  DegreeDistribution dist_;
  std::vector<Node> grid_;
};

}  // namespace raptorwe
