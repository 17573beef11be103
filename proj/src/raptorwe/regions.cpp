#include "raptorwe/regions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "raptorwe/error.hpp"
#include "raptorwe/numeric.hpp"
#include "raptorwe/parallel.hpp"

namespace raptorwe {

namespace {

void sort_points(RegionCurve& curve) {
  std::stable_sort(curve.points.begin(), curve.points.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
}

double region_margin(const GrowthModel& model, double inner_rate, double outer_rate) {
  return inner_rate * (1.0 - outer_rate) - model.f_max_star(inner_rate);
}

}  // namespace

bool in_positive_region(const GrowthModel& model, double inner_rate, double outer_rate) {
  if (!(outer_rate > 0.0 && outer_rate <= 1.0)) fail(ErrorCode::out_of_range, "outer rate must lie in (0, 1]");
  return region_margin(model, inner_rate, outer_rate) > kMembershipSlack;
}

RegionCurve p_boundary(const GrowthModel& model, std::span<const double> inner_rates, unsigned threads) {
  std::vector<double> boundary(inner_rates.size());
  parallel_for(inner_rates.size(), threads, [&](std::size_t i) {
    boundary[i] = 1.0 - model.f_max_star(inner_rates[i]) / inner_rates[i];
  });
  RegionCurve out{RegionKind::p_boundary, {}, {}};
  for (std::size_t i = 0; i < inner_rates.size(); ++i) {
    if (boundary[i] > 0.0) out.points.emplace_back(inner_rates[i], boundary[i]);
  }
  sort_points(out);
  std::ostringstream meta;
  meta << "p_boundary points=" << inner_rates.size() << " mean_degree=" << model.distribution().mean_degree();
  out.metadata = meta.str();
  return out;
}

double outer_region_phi(double outer_rate, double mean_deg, bool as_printed) {
  if (!(outer_rate > 0.0 && outer_rate <= 1.0)) fail(ErrorCode::out_of_range, "outer rate must lie in (0, 1]");
  if (outer_rate == 1.0) return kPosInf;
  const double numerator = mean_deg * std::log2(outer_rate);
  const double x = 1.0 - outer_rate;
  const double bracket = x - binary_entropy(x);
  if (as_printed) return numerator / -bracket;
  if (bracket >= 0.0) return kPosInf;
  return numerator / bracket;
}

bool in_outer_region(double inner_rate, double outer_rate, double mean_deg, bool as_printed) {
  const double bound = std::min(outer_region_phi(outer_rate, mean_deg, as_printed), 1.0 / outer_rate);
  return inner_rate <= bound + kMembershipSlack;
}

RegionCurve o_boundary(std::span<const double> outer_rates, double mean_deg, bool as_printed) {
  RegionCurve out{RegionKind::o_boundary, {}, {}};
  for (double ro : outer_rates) {
    const double bound = std::min(outer_region_phi(ro, mean_deg, as_printed), 1.0 / ro);
    if (bound > 0.0) out.points.emplace_back(bound, ro);
  }
  sort_points(out);
  std::ostringstream meta;
  meta << "o_boundary points=" << outer_rates.size() << " mean_degree=" << mean_deg
       << " phi=" << (as_printed ? "as-printed" : "corrected");
  out.metadata = meta.str();
  return out;
}

MembershipGrid membership_grid(const GrowthModel& model, std::span<const double> inner_rates,
                               std::span<const double> outer_rates, bool phi_as_printed, unsigned threads) {
  MembershipGrid grid{{inner_rates.begin(), inner_rates.end()},
                      {outer_rates.begin(), outer_rates.end()},
                      std::vector<std::uint8_t>(inner_rates.size() * outer_rates.size(), 0),
                      std::vector<std::uint8_t>(inner_rates.size() * outer_rates.size(), 0)};
  const double mean = model.distribution().mean_degree();
  parallel_for(inner_rates.size(), threads, [&](std::size_t i) {
    const double ri = inner_rates[i];
    const double star = model.f_max_star(ri);
    for (std::size_t j = 0; j < outer_rates.size(); ++j) {
      const double ro = outer_rates[j];
      grid.in_p[grid.index(i, j)] = ri * (1.0 - ro) - star > kMembershipSlack;
      grid.in_o[grid.index(i, j)] = in_outer_region(ri, ro, mean, phi_as_printed);
    }
  });
  return grid;
}

double gv_bound(double delta) {
  if (!(delta >= 0.0 && delta <= 0.5)) fail(ErrorCode::out_of_range, "GV distance must lie in [0, 1/2]");
  return 1.0 - binary_entropy(delta);
}

double gv_delta(double rate) {
  if (!(rate >= 0.0 && rate <= 1.0)) fail(ErrorCode::out_of_range, "rate must lie in [0, 1]");
  if (rate >= 1.0) return 0.0;
  if (rate <= 0.0) return 0.5;
  // 1 - H_b is decreasing on [0, 1/2]; find where it drops below `rate`.
  return bisect_root([rate](double d) { return rate - gv_bound(d); }, 0.0, 0.5, 1e-15);
}

RegionCurve gv_curve(std::span<const double> deltas) {
  RegionCurve out{RegionKind::gv, {}, "gv 1-H_b(delta)"};
  for (double d : deltas) out.points.emplace_back(d, gv_bound(d));
  sort_points(out);
  return out;
}

IsorateScan isorate_scan(const GrowthModel& model, double rate, std::span<const double> outer_rates,
                         unsigned threads) {
  if (!(rate > 0.0 && rate <= 1.0)) fail(ErrorCode::out_of_range, "overall rate must lie in (0, 1]");
  IsorateScan scan;
  scan.rate = rate;
  scan.curve.kind = RegionKind::isorate;

  std::vector<double> feasible;
  for (double ro : outer_rates) {
    if (!(ro > 0.0 && ro <= 1.0)) fail(ErrorCode::out_of_range, "outer rate must lie in (0, 1]");
    if (rate / ro > 1.0 + 1e-12) {
      scan.skipped_outer_rates.push_back(ro);
    } else {
      feasible.push_back(ro);
    }
  }
  std::sort(feasible.begin(), feasible.end());

  auto inner = [rate](double ro) { return std::min(rate / ro, 1.0); };
  std::vector<double> dmin(feasible.size());
  parallel_for(feasible.size(), threads,
               [&](std::size_t i) { dmin[i] = model.typical_dmin(inner(feasible[i]), feasible[i]); });
  for (std::size_t i = 0; i < feasible.size(); ++i) scan.curve.points.emplace_back(feasible[i], dmin[i]);

  for (std::size_t i = feasible.size(); i-- > 0;) {
    if (!in_positive_region(model, inner(feasible[i]), feasible[i])) continue;
    if (i + 1 == feasible.size()) {
      scan.threshold_outer_rate = feasible[i];
    } else {
      auto outside = [&](double ro) { return -region_margin(model, inner(ro), ro); };
      scan.threshold_outer_rate = bisect_root(outside, feasible[i], feasible[i + 1], 1e-9);
    }
    break;
  }

  std::ostringstream meta;
  meta << "isorate r=" << rate << " points=" << feasible.size() << " skipped=" << scan.skipped_outer_rates.size();
  scan.curve.metadata = meta.str();
  return scan;
}

}  // namespace raptorwe
