#include "raptorwe/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "raptorwe/error.hpp"
#include "raptorwe/parallel.hpp"

namespace raptorwe {

namespace {

struct ParityPair {
  double p;  // Pr{output bit = 1}
  double q;  // 1 - p, computed without cancellation
};

// For a = min(l, 1 - l), |1 - 2l|^j = (1 - 2a)^j; its complement comes from
// expm1/log1p so neither tail loses digits near l = 0 or l = 1.
ParityPair parity_pair(std::uint32_t j, double lt) {
  const double a = std::min(lt, 1.0 - lt);
  const double jd = static_cast<double>(j);
  const double one_minus_u = a > 0.0 ? -std::expm1(jd * std::log1p(-2.0 * a)) : 0.0;
  const double u = 1.0 - one_minus_u;
  const bool negative = lt > 0.5 && (j % 2 == 1);
  if (negative) return {0.5 * (1.0 + u), 0.5 * one_minus_u};
  return {0.5 * one_minus_u, 0.5 * (1.0 + u)};
}

ParityPair mixture_pair(double lt, const DegreeDistribution& dist) {
  // Exact at 0 and 1/2; summing the renormalized weights can miss by an ulp.
  if (lt == 0.0) return {0.0, 1.0};
  if (lt == 0.5) return {0.5, 0.5};
  ParityPair out{0.0, 0.0};
  for (const auto& e : dist.entries()) {
    const auto pq = parity_pair(e.degree, lt);
    out.p += e.probability * pq.p;
    out.q += e.probability * pq.q;
  }
  out.p = std::clamp(out.p, 0.0, 1.0);
  out.q = std::clamp(out.q, 0.0, 1.0);
  return out;
}

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) fail(ErrorCode::out_of_range, std::string(what) + " must lie in [0, 1]");
}

void check_rate(double r, const char* what) {
  if (!(r > 0.0 && r <= 1.0)) fail(ErrorCode::out_of_range, std::string(what) + " must lie in (0, 1]");
}

}  // namespace

double parity_prob_asym(std::uint32_t j, double lt) {
  check_unit(lt, "normalized weight");
  if (j < 1) fail(ErrorCode::out_of_range, "degree must be >= 1");
  return parity_pair(j, lt).p;
}

double p_asym(double lt, const DegreeDistribution& dist) {
  check_unit(lt, "normalized weight");
  return mixture_pair(lt, dist).p;
}

GrowthModel::GrowthModel(DegreeDistribution dist, std::size_t uniform_points, std::size_t origin_points)
    : dist_(std::move(dist)) {
  if (uniform_points < 2) fail(ErrorCode::invalid_argument, "grid needs at least two points");
  const double spacing = 1.0 / static_cast<double>(uniform_points);

  grid_.reserve(uniform_points + origin_points + 1);
  grid_.push_back(make_node(0.0));
  if (origin_points > 0 && kOriginFloor < spacing) {
    // Stop one step short of the first uniform node.
    auto origin = geometric_grid(kOriginFloor, spacing, origin_points + 1);
    origin.pop_back();
    for (double l : origin) grid_.push_back(make_node(l));
  }
  for (std::size_t i = 1; i <= uniform_points; ++i) {
    grid_.push_back(make_node(static_cast<double>(i) * spacing));
  }
}

GrowthModel::Node GrowthModel::make_node(double l_tilde) const {
  const auto pq = mixture_pair(l_tilde, dist_);
  return {l_tilde, binary_entropy(l_tilde), pq.p > 0.0 ? std::log2(pq.p) : kNegInf,
          pq.q > 0.0 ? std::log2(pq.q) : kNegInf};
}

double GrowthModel::evaluate(const Node& node, double w_tilde, double inner_rate) const {
  double value = inner_rate * node.entropy;
  if (w_tilde > 0.0) {
    if (node.log2_p == kNegInf) return kNegInf;
    value += w_tilde * node.log2_p;
  }
  if (w_tilde < 1.0) {
    if (node.log2_q == kNegInf) return kNegInf;
    value += (1.0 - w_tilde) * node.log2_q;
  }
  return value;
}

double GrowthModel::objective(double w_tilde, double l_tilde, double inner_rate) const {
  check_unit(w_tilde, "normalized output weight");
  check_unit(l_tilde, "normalized input weight");
  return evaluate(make_node(l_tilde), w_tilde, inner_rate);
}

ScalarMaximum GrowthModel::f_max(double w_tilde, double inner_rate) const {
  check_unit(w_tilde, "normalized output weight");
  check_rate(inner_rate, "inner rate");

  std::vector<double> values(grid_.size());
  ScalarMaximum best;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    values[i] = evaluate(grid_[i], w_tilde, inner_rate);
    if (values[i] > best.value) best = {grid_[i].l_tilde, values[i]};
  }
  if (best.value == kNegInf) return best;

  auto f = [&](double l) { return evaluate(make_node(l), w_tilde, inner_rate); };
  const double threshold = best.value - kNearBestSlack;
  const std::size_t last = grid_.size() - 1;
  std::size_t refined = 0;
  for (std::size_t i = 0; i < grid_.size() && refined < 32; ++i) {
    if (!(values[i] >= threshold)) continue;
    std::size_t run_end = i;
    while (run_end < last && values[run_end + 1] >= threshold) ++run_end;
    const double lo = grid_[i == 0 ? 0 : i - 1].l_tilde;
    const double hi = grid_[std::min(run_end + 1, last)].l_tilde;
    const auto local = golden_section_maximize(f, lo, hi, kRefineTolerance);
    if (local.value > best.value) best = local;
    ++refined;
    i = run_end;
  }
  return best;
}

double GrowthModel::f_max_star(double inner_rate) const { return f_max(0.0, inner_rate).value; }

GrowthPoint GrowthModel::growth_rate(double w_tilde, double inner_rate, double outer_rate) const {
  check_rate(outer_rate, "outer rate");
  const auto m = f_max(w_tilde, inner_rate);
  return {w_tilde, binary_entropy(w_tilde) - inner_rate * (1.0 - outer_rate) + m.value, m.argmax};
}

double GrowthModel::g_zero_plus(double inner_rate, double outer_rate) const {
  check_rate(outer_rate, "outer rate");
  return -inner_rate * (1.0 - outer_rate) + f_max_star(inner_rate);
}

double GrowthModel::typical_dmin(double inner_rate, double outer_rate) const {
  const double g0 = g_zero_plus(inner_rate, outer_rate);
  if (g0 >= 0.0) return 0.0;

  auto g = [&](double w) { return w <= 0.0 ? g0 : growth_rate(w, inner_rate, outer_rate).growth; };
  const auto scan = geometric_grid(1e-8, 0.5, 400);
  double previous = 0.0;
  for (double w : scan) {
    if (g(w) > 0.0) return bisect_root(g, previous, w, 1e-8);
    previous = w;
  }
  // G(1/2) = r_i r_o > 0, so the scan always finds a crossing.
  fail(ErrorCode::infeasible, "typical_dmin: no sign change of G on (0, 1/2]");
}

GrowthCurve GrowthModel::curve(double inner_rate, double outer_rate, std::span<const double> w_grid,
                               unsigned threads) const {
  GrowthCurve out;
  out.inner_rate = inner_rate;
  out.outer_rate = outer_rate;
  out.samples.resize(w_grid.size());
  parallel_for(w_grid.size(), threads,
               [&](std::size_t i) { out.samples[i] = growth_rate(w_grid[i], inner_rate, outer_rate); });
  out.g_at_zero_plus = g_zero_plus(inner_rate, outer_rate);
  out.d_min_typ = typical_dmin(inner_rate, outer_rate);
  return out;
}

}  // namespace raptorwe
