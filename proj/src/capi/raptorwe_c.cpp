#include "raptorwe/raptorwe.h"

#include <cmath>
#include <exception>
#include <limits>
#include <new>
#include <optional>
#include <string>

#include "raptorwe/asymptotic.hpp"
#include "raptorwe/degree_distribution.hpp"
#include "raptorwe/ensemble.hpp"
#include "raptorwe/ensemble_oracle.hpp"
#include "raptorwe/error.hpp"
#include "raptorwe/exact_spectrum.hpp"
#include "raptorwe/regions.hpp"

struct rwe_distribution {
  raptorwe::DegreeDistribution dist;
};

struct rwe_growth_model {
  raptorwe::GrowthModel model;
};

namespace {

thread_local std::string g_last_error;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

rwe_status to_status(raptorwe::ErrorCode code) {
  switch (code) {
    case raptorwe::ErrorCode::invalid_argument: return RWE_ERR_INVALID_ARGUMENT;
    case raptorwe::ErrorCode::parse: return RWE_ERR_PARSE;
    case raptorwe::ErrorCode::out_of_range: return RWE_ERR_OUT_OF_RANGE;
    case raptorwe::ErrorCode::infeasible: return RWE_ERR_INFEASIBLE;
    case raptorwe::ErrorCode::io: return RWE_ERR_IO;
  }
  return RWE_ERR_INTERNAL;
}

rwe_status set_error(rwe_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
rwe_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return RWE_OK;
  } catch (const raptorwe::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(RWE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(RWE_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(RWE_ERR_INTERNAL, "unknown error");
  }
}

#define RWE_REQUIRE(cond)                                                                   \
  do {                                                                                      \
    if (!(cond)) return set_error(RWE_ERR_INVALID_ARGUMENT, "null or invalid argument: " #cond); \
  } while (0)

raptorwe::EnsembleParams unwrap(const rwe_ensemble* e) {
  return raptorwe::EnsembleParams::from_lengths(e->n, e->h, e->k);
}

raptorwe::SpectrumMode unwrap(rwe_mode mode) {
  if (mode == RWE_MODE_EXACT) return raptorwe::SpectrumMode::exact;
  if (mode == RWE_MODE_PAPER) return raptorwe::SpectrumMode::paper;
  raptorwe::fail(raptorwe::ErrorCode::invalid_argument, "unknown spectrum mode");
}

rwe_ensemble wrap(const raptorwe::EnsembleParams& p) { return {p.n(), p.h(), p.k()}; }

template <typename Make>
rwe_status make_distribution(rwe_distribution** out, Make&& make) {
  RWE_REQUIRE(out != nullptr);
  *out = nullptr;
  return guarded([&] { *out = new rwe_distribution{make()}; });
}

}  // namespace

extern "C" {

const char* rwe_version(void) { return RAPTORWE_VERSION; }

const char* rwe_last_error(void) { return g_last_error.c_str(); }

const char* rwe_status_string(rwe_status status) {
  switch (status) {
    case RWE_OK: return "ok";
    case RWE_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RWE_ERR_PARSE: return "parse error";
    case RWE_ERR_OUT_OF_RANGE: return "out of range";
    case RWE_ERR_INFEASIBLE: return "infeasible size";
    case RWE_ERR_IO: return "i/o error";
    case RWE_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

rwe_status rwe_distribution_parse(const char* text, rwe_distribution** out) {
  RWE_REQUIRE(text != nullptr);
  return make_distribution(out, [&] { return raptorwe::parse_distribution(text); });
}

rwe_status rwe_distribution_load(const char* path, rwe_distribution** out) {
  RWE_REQUIRE(path != nullptr);
  return make_distribution(out, [&] { return raptorwe::load_distribution_file(path); });
}

rwe_status rwe_distribution_builtin(const char* name, rwe_distribution** out) {
  RWE_REQUIRE(name != nullptr);
  return make_distribution(out, [&] { return raptorwe::builtin_distribution(name); });
}

rwe_status rwe_distribution_resolve(const char* name_or_path, rwe_distribution** out) {
  RWE_REQUIRE(name_or_path != nullptr);
  return make_distribution(out, [&] { return raptorwe::resolve_distribution(name_or_path); });
}

void rwe_distribution_free(rwe_distribution* dist) { delete dist; }

size_t rwe_distribution_size(const rwe_distribution* dist) { return dist ? dist->dist.size() : 0; }

rwe_status rwe_distribution_entry(const rwe_distribution* dist, size_t index, uint32_t* degree,
                                  double* probability) {
  RWE_REQUIRE(dist != nullptr);
  if (index >= dist->dist.size()) return set_error(RWE_ERR_OUT_OF_RANGE, "distribution entry index out of range");
  const auto& e = dist->dist.entries()[index];
  if (degree) *degree = e.degree;
  if (probability) *probability = e.probability;
  return RWE_OK;
}

uint32_t rwe_distribution_max_degree(const rwe_distribution* dist) { return dist ? dist->dist.max_degree() : 0; }

double rwe_distribution_mean_degree(const rwe_distribution* dist) {
  return dist ? dist->dist.mean_degree() : kNaN;
}

rwe_status rwe_ensemble_from_rates(uint32_t n, double inner_rate, double outer_rate, rwe_ensemble* out) {
  RWE_REQUIRE(out != nullptr);
  return guarded([&] { *out = wrap(raptorwe::EnsembleParams::from_rates(n, inner_rate, outer_rate)); });
}

rwe_status rwe_ensemble_from_lengths(uint32_t n, uint32_t h, uint32_t k, rwe_ensemble* out) {
  RWE_REQUIRE(out != nullptr);
  return guarded([&] { *out = wrap(raptorwe::EnsembleParams::from_lengths(n, h, k)); });
}

double rwe_log2_binomial(uint64_t m, uint64_t t) { return raptorwe::log2_binomial(m, t); }

rwe_status rwe_parity_prob(uint32_t j, uint32_t l, uint32_t h, double* out) {
  RWE_REQUIRE(out != nullptr);
  return guarded([&] { *out = raptorwe::parity_prob(j, l, h); });
}

rwe_status rwe_output_bit_prob(uint32_t l, uint32_t h, const rwe_distribution* dist, double* out) {
  RWE_REQUIRE(dist != nullptr && out != nullptr);
  return guarded([&] { *out = raptorwe::output_bit_prob(l, h, dist->dist); });
}

rwe_status rwe_lt_iowe_log(uint32_t l, uint32_t w, const rwe_ensemble* ensemble, const rwe_distribution* dist,
                           double* out) {
  RWE_REQUIRE(ensemble != nullptr && dist != nullptr && out != nullptr);
  return guarded([&] { *out = raptorwe::lt_iowe_log(l, w, unwrap(ensemble), dist->dist); });
}

rwe_status rwe_outer_we_log(uint32_t l, const rwe_ensemble* ensemble, rwe_mode mode, double* out) {
  RWE_REQUIRE(ensemble != nullptr && out != nullptr);
  return guarded([&] { *out = raptorwe::outer_we_log(l, unwrap(ensemble), unwrap(mode)); });
}

rwe_status rwe_raptor_awe(const rwe_ensemble* ensemble, const rwe_distribution* dist, rwe_mode mode,
                          unsigned threads, double* log2_aw, size_t len) {
  RWE_REQUIRE(ensemble != nullptr && dist != nullptr && log2_aw != nullptr);
  if (len < static_cast<size_t>(ensemble->n) + 1) {
    return set_error(RWE_ERR_INVALID_ARGUMENT, "output buffer shorter than n + 1");
  }
  return guarded([&] {
    const auto spectrum = raptorwe::raptor_awe(unwrap(ensemble), dist->dist, unwrap(mode), threads);
    std::copy(spectrum.log2_aw.begin(), spectrum.log2_aw.end(), log2_aw);
  });
}

rwe_status rwe_binary_entropy(double x, double* out) {
  RWE_REQUIRE(out != nullptr);
  return guarded([&] { *out = raptorwe::binary_entropy(x); });
}

rwe_status rwe_parity_prob_asym(uint32_t j, double l_tilde, double* out) {
  RWE_REQUIRE(out != nullptr);
  return guarded([&] { *out = raptorwe::parity_prob_asym(j, l_tilde); });
}

rwe_status rwe_p_asym(double l_tilde, const rwe_distribution* dist, double* out) {
  RWE_REQUIRE(dist != nullptr && out != nullptr);
  return guarded([&] { *out = raptorwe::p_asym(l_tilde, dist->dist); });
}

rwe_status rwe_growth_model_create(const rwe_distribution* dist, size_t grid_points, rwe_growth_model** out) {
  RWE_REQUIRE(dist != nullptr && out != nullptr);
  *out = nullptr;
  return guarded([&] {
    const size_t points = grid_points == 0 ? raptorwe::GrowthModel::kDefaultUniformPoints : grid_points;
    *out = new rwe_growth_model{raptorwe::GrowthModel(dist->dist, points)};
  });
}

void rwe_growth_model_free(rwe_growth_model* model) { delete model; }

rwe_status rwe_objective(const rwe_growth_model* model, double w_tilde, double l_tilde, double inner_rate,
                         double* out) {
  RWE_REQUIRE(model != nullptr && out != nullptr);
  return guarded([&] { *out = model->model.objective(w_tilde, l_tilde, inner_rate); });
}

rwe_status rwe_f_max(const rwe_growth_model* model, double w_tilde, double inner_rate, double* value,
                     double* argmax) {
  RWE_REQUIRE(model != nullptr);
  return guarded([&] {
    const auto m = model->model.f_max(w_tilde, inner_rate);
    if (value) *value = m.value;
    if (argmax) *argmax = m.argmax;
  });
}

rwe_status rwe_f_max_star(const rwe_growth_model* model, double inner_rate, double* out) {
  RWE_REQUIRE(model != nullptr && out != nullptr);
  return guarded([&] { *out = model->model.f_max_star(inner_rate); });
}

rwe_status rwe_growth_rate(const rwe_growth_model* model, double w_tilde, double inner_rate, double outer_rate,
                           double* growth, double* l_tilde_argmax) {
  RWE_REQUIRE(model != nullptr);
  return guarded([&] {
    const auto g = model->model.growth_rate(w_tilde, inner_rate, outer_rate);
    if (growth) *growth = g.growth;
    if (l_tilde_argmax) *l_tilde_argmax = g.l_tilde_argmax;
  });
}

rwe_status rwe_g_zero_plus(const rwe_growth_model* model, double inner_rate, double outer_rate, double* out) {
  RWE_REQUIRE(model != nullptr && out != nullptr);
  return guarded([&] { *out = model->model.g_zero_plus(inner_rate, outer_rate); });
}

rwe_status rwe_typical_dmin(const rwe_growth_model* model, double inner_rate, double outer_rate, double* out) {
  RWE_REQUIRE(model != nullptr && out != nullptr);
  return guarded([&] { *out = model->model.typical_dmin(inner_rate, outer_rate); });
}

rwe_status rwe_growth_curve(const rwe_growth_model* model, double inner_rate, double outer_rate,
                            const double* w_tilde, size_t count, unsigned threads, double* growth,
                            double* l_tilde_argmax, double* d_min, double* g_zero_plus) {
  RWE_REQUIRE(model != nullptr && (count == 0 || (w_tilde != nullptr && growth != nullptr)));
  return guarded([&] {
    const auto curve = model->model.curve(inner_rate, outer_rate, {w_tilde, count}, threads);
    for (size_t i = 0; i < count; ++i) {
      growth[i] = curve.samples[i].growth;
      if (l_tilde_argmax) l_tilde_argmax[i] = curve.samples[i].l_tilde_argmax;
    }
    if (d_min) *d_min = curve.d_min_typ;
    if (g_zero_plus) *g_zero_plus = curve.g_at_zero_plus;
  });
}

rwe_status rwe_in_positive_region(const rwe_growth_model* model, double inner_rate, double outer_rate, int* out) {
  RWE_REQUIRE(model != nullptr && out != nullptr);
  return guarded([&] { *out = raptorwe::in_positive_region(model->model, inner_rate, outer_rate) ? 1 : 0; });
}

rwe_status rwe_p_boundary(const rwe_growth_model* model, const double* inner_rates, size_t count, unsigned threads,
                          double* outer_rate_star) {
  RWE_REQUIRE(model != nullptr && (count == 0 || (inner_rates != nullptr && outer_rate_star != nullptr)));
  return guarded([&] {
    const auto curve = raptorwe::p_boundary(model->model, {inner_rates, count}, threads);
    // The curve drops r_o* <= 0; map kept points back onto the caller's grid.
    for (size_t i = 0; i < count; ++i) outer_rate_star[i] = kNaN;
    for (const auto& [ri, ro] : curve.points) {
      for (size_t i = 0; i < count; ++i) {
        if (inner_rates[i] == ri) outer_rate_star[i] = ro;
      }
    }
  });
}

rwe_status rwe_outer_region_phi(double outer_rate, double mean_degree, int as_printed, double* out) {
  RWE_REQUIRE(out != nullptr);
  return guarded([&] { *out = raptorwe::outer_region_phi(outer_rate, mean_degree, as_printed != 0); });
}

rwe_status rwe_in_outer_region(double inner_rate, double outer_rate, double mean_degree, int as_printed,
                               int* out) {
  RWE_REQUIRE(out != nullptr);
  return guarded(
      [&] { *out = raptorwe::in_outer_region(inner_rate, outer_rate, mean_degree, as_printed != 0) ? 1 : 0; });
}

rwe_status rwe_membership_grid(const rwe_growth_model* model, const double* inner_rates, size_t n_inner,
                               const double* outer_rates, size_t n_outer, int phi_as_printed, unsigned threads,
                               uint8_t* in_p, uint8_t* in_o) {
  RWE_REQUIRE(model != nullptr);
  RWE_REQUIRE(n_inner * n_outer == 0 ||
              (inner_rates != nullptr && outer_rates != nullptr && in_p != nullptr && in_o != nullptr));
  return guarded([&] {
    const auto grid = raptorwe::membership_grid(model->model, {inner_rates, n_inner}, {outer_rates, n_outer},
                                                phi_as_printed != 0, threads);
    std::copy(grid.in_p.begin(), grid.in_p.end(), in_p);
    std::copy(grid.in_o.begin(), grid.in_o.end(), in_o);
  });
}

rwe_status rwe_gv_bound(double delta, double* out) {
  RWE_REQUIRE(out != nullptr);
  return guarded([&] { *out = raptorwe::gv_bound(delta); });
}

rwe_status rwe_gv_delta(double rate, double* out) {
  RWE_REQUIRE(out != nullptr);
  return guarded([&] { *out = raptorwe::gv_delta(rate); });
}

rwe_status rwe_isorate_scan(const rwe_growth_model* model, double rate, const double* outer_rates, size_t count,
                            unsigned threads, double* d_min, double* threshold) {
  RWE_REQUIRE(model != nullptr && (count == 0 || (outer_rates != nullptr && d_min != nullptr)));
  return guarded([&] {
    const auto scan = raptorwe::isorate_scan(model->model, rate, {outer_rates, count}, threads);
    for (size_t i = 0; i < count; ++i) d_min[i] = kNaN;
    for (const auto& [ro, dm] : scan.curve.points) {
      for (size_t i = 0; i < count; ++i) {
        if (outer_rates[i] == ro) d_min[i] = dm;
      }
    }
    if (threshold) *threshold = scan.threshold_outer_rate.value_or(kNaN);
  });
}

rwe_status rwe_parity_prob_bruteforce(uint32_t j, uint32_t l, uint32_t h, double* out) {
  RWE_REQUIRE(out != nullptr);
  return guarded([&] { *out = raptorwe::parity_prob_bruteforce(j, l, h); });
}

rwe_status rwe_estimate_spectrum(const rwe_ensemble* ensemble, const rwe_distribution* dist, uint64_t samples,
                                 uint64_t seed, unsigned threads, double* mean_aw, double* std_err, size_t len) {
  RWE_REQUIRE(ensemble != nullptr && dist != nullptr && mean_aw != nullptr && std_err != nullptr);
  if (len < static_cast<size_t>(ensemble->n) + 1) {
    return set_error(RWE_ERR_INVALID_ARGUMENT, "output buffer shorter than n + 1");
  }
  return guarded([&] {
    const auto est = raptorwe::estimate_average_spectrum(unwrap(ensemble), dist->dist, samples, seed, threads);
    std::copy(est.mean_aw.begin(), est.mean_aw.end(), mean_aw);
    std::copy(est.std_err.begin(), est.std_err.end(), std_err);
  });
}

rwe_status rwe_lt_weight_law_check(uint32_t h, uint32_t n, uint32_t l, const rwe_distribution* dist,
                                   uint64_t trials, uint64_t seed, double* p_l, double* chi_square,
                                   uint32_t* degrees_of_freedom, double* p_value) {
  RWE_REQUIRE(dist != nullptr);
  return guarded([&] {
    const double p = raptorwe::output_bit_prob(l, h, dist->dist);
    const auto check = raptorwe::lt_weight_law_check(h, n, l, p, dist->dist, trials, seed);
    if (p_l) *p_l = p;
    if (chi_square) *chi_square = check.chi_square;
    if (degrees_of_freedom) *degrees_of_freedom = check.degrees_of_freedom;
    if (p_value) *p_value = check.p_value;
  });
}

}  // extern "C"
