// raptorwe: command-line front end over the C API in libraptorwe.
//
// Exit codes: 0 success, 2 validation/config error, 3 statistical check failure.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "raptorwe/raptorwe.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitStatistical = 3;

// Monte-Carlo and law checks need at least this many samples to have power.
constexpr std::uint64_t kMinStatSamples = 100;

// Distribution used by `validate` unless --dist is given.
constexpr const char* kValidationDist = "# validation ensemble\n1,0.3\n2,0.5\n3,0.2\n";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DistDeleter {
  void operator()(rwe_distribution* d) const { rwe_distribution_free(d); }
};
struct ModelDeleter {
  void operator()(rwe_growth_model* m) const { rwe_growth_model_free(m); }
};
using DistPtr = std::unique_ptr<rwe_distribution, DistDeleter>;
using ModelPtr = std::unique_ptr<rwe_growth_model, ModelDeleter>;

void check(rwe_status status) {
  if (status != RWE_OK) throw ConfigError(std::string(rwe_status_string(status)) + ": " + rwe_last_error());
}

struct RunConfig {
  std::string command_line;
  std::string dist = "omega1";
  std::optional<double> inner_rate;
  std::optional<double> outer_rate;
  std::optional<std::uint32_t> n;
  std::string mode = "paper";
  bool phi_as_printed = false;
  std::size_t grid = 400;
  std::string out;
  std::uint64_t seed = 1;
  unsigned threads = 0;

  // validate
  std::uint32_t h = 12;
  std::uint32_t k = 8;
  std::uint64_t samples = 10000;
  std::uint64_t law_trials = 20000;

  // gv
  std::vector<double> outer_rate_set{0.8, 0.9, 0.95, 0.99};
  std::vector<double> rates{0.95};
};

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

json number(double x) {
  if (std::isfinite(x)) return x;
  return fmt(x);
}

double require(const std::optional<double>& v, const char* flag) {
  if (!v) throw ConfigError(std::string("missing required flag ") + flag);
  return *v;
}

DistPtr load_distribution(const std::string& source) {
  rwe_distribution* d = nullptr;
  check(rwe_distribution_resolve(source.c_str(), &d));
  return DistPtr(d);
}

ModelPtr make_model(const rwe_distribution* dist) {
  rwe_growth_model* m = nullptr;
  check(rwe_growth_model_create(dist, 0, &m));
  return ModelPtr(m);
}

json distribution_json(const rwe_distribution* dist, const std::string& source) {
  json entries = json::array();
  for (size_t i = 0; i < rwe_distribution_size(dist); ++i) {
    uint32_t degree = 0;
    double p = 0.0;
    check(rwe_distribution_entry(dist, i, &degree, &p));
    entries.push_back({degree, p});
  }
  return {{"source", source}, {"mean_degree", rwe_distribution_mean_degree(dist)}, {"entries", entries}};
}

json meta_json(const RunConfig& cfg) {
  return {{"tool", "raptorwe"}, {"version", rwe_version()}, {"command", cfg.command_line}, {"seed", cfg.seed}};
}

/// Output sink: a file, or stdout for "" / "-".
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw ConfigError("cannot open output file `" + path + "`");
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void csv_header(std::ostream& os, const RunConfig& cfg, const std::string& columns) {
  os << "# raptorwe " << rwe_version() << " | cmd: " << cfg.command_line << " | seed: " << cfg.seed << '\n';
  os << columns << '\n';
}

std::string with_suffix(const std::string& prefix, const std::string& suffix) {
  return (prefix.empty() || prefix == "-" ? std::string("out") : prefix) + suffix;
}

void write_json(const std::string& path, const json& doc) {
  Sink sink(path);
  sink.os() << doc.dump(2) << '\n';
}

std::vector<double> interior_grid(std::size_t count) {
  // count points i/count for i = 1..count.
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) g[i] = static_cast<double>(i + 1) / static_cast<double>(count);
  return g;
}

// ---- awe -------------------------------------------------------------------

int cmd_awe(const RunConfig& cfg) {
  if (!cfg.n) throw ConfigError("missing required flag --n");
  if (cfg.mode != "paper" && cfg.mode != "exact") throw ConfigError("--mode must be paper or exact");
  const auto dist = load_distribution(cfg.dist);
  rwe_ensemble ens{};
  check(rwe_ensemble_from_rates(*cfg.n, require(cfg.inner_rate, "--ri"), require(cfg.outer_rate, "--ro"), &ens));

  std::vector<double> log2_aw(static_cast<size_t>(ens.n) + 1);
  check(rwe_raptor_awe(&ens, dist.get(), cfg.mode == "exact" ? RWE_MODE_EXACT : RWE_MODE_PAPER, cfg.threads,
                       log2_aw.data(), log2_aw.size()));

  Sink sink(cfg.out);
  auto& os = sink.os();
  os << "# n=" << ens.n << " h=" << ens.h << " k=" << ens.k << " mode=" << cfg.mode << '\n';
  csv_header(os, cfg, "w,log2_Aw");
  for (size_t w = 0; w < log2_aw.size(); ++w) os << w << ',' << fmt(log2_aw[w]) << '\n';
  return kExitOk;
}

// ---- growth / dmin ---------------------------------------------------------

std::vector<double> growth_grid(std::size_t count) {
  // Log-spaced points resolve the near-origin crossing; linear points the rest.
  std::vector<double> g;
  const std::size_t log_points = std::max<std::size_t>(count / 4, 2);
  const double knee = 0.5 / static_cast<double>(count);
  for (std::size_t i = 0; i < log_points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(log_points);
    g.push_back(1e-6 * std::pow(knee / 1e-6, t));
  }
  for (std::size_t i = 1; i <= count; ++i) g.push_back(0.5 * static_cast<double>(i) / static_cast<double>(count));
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

json dmin_summary(const rwe_growth_model* model, double ri, double ro) {
  double dmin = 0.0, g0 = 0.0;
  int in_p = 0;
  check(rwe_typical_dmin(model, ri, ro, &dmin));
  check(rwe_g_zero_plus(model, ri, ro, &g0));
  check(rwe_in_positive_region(model, ri, ro, &in_p));
  const char* regime = g0 < 0.0 ? "positive" : (g0 <= 1e-6 ? "boundary" : "no_crossing");
  return {{"r_i", ri},          {"r_o", ro},          {"r", ri * ro}, {"d_min", dmin},
          {"g_zero_plus", g0}, {"in_positive_region", in_p != 0}, {"regime", regime}};
}

int cmd_growth(const RunConfig& cfg) {
  const double ri = require(cfg.inner_rate, "--ri");
  const double ro = require(cfg.outer_rate, "--ro");
  const auto dist = load_distribution(cfg.dist);
  const auto model = make_model(dist.get());

  const auto grid = growth_grid(cfg.grid);
  std::vector<double> growth(grid.size()), argmax(grid.size());
  double dmin = 0.0, g0 = 0.0;
  check(rwe_growth_curve(model.get(), ri, ro, grid.data(), grid.size(), cfg.threads, growth.data(),
                         argmax.data(), &dmin, &g0));

  {
    Sink sink(cfg.out);
    csv_header(sink.os(), cfg, "w_tilde,G,l_tilde_argmax");
    for (size_t i = 0; i < grid.size(); ++i) {
      sink.os() << fmt(grid[i]) << ',' << fmt(growth[i]) << ',' << fmt(argmax[i]) << '\n';
    }
  }

  json sidecar = {{"_meta", meta_json(cfg)}, {"distribution", distribution_json(dist.get(), cfg.dist)}};
  sidecar["summary"] = dmin_summary(model.get(), ri, ro);
  if (cfg.out.empty() || cfg.out == "-") {
    std::cerr << sidecar.dump(2) << '\n';
  } else {
    write_json(cfg.out + ".json", sidecar);
  }
  return kExitOk;
}

int cmd_dmin(const RunConfig& cfg) {
  const double ri = require(cfg.inner_rate, "--ri");
  const double ro = require(cfg.outer_rate, "--ro");
  const auto dist = load_distribution(cfg.dist);
  const auto model = make_model(dist.get());
  json doc = {{"_meta", meta_json(cfg)}, {"distribution", distribution_json(dist.get(), cfg.dist)}};
  doc["summary"] = dmin_summary(model.get(), ri, ro);
  write_json(cfg.out, doc);
  return kExitOk;
}

// ---- region ----------------------------------------------------------------

int cmd_region(const RunConfig& cfg) {
  if (cfg.grid < 2) throw ConfigError("--grid must be at least 2");
  const auto dist = load_distribution(cfg.dist);
  const auto model = make_model(dist.get());
  const double mean = rwe_distribution_mean_degree(dist.get());
  const auto axis = interior_grid(cfg.grid);

  std::vector<double> ro_star(axis.size());
  check(rwe_p_boundary(model.get(), axis.data(), axis.size(), cfg.threads, ro_star.data()));
  {
    Sink sink(with_suffix(cfg.out, "_p_boundary.csv"));
    csv_header(sink.os(), cfg, "r_i,r_o");
    for (size_t i = 0; i < axis.size(); ++i) {
      if (!std::isnan(ro_star[i])) sink.os() << fmt(axis[i]) << ',' << fmt(ro_star[i]) << '\n';
    }
  }

  auto write_o_boundary = [&](bool as_printed, const std::string& suffix) {
    std::vector<std::pair<double, double>> pts;
    for (double ro : axis) {
      if (ro >= 1.0) continue;
      double phi = 0.0;
      check(rwe_outer_region_phi(ro, mean, as_printed ? 1 : 0, &phi));
      const double bound = std::min(phi, 1.0 / ro);
      if (bound > 0.0) pts.emplace_back(bound, ro);
    }
    std::stable_sort(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.first < b.first; });
    Sink sink(with_suffix(cfg.out, suffix));
    csv_header(sink.os(), cfg, "r_i,r_o");
    for (auto& [ri, ro] : pts) sink.os() << fmt(ri) << ',' << fmt(ro) << '\n';
    return pts.size();
  };
  const auto o_points = write_o_boundary(false, "_o_boundary.csv");
  std::optional<size_t> o_points_printed;
  if (cfg.phi_as_printed) o_points_printed = write_o_boundary(true, "_o_boundary_as_printed.csv");

  const size_t cells = axis.size() * axis.size();
  std::vector<uint8_t> in_p(cells), in_o(cells);
  check(rwe_membership_grid(model.get(), axis.data(), axis.size(), axis.data(), axis.size(),
                            cfg.phi_as_printed ? 1 : 0, cfg.threads, in_p.data(), in_o.data()));
  size_t p_count = 0, o_count = 0, violations = 0;
  {
    Sink sink(with_suffix(cfg.out, "_membership.csv"));
    csv_header(sink.os(), cfg, "r_i,r_o,in_P,in_O");
    for (size_t i = 0; i < axis.size(); ++i) {
      for (size_t j = 0; j < axis.size(); ++j) {
        const size_t c = i * axis.size() + j;
        p_count += in_p[c];
        o_count += in_o[c];
        violations += in_p[c] && !in_o[c];
        sink.os() << fmt(axis[i]) << ',' << fmt(axis[j]) << ',' << int(in_p[c]) << ',' << int(in_o[c]) << '\n';
      }
    }
  }

  json summary = {{"grid", cfg.grid},
                  {"phi", cfg.phi_as_printed ? "as_printed" : "corrected"},
                  {"cells_in_P", p_count},
                  {"cells_in_O", o_count},
                  {"containment_violations", violations},
                  {"o_boundary_points", o_points}};
  if (o_points_printed) summary["o_boundary_as_printed_points"] = *o_points_printed;
  write_json(with_suffix(cfg.out, "_summary.json"),
             {{"_meta", meta_json(cfg)},
              {"distribution", distribution_json(dist.get(), cfg.dist)},
              {"summary", summary}});
  return kExitOk;
}

// ---- gv --------------------------------------------------------------------

int cmd_gv(const RunConfig& cfg) {
  const auto dist = load_distribution(cfg.dist);
  const auto model = make_model(dist.get());

  {
    Sink sink(with_suffix(cfg.out, "_gv.csv"));
    csv_header(sink.os(), cfg, "d_min,r");
    for (size_t i = 0; i <= cfg.grid; ++i) {
      const double delta = 0.5 * static_cast<double>(i) / static_cast<double>(cfg.grid);
      double r = 0.0;
      check(rwe_gv_bound(delta, &r));
      sink.os() << fmt(delta) << ',' << fmt(r) << '\n';
    }
  }

  json warnings = json::array();
  size_t violations = 0;
  {
    // One family per outer rate: sweep the overall rate r = r_i r_o.
    Sink sink(with_suffix(cfg.out, "_isorate.csv"));
    csv_header(sink.os(), cfg, "r_o,d_min,r");
    for (double ro : cfg.outer_rate_set) {
      for (size_t i = 1; i <= cfg.grid; ++i) {
        const double r = ro * static_cast<double>(i) / static_cast<double>(cfg.grid);
        const double ri = r / ro;
        if (ri > 1.0) {
          warnings.push_back("skipped r=" + fmt(r) + " r_o=" + fmt(ro) + " (r/r_o > 1)");
          continue;
        }
        double dmin = 0.0, gv = 0.0;
        check(rwe_typical_dmin(model.get(), ri, ro, &dmin));
        check(rwe_gv_bound(std::min(dmin, 0.5), &gv));
        violations += r > gv + 1e-9;
        sink.os() << fmt(ro) << ',' << fmt(dmin) << ',' << fmt(r) << '\n';
      }
    }
  }

  json thresholds = json::array();
  for (double rate : cfg.rates) {
    std::vector<double> ro_grid;
    for (size_t i = 0; i <= cfg.grid; ++i) {
      ro_grid.push_back(rate + (1.0 - rate) * static_cast<double>(i) / static_cast<double>(cfg.grid));
    }
    std::vector<double> dmin(ro_grid.size());
    double threshold = 0.0;
    check(rwe_isorate_scan(model.get(), rate, ro_grid.data(), ro_grid.size(), cfg.threads, dmin.data(),
                           &threshold));
    thresholds.push_back({{"r", rate}, {"threshold_r_o", number(threshold)}});
  }

  write_json(with_suffix(cfg.out, "_summary.json"),
             {{"_meta", meta_json(cfg)},
              {"distribution", distribution_json(dist.get(), cfg.dist)},
              {"outer_rates", cfg.outer_rate_set},
              {"isorate_thresholds", thresholds},
              {"gv_violations", violations},
              {"warnings", warnings}});
  return kExitOk;
}

// ---- validate --------------------------------------------------------------

int cmd_validate(const RunConfig& cfg, bool dist_given) {
  const auto dist = [&] {
    if (dist_given) return load_distribution(cfg.dist);
    rwe_distribution* d = nullptr;
    check(rwe_distribution_parse(kValidationDist, &d));
    return DistPtr(d);
  }();
  const uint32_t n = cfg.n.value_or(16);
  rwe_ensemble ens{};
  check(rwe_ensemble_from_lengths(n, cfg.h, cfg.k, &ens));
  if (ens.k > 16) throw ConfigError("validate needs k <= 16 for exhaustive enumeration");
  if (ens.h > 24) throw ConfigError("validate needs h <= 24 for brute-force parity enumeration");
  if (rwe_distribution_max_degree(dist.get()) > ens.h) throw ConfigError("a degree exceeds h");

  bool all_pass = true;
  json checks = json::array();

  // Parity probability vs subset enumeration, every (h', j, l) with h' <= h.
  {
    double worst = 0.0;
    for (uint32_t hh = 1; hh <= std::min<uint32_t>(ens.h, 12); ++hh) {
      for (uint32_t j = 1; j <= hh; ++j) {
        for (uint32_t l = 0; l <= hh; ++l) {
          double a = 0.0, b = 0.0;
          check(rwe_parity_prob(j, l, hh, &a));
          check(rwe_parity_prob_bruteforce(j, l, hh, &b));
          worst = std::max(worst, std::abs(a - b));
        }
      }
    }
    const bool pass = worst <= 1e-12;
    all_pass &= pass;
    checks.push_back({{"name", "parity_bruteforce"}, {"max_abs_error", worst}, {"tolerance", 1e-12},
                      {"status", pass ? "pass" : "fail"}});
  }

  const bool powered = cfg.samples >= kMinStatSamples;

  // Monte-Carlo spectrum vs exact-mode analytic spectrum.
  if (powered) {
    std::vector<double> log2_aw(n + 1), mean(n + 1), se(n + 1);
    check(rwe_raptor_awe(&ens, dist.get(), RWE_MODE_EXACT, cfg.threads, log2_aw.data(), log2_aw.size()));
    check(rwe_estimate_spectrum(&ens, dist.get(), cfg.samples, cfg.seed, cfg.threads, mean.data(), se.data(),
                                mean.size()));
    double max_z = 0.0;
    size_t outside_3sigma = 0;
    json bins = json::array();
    for (uint32_t w = 0; w <= n; ++w) {
      const double analytic = std::exp2(log2_aw[w]);
      const double z = se[w] > 0.0 ? std::abs(mean[w] - analytic) / se[w] : 0.0;
      if (se[w] > 0.0) max_z = std::max(max_z, z);
      if (mean[w] >= 1.0 && z > 3.0) ++outside_3sigma;
      bins.push_back({{"w", w}, {"analytic", analytic}, {"mean", mean[w]}, {"std_err", se[w]}, {"z", z}});
    }
    const bool pass = outside_3sigma == 0 && max_z <= 4.0;
    all_pass &= pass;
    checks.push_back({{"name", "monte_carlo_spectrum"}, {"samples", cfg.samples}, {"max_z", max_z},
                      {"bins_outside_3sigma", outside_3sigma}, {"z_limit", 4.0},
                      {"status", pass ? "pass" : "fail"}, {"bins", bins}});
  } else {
    all_pass = false;
    checks.push_back({{"name", "monte_carlo_spectrum"}, {"samples", cfg.samples},
                      {"status", "insufficient_power"}, {"min_samples", kMinStatSamples}});
  }

  // LT output weight given input weight l against Binomial(n, p_l).
  if (powered) {
    json laws = json::array();
    bool pass = true;
    for (uint32_t l : {1U, ens.h / 3, ens.h / 2, ens.h}) {
      if (l == 0) continue;
      double p = 0.0, chi2 = 0.0, pv = 0.0;
      uint32_t dof = 0;
      check(rwe_lt_weight_law_check(ens.h, n, l, dist.get(), cfg.law_trials, cfg.seed + l, &p, &chi2, &dof, &pv));
      pass &= pv >= 1e-3;
      laws.push_back({{"l", l}, {"p_l", p}, {"chi_square", chi2}, {"dof", dof}, {"p_value", pv}});
    }
    all_pass &= pass;
    checks.push_back({{"name", "lt_binomial_law"}, {"trials", cfg.law_trials}, {"significance", 1e-3},
                      {"status", pass ? "pass" : "fail"}, {"cases", laws}});
  } else {
    checks.push_back({{"name", "lt_binomial_law"}, {"status", "insufficient_power"}});
  }

  json report = {{"_meta", meta_json(cfg)},
                 {"ensemble", {{"n", ens.n}, {"h", ens.h}, {"k", ens.k}}},
                 {"distribution", distribution_json(dist.get(), dist_given ? cfg.dist : "validation")},
                 {"checks", checks},
                 {"result", all_pass ? "pass" : "fail"}};
  write_json(cfg.out, report);
  return all_pass ? kExitOk : kExitStatistical;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--dist", cfg.dist, "Degree distribution: omega1, omega2, or a file path");
  sub->add_option("--ri", cfg.inner_rate, "Inner LT rate r_i in (0,1]");
  sub->add_option("--ro", cfg.outer_rate, "Outer precode rate r_o in (0,1]");
  sub->add_option("--n", cfg.n, "Codeword length n");
  sub->add_option("--mode", cfg.mode, "Spectrum mode: paper or exact")->check(CLI::IsMember({"paper", "exact"}));
  sub->add_flag("--phi-as-printed", cfg.phi_as_printed, "Also evaluate the outer bound with the printed sign");
  sub->add_option("--grid", cfg.grid, "Grid size");
  sub->add_option("--out", cfg.out, "Output file (or prefix for multi-file commands); '-' is stdout");
  sub->add_option("--seed", cfg.seed, "RNG seed");
  sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
}

void check_rates(const RunConfig& cfg) {
  for (const auto& r : {cfg.inner_rate, cfg.outer_rate}) {
    if (r && !(*r > 0.0 && *r <= 1.0)) throw ConfigError("rates must lie in (0, 1]");
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  for (int i = 0; i < argc; ++i) cfg.command_line += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"Weight distribution analysis of fixed-rate Raptor code ensembles"};
  app.set_version_flag("--version", std::string(rwe_version()));
  app.require_subcommand(1);

  auto* awe = app.add_subcommand("awe", "Finite-length ensemble-average weight enumerator (CSV w,log2_Aw)");
  auto* growth = app.add_subcommand("growth", "Growth rate G(w) curve (CSV) with d_min sidecar (JSON)");
  auto* dmin = app.add_subcommand("dmin", "Typical minimum distance and G(0+) for one rate pair (JSON)");
  auto* region = app.add_subcommand("region", "Positive-d_min region boundary, outer bound, membership grid");
  auto* gv = app.add_subcommand("gv", "Gilbert-Varshamov line, isorate families and r_o thresholds");
  auto* validate = app.add_subcommand("validate", "Run the brute-force and Monte-Carlo oracle checks");
  for (auto* sub : {awe, growth, dmin, region, gv, validate}) add_common(sub, cfg);

  gv->add_option("--ro-set", cfg.outer_rate_set, "Outer rates of the isorate families")->delimiter(',');
  gv->add_option("--rates", cfg.rates, "Overall rates for the r_o threshold scan")->delimiter(',');
  validate->add_option("--h-len", cfg.h, "Intermediate length h");
  validate->add_option("--k-len", cfg.k, "Source length k");
  validate->add_option("--samples", cfg.samples, "Monte-Carlo realizations");
  validate->add_option("--law-trials", cfg.law_trials, "Trials per binomial-law check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    check_rates(cfg);
    if (*awe) return cmd_awe(cfg);
    if (*growth) return cmd_growth(cfg);
    if (*dmin) return cmd_dmin(cfg);
    if (*region) return cmd_region(cfg);
    if (*gv) return cmd_gv(cfg);
    if (*validate) return cmd_validate(cfg, validate->count("--dist") > 0);
  } catch (const ConfigError& e) {
    std::cerr << "raptorwe: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "raptorwe: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
