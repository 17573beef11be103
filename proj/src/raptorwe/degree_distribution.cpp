#include "raptorwe/degree_distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "raptorwe/builtin_distributions.hpp"
#include "raptorwe/error.hpp"

namespace raptorwe {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto* begin = s.data();
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

DegreeDistribution::DegreeDistribution(std::vector<DegreeEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) fail(ErrorCode::invalid_argument, "degree distribution has no entries");

  double raw_sum = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.degree < 1) fail(ErrorCode::invalid_argument, "degree must be >= 1");
    if (i > 0 && e.degree <= entries_[i - 1].degree) {
      fail(ErrorCode::invalid_argument, e.degree == entries_[i - 1].degree
                                            ? "duplicate degree " + std::to_string(e.degree)
                                            : "degrees must be strictly increasing");
    }
    if (!(e.probability > 0.0) || e.probability > 1.0) {
      fail(ErrorCode::out_of_range,
           "probability for degree " + std::to_string(e.degree) + " must lie in (0, 1]");
    }
    raw_sum += e.probability;
  }
  if (std::abs(raw_sum - 1.0) > kNormalizationTolerance) {
    fail(ErrorCode::out_of_range, "probabilities sum to " + std::to_string(raw_sum) + ", not 1");
  }

  cumulative_.reserve(entries_.size());
  double running = 0.0;
  for (auto& e : entries_) {
    e.probability /= raw_sum;
    running += e.probability;
    cumulative_.push_back(running);
    mean_ += static_cast<double>(e.degree) * e.probability;
  }
  cumulative_.back() = 1.0;
}

DegreeDistribution DegreeDistribution::mix(const DegreeDistribution& a, const DegreeDistribution& b,
                                           double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) fail(ErrorCode::out_of_range, "mixing weight must lie in [0, 1]");
  std::map<std::uint32_t, double> merged;
  for (const auto& e : a.entries()) merged[e.degree] += lambda * e.probability;
  for (const auto& e : b.entries()) merged[e.degree] += (1.0 - lambda) * e.probability;
  std::vector<DegreeEntry> out;
  for (const auto& [degree, p] : merged) {
    if (p > 0.0) out.push_back({degree, p});
  }
  return DegreeDistribution(std::move(out));
}

DegreeDistribution parse_distribution(std::string_view text) {
  std::vector<DegreeEntry> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    const auto comma = line.find(',');
    std::uint32_t degree = 0;
    double probability = 0.0;
    if (comma == std::string_view::npos || !parse_number(line.substr(0, comma), degree) ||
        !parse_number(line.substr(comma + 1), probability)) {
      fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": expected `degree,probability`, got `" +
                                 std::string(line) + "`");
    }
    for (const auto& e : entries) {
      if (e.degree == degree) {
        fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": duplicate degree " + std::to_string(degree));
      }
    }
    entries.push_back({degree, probability});
  }
  std::sort(entries.begin(), entries.end(),
            [](const DegreeEntry& x, const DegreeEntry& y) { return x.degree < y.degree; });
  return DegreeDistribution(std::move(entries));
}

DegreeDistribution load_distribution_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open distribution file `" + path + "`");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_distribution(buf.str());
}

DegreeDistribution builtin_distribution(std::string_view name) {
  if (name == "omega1") return parse_distribution(builtin::omega1_csv);
  if (name == "omega2") return parse_distribution(builtin::omega2_csv);
  fail(ErrorCode::invalid_argument, "unknown builtin distribution `" + std::string(name) + "`");
}

DegreeDistribution resolve_distribution(const std::string& name_or_path) {
  if (name_or_path == "omega1" || name_or_path == "omega2") return builtin_distribution(name_or_path);
  return load_distribution_file(name_or_path);
}

}  // namespace raptorwe
