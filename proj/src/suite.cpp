#include "gplab/suite.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <thread>

#include <json.hpp>

namespace gplab {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || end != t.data() + t.size() || t.empty() || !std::isfinite(value)) {
    throw ConfigError(where + ": '" + t + "' is not a finite number");
  }
  return value;
}

std::uint64_t parse_unsigned(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || end != t.data() + t.size() || t.empty()) {
    throw ConfigError(where + ": '" + t + "' is not a nonnegative integer");
  }
  return value;
}

}  // namespace

bool ExperimentResult::passed() const {
  for (const auto& a : assertions) {
    if (!a.passed) return false;
  }
  return true;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"identities", "conservation", "transport",
                                              "stability",  "emin",         "comlaw",
                                              "winding",    "dips"};
  return names;
}

const std::map<std::string, std::map<std::string, std::string>>& experiment_defaults() {
  static const std::map<std::string, std::map<std::string, std::string>> defaults{
      {"identities",
       {{"L", "40"}, {"N", "4096"}, {"speeds", "0, 0.5, 1, 1.3"}, {"tol", "1e-8"},
        {"slope_speeds", "0.3, 0.7, 1.2"}, {"slope_step", "1e-4"}, {"slope_tol", "1e-6"},
        {"max_seconds", "5"}}},
      {"conservation",
       {{"L", "60"}, {"N", "2048"}, {"dt", "1e-3"}, {"T", "20"}, {"eps", "0.05"}, {"A", "10"},
        {"seed", "1"}, {"log_every", "100"}, {"R", "10"}, {"energy_tol", "1e-6"},
        {"momentum_tol", "1e-6"}, {"mass_tol", "1e-5"}, {"max_seconds", "120"}}},
      {"transport",
       {{"L", "60"}, {"N", "2048"}, {"c", "0.5"}, {"T", "10"}, {"dt", "1e-3"}, {"A", "10"},
        {"tol", "1e-4"}, {"order_dt", "4e-3"}, {"min_order", "1.9"}}},
      {"stability",
       {{"L", "60"}, {"N", "2048"}, {"dt", "1e-3"}, {"T", "50"}, {"eps", "0.01, 0.02, 0.05"},
        {"A", "10"}, {"seed", "1"}, {"log_every", "500"}, {"R", "10"},
        {"residual_factor", "10"}, {"K_max", "10"}, {"initial_factor", "1.1"},
        {"zero_T", "20"}, {"zero_tol", "1e-6"}, {"zero_shift_tol", "1e-4"},
        {"max_seconds", "600"}}},
      {"emin",
       {{"L", "40"}, {"N", "1024"}, {"p", "0.3, 0.6, 0.9, 1.2"}, {"init_offset", "0.1"},
        {"energy_rel_tol", "0.005"}, {"multiplier_rel_tol", "0.02"},
        {"concavity_tol", "1e-6"}, {"line_tol", "1e-6"}, {"pinned_energy_tol", "0.005"},
        {"pinned_distance_tol", "1e-2"}, {"pinned_A", "10"}, {"max_seconds", "300"}}},
      {"comlaw",
       {{"L", "60"}, {"N", "2048"}, {"c", "0.5"}, {"dt", "1e-3"}, {"T", "2"},
        {"log_every", "10"}, {"R", "20"}, {"wave_tol", "1e-6"}, {"eps", "0.05"}, {"A", "10"},
        {"seed", "1"}, {"kink_R", "10"}, {"min_ratio", "3.5"}}},
      {"winding",
       {{"samples", "20"}, {"seed", "7"}, {"resolution", "4096"}, {"momentum_tol", "1e-8"}}},
      {"dips",
       {{"L", "40"}, {"N", "4096"}, {"delta0", "0.5"}, {"fields", "50"}, {"seed", "11"},
        {"pointwise_tol", "1e-8"}, {"min_modulus_tol", "1e-6"}}},
  };
  return defaults;
}

Params::Params(const std::string& experiment, const std::map<std::string, std::string>& overrides)
    : experiment_(experiment) {
  const auto& all = experiment_defaults();
  const auto it = all.find(experiment);
  if (it == all.end()) throw ConfigError("unknown experiment '" + experiment + "'");
  values_ = it->second;
  for (const auto& [key, value] : overrides) set(key, value);
}

void Params::set(const std::string& key, const std::string& value) {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError("experiment '" + experiment_ + "' has no setting '" + key + "'");
  }
  it->second = value;
  // validate eagerly so that malformed values surface before anything runs
  const std::string& defaults = experiment_defaults().at(experiment_).at(key);
  if (defaults.find(',') != std::string::npos) {
    (void)reals(key);
  } else if (key == "N" || key == "seed" || key == "log_every" || key == "samples" ||
             key == "resolution" || key == "fields") {
    const auto n = parse_unsigned(value, experiment_ + "." + key);
    if (key == "N" && (n < 8 || (n & (n - 1)) != 0)) {
      throw ConfigError(experiment_ + ".N: grid size must be a power of two >= 8");
    }
  } else if (key == "L" && !(real(key) > 0.0)) {
    throw ConfigError(experiment_ + ".L: half length must be positive");
  } else {
    (void)real(key);
  }
}

const std::string& Params::raw(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError("experiment '" + experiment_ + "' has no setting '" + key + "'");
  }
  return it->second;
}

double Params::real(const std::string& key) const {
  return parse_real(raw(key), experiment_ + "." + key);
}

std::size_t Params::count(const std::string& key) const {
  return static_cast<std::size_t>(parse_unsigned(raw(key), experiment_ + "." + key));
}

std::uint64_t Params::seed(const std::string& key) const {
  return parse_unsigned(raw(key), experiment_ + "." + key);
}

std::vector<double> Params::reals(const std::string& key) const {
  std::vector<double> out;
  const std::string& text = raw(key);
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (trim(piece).empty()) {
      if (comma == std::string::npos && out.empty() && trim(text).empty()) break;  // empty list
      throw ConfigError(experiment_ + "." + key + ": empty list entry");
    }
    out.push_back(parse_real(piece, experiment_ + "." + key));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<ExperimentSection> parse_suite_config(std::istream& in) {
  std::vector<ExperimentSection> sections;
  std::string line;
  std::size_t number = 0;
  const auto fail = [&number](const std::string& message) {
    throw ConfigError("config line " + std::to_string(number) + ": " + message);
  };
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') fail("unterminated section header");
      const std::string name = trim(t.substr(1, t.size() - 2));
      if (!experiment_defaults().contains(name)) fail("unknown experiment '" + name + "'");
      for (const auto& s : sections) {
        if (s.name == name) fail("experiment '" + name + "' listed twice");
      }
      sections.push_back(ExperimentSection{name, {}});
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    if (sections.empty()) fail("setting outside of an experiment section");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) fail("empty key");
    auto& values = sections.back().values;
    if (values.contains(key)) fail("setting '" + key + "' repeated");
    try {
      Params(sections.back().name, {{key, value}});
    } catch (const ConfigError& e) {
      fail(e.what());
    }
    values[key] = value;
  }
  return sections;
}

void write_summary(std::ostream& out, const std::vector<ExperimentResult>& results) {
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& r : results) {
    for (const auto& a : r.assertions) {
      summary.push_back({{"name", a.name},
                         {"passed", a.passed},
                         {"measured", a.measured},
                         {"threshold", a.threshold}});
    }
  }
  out << summary.dump(2) << '\n';
}

int run_suite(const std::filesystem::path& config, const std::filesystem::path& out_dir,
              std::ostream& log) {
  std::vector<ExperimentSection> sections;
  std::vector<Params> params;
  try {
    std::ifstream in(config);
    if (!in) throw ConfigError("cannot read config file " + config.string());
    sections = parse_suite_config(in);
    for (const auto& s : sections) params.emplace_back(s.name, s.values);
  } catch (const ConfigError& e) {
    log << "malformed config: " << e.what() << '\n';
    return kSuiteMalformed;
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    log << "cannot create output directory " << out_dir << ": " << ec.message() << '\n';
    return kSuiteFailed;
  }

  // Workers claim experiments by index; results land in their own slots.
  std::vector<ExperimentResult> results(params.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < params.size(); k = next++) {
      results[k] = run_experiment(params[k], out_dir);
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), params.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  bool all_passed = true;
  for (const auto& r : results) {
    for (const auto& a : r.assertions) {
      log << (a.passed ? "PASS " : "FAIL ") << a.name << "  measured=" << a.measured
          << "  threshold=" << a.threshold << '\n';
    }
    all_passed = all_passed && r.passed();
  }
  std::ofstream summary(out_dir / "summary.json");
  if (!summary) {
    log << "cannot write summary.json\n";
    return kSuiteFailed;
  }
  write_summary(summary, results);
  return all_passed ? kSuitePassed : kSuiteFailed;
}

}  // namespace gplab
