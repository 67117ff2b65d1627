#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gplab {

/// One checked claim: passed iff the measured value respects the threshold.
struct Assertion {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  int criterion = 0;  ///< acceptance criterion number, 0 if none
};

struct ExperimentResult {
  std::string name;
  std::vector<Assertion> assertions;
  bool passed() const;
};

/// Malformed configuration: unknown section or key, bad value, syntax error.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Typed view of one experiment's settings over its documented defaults.
class Params {
 public:
  /// Throws ConfigError for an unknown experiment or key, or an unparsable value.
  Params(const std::string& experiment, const std::map<std::string, std::string>& overrides = {});

  const std::string& experiment() const { return experiment_; }
  double real(const std::string& key) const;
  std::size_t count(const std::string& key) const;
  std::uint64_t seed(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

 private:
  const std::string& raw(const std::string& key) const;
  std::string experiment_;
  std::map<std::string, std::string> values_;
};

/// Experiment names in canonical order.
const std::vector<std::string>& experiment_names();

/// Every experiment's keys with their default values (as text).
const std::map<std::string, std::map<std::string, std::string>>& experiment_defaults();

/// Runs one experiment. When `out_dir` is given its CSV outputs are written there.
/// Exceptions raised by the numerics become a failed `<name>/error` assertion.
ExperimentResult run_experiment(const Params& params,
                                const std::optional<std::filesystem::path>& out_dir = std::nullopt);

struct ExperimentSection {
  std::string name;
  std::map<std::string, std::string> values;
};

/// Flat key-value text, one section per experiment:
///   # comment
///   [emin]
///   p = 0.3, 0.6
/// Sections run in file order; an empty document selects no experiment.
std::vector<ExperimentSection> parse_suite_config(std::istream& in);

/// Writes `summary.json`: an array of {name, passed, measured, threshold}.
void write_summary(std::ostream& out, const std::vector<ExperimentResult>& results);

/// Exit status of a suite run.
enum SuiteStatus : int { kSuitePassed = 0, kSuiteFailed = 1, kSuiteMalformed = 2 };

/// Parses the config, runs the experiments (independent ones concurrently, up to
/// the hardware concurrency), writes outputs and summary.json into out_dir.
/// Diagnostics go to `log`.
int run_suite(const std::filesystem::path& config, const std::filesystem::path& out_dir,
              std::ostream& log);

}  // namespace gplab
