#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ctsopt/core.hpp"
#include "ctsopt/registry.hpp"

namespace ctsopt::harness {

/// Output location cannot be created or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentSpec {
  std::vector<std::string> problems;
  std::vector<std::string> optimizers;
  std::size_t trials = 10;
  std::int64_t budget = 0;  // 0 -> per-problem default
  std::uint64_t master_seed = 0;
  std::filesystem::path out_dir = "results";
  bool log_points = false;
  std::size_t trial_workers = 1;
  std::vector<std::pair<std::string, std::string>> overrides;  // applied in order onto Settings
};

/// Flat `key = value` text; lists are comma separated, `#` starts a comment.
/// Keys other than the experiment's own are treated as configuration overrides.
ExperimentSpec parse_spec(std::istream& in);
ExperimentSpec parse_spec_file(const std::filesystem::path& path);

/// Throws ConfigError on unknown ids, zero trials or a bad override.
Settings resolve_settings(const ExperimentSpec& spec);
void validate(const ExperimentSpec& spec);

std::uint64_t trial_seed(std::uint64_t master_seed, std::string_view problem, std::string_view optimizer,
                         std::size_t trial);

/// 5e4 for scalable (30-D) functions, 2e4 for fixed-dimensional and design problems.
std::int64_t default_budget(std::string_view problem);
std::int64_t resolved_budget(const ExperimentSpec& spec, std::string_view problem);

struct SummaryRow {
  std::string problem;
  std::string optimizer;
  double ave = 0.0;
  double std = 0.0;  // sample (n-1) form; 0 for one trial
  double best = 0.0;
  std::int64_t evals = 0;
};

SummaryRow summarize(std::string problem, std::string optimizer, const std::vector<double>& finals,
                     std::int64_t evals);

enum class Format { Csv, Json, Text };

std::string emit_summary(const std::vector<SummaryRow>& rows, Format format);
/// "eval<TAB>best_so_far" per evaluation, 1-based index.
std::string emit_trace(const RunResult& r);
/// "eval<TAB>x_1..x_d (unit cube)<TAB>value"; empty when points were not logged.
std::string emit_points(const RunResult& r);

struct TrialRecord {
  std::string problem;
  std::string optimizer;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::int64_t budget = 0;
  RunResult result;
};

struct ExperimentResult {
  std::vector<SummaryRow> rows;
  std::vector<TrialRecord> trials;
  nlohmann::json metadata;
};

/// Runs the full sweep and writes summary.csv, summary.json, metadata.json and
/// traces/<problem>_<optimizer>_<trial>.tsv under spec.out_dir. Progress lines
/// go to `progress` when given.
ExperimentResult run_experiment(const ExperimentSpec& spec, std::ostream* progress = nullptr);

}  // namespace ctsopt::harness
