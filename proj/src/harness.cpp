#include "ctsopt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ctsopt/benchmarks.hpp"
#include "ctsopt/parallel.hpp"
#include "ctsopt/random.hpp"

namespace ctsopt::harness {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
    const auto n = std::stoull(v, &used, 0);
    if (used != v.size()) throw std::invalid_argument("trailing");
    return n;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' expects a non-negative integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("'" + key + "' expects true/false, got '" + v + "'");
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string full(double x) { return fmt("%.17g", x); }
std::string sig6(double x) { return fmt("%.6g", x); }

std::vector<std::string> expand_problems(const std::vector<std::string>& ids) {
  std::vector<std::string> out;
  for (const auto& id : ids) {
    if (id == "all") {
      for (int i = 1; i <= 23; ++i) out.push_back("F" + std::to_string(i));
    } else {
      out.push_back(id);
    }
  }
  return out;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw IoError("cannot open '" + p.string() + "' for writing");
  f << content;
  if (!f) throw IoError("failed writing '" + p.string() + "'");
}

void prepare_output(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir / "traces", ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream f(probe);
    if (!f || !(f << "ok")) throw IoError("output directory '" + dir.string() + "' is not writable");
  }
  fs::remove(probe, ec);
}

}  // namespace

ExperimentSpec parse_spec(std::istream& in) {
  ExperimentSpec spec;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");

    if (key == "problems") {
      spec.problems = expand_problems(split_list(value));
    } else if (key == "optimizers") {
      spec.optimizers = split_list(value);
    } else if (key == "trials") {
      spec.trials = parse_u64(key, value);
    } else if (key == "budget") {
      spec.budget = static_cast<std::int64_t>(parse_u64(key, value));
    } else if (key == "seed" || key == "master_seed") {
      spec.master_seed = parse_u64(key, value);
    } else if (key == "out" || key == "output") {
      spec.out_dir = value;
    } else if (key == "log_points") {
      spec.log_points = parse_bool(key, value);
    } else if (key == "trial_workers") {
      spec.trial_workers = parse_u64(key, value);
    } else {
      spec.overrides.emplace_back(key, value);
    }
  }
  return spec;
}

ExperimentSpec parse_spec_file(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read spec file '" + path.string() + "'");
  return parse_spec(f);
}

Settings resolve_settings(const ExperimentSpec& spec) {
  Settings s;
  for (const auto& [k, v] : spec.overrides) apply_override(s, k, v);
  return s;
}

void validate(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw ConfigError("trials must be >= 1");
  if (spec.problems.empty()) throw ConfigError("no problems listed");
  if (spec.optimizers.empty()) throw ConfigError("no optimizers listed");
  auto check = [](const std::string& id, const std::vector<std::string>& valid, const char* what) {
    if (std::find(valid.begin(), valid.end(), id) != valid.end()) return;
    std::string list;
    for (const auto& v : valid) list += (list.empty() ? "" : ", ") + v;
    throw ConfigError(std::string("unknown ") + what + " '" + id + "'; valid ids: " + list);
  };
  for (const auto& p : spec.problems) check(p, problem_ids(), "problem");
  for (const auto& o : spec.optimizers) check(o, optimizer_ids(), "optimizer");
  resolve_settings(spec);
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::string_view problem, std::string_view optimizer,
                         std::size_t trial) {
  std::uint64_t h = splitmix64(master_seed);
  h = hash_string(problem, h);
  h = hash_string(optimizer, splitmix64(h));
  return splitmix64(h ^ splitmix64(static_cast<std::uint64_t>(trial) + 0x632be59bd9b4e019ULL));
}

std::int64_t default_budget(std::string_view problem) {
  if (const auto id = bench::BenchmarkId::parse(problem); id && id->category() != bench::Category::FixedDimensional) {
    return 50'000;
  }
  return 20'000;
}

std::int64_t resolved_budget(const ExperimentSpec& spec, std::string_view problem) {
  return spec.budget > 0 ? spec.budget : default_budget(problem);
}

SummaryRow summarize(std::string problem, std::string optimizer, const std::vector<double>& finals,
                     std::int64_t evals) {
  if (finals.empty()) throw ContractViolation("summarize: no trials");
  SummaryRow row{std::move(problem), std::move(optimizer), 0.0, 0.0, 0.0, evals};
  const double n = static_cast<double>(finals.size());
  row.ave = std::accumulate(finals.begin(), finals.end(), 0.0) / n;
  row.best = *std::min_element(finals.begin(), finals.end());
  if (finals.size() > 1) {
    double ss = 0.0;
    for (double f : finals) ss += (f - row.ave) * (f - row.ave);
    row.std = std::sqrt(ss / (n - 1.0));
  }
  // the mean of identical values can round just below them
  if (row.ave < row.best) row.ave = row.best;
  return row;
}

std::string emit_summary(const std::vector<SummaryRow>& rows, Format format) {
  if (rows.empty()) throw ContractViolation("emit_summary: no rows");
  if (format == Format::Json) {
    // nlohmann::json sorts keys; ordered_json keeps the column order
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json o;
      o["problem"] = r.problem;
      o["optimizer"] = r.optimizer;
      o["ave"] = r.ave;
      o["std"] = r.std;
      o["best"] = r.best;
      o["evals"] = r.evals;
      out.push_back(std::move(o));
    }
    return out.dump(2) + "\n";
  }
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"problem", "optimizer", "ave", "std", "best", "evals"});
  for (const auto& r : rows) {
    auto num = format == Format::Csv ? full : sig6;
    cells.push_back({r.problem, r.optimizer, num(r.ave), num(r.std), num(r.best), std::to_string(r.evals)});
  }
  std::string out;
  if (format == Format::Csv) {
    for (const auto& row : cells) {
      for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + row[c];
      out += "\n";
    }
    return out;
  }
  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      // text left-aligned, numbers right-aligned
      const std::string pad(width[c] - row[c].size(), ' ');
      line += c < 2 ? row[c] + pad : pad + row[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string emit_trace(const RunResult& r) {
  std::string out;
  out.reserve(r.trace.size() * 28);
  for (std::size_t i = 0; i < r.trace.size(); ++i) out += std::to_string(i + 1) + "\t" + full(r.trace[i]) + "\n";
  return out;
}

std::string emit_points(const RunResult& r) {
  std::string out;
  for (std::size_t i = 0; i < r.sampled_points.size(); ++i) {
    out += std::to_string(i + 1);
    for (double x : r.sampled_points[i]) out += "\t" + full(x);
    out += "\t" + full(r.sampled_values[i]) + "\n";
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, std::ostream* progress) {
  validate(spec);
  const Settings settings = resolve_settings(spec);
  prepare_output(spec.out_dir);

  ExperimentResult res;
  for (const auto& p : spec.problems) {
    for (const auto& o : spec.optimizers) {
      for (std::size_t t = 0; t < spec.trials; ++t) {
        res.trials.push_back(TrialRecord{p, o, t, trial_seed(spec.master_seed, p, o, t), resolved_budget(spec, p), {}});
      }
    }
  }

  parallel_for(res.trials.size(), spec.trial_workers, [&](std::size_t i) {
    TrialRecord& tr = res.trials[i];
    const Objective obj = make_problem(tr.problem, settings);
    tr.result = run_optimizer(tr.optimizer, obj, tr.budget, tr.seed, settings, spec.log_points);
  });

  for (std::size_t i = 0; i < res.trials.size(); i += spec.trials) {
    std::vector<double> finals;
    for (std::size_t t = 0; t < spec.trials; ++t) finals.push_back(res.trials[i + t].result.best_value);
    const TrialRecord& first = res.trials[i];
    res.rows.push_back(summarize(first.problem, first.optimizer, finals, first.budget));
    if (progress) *progress << emit_summary({res.rows.back()}, Format::Text) << std::flush;
  }

  nlohmann::json meta;
  meta["master_seed"] = spec.master_seed;
  meta["trials"] = spec.trials;
  meta["problems"] = spec.problems;
  meta["optimizers"] = spec.optimizers;
  meta["log_points"] = spec.log_points;
  meta["trial_workers"] = spec.trial_workers;
  meta["std_form"] = "sample (n-1)";
  meta["seed_derivation"] = "hash(master_seed, problem, optimizer, trial)";
  for (const auto& p : spec.problems) {
    meta["budgets"][p] = {{"evals", resolved_budget(spec, p)},
                          {"source", spec.budget > 0 ? "explicit" : "default (5e4 scalable, 2e4 fixed/design)"}};
  }
  meta["settings"] = settings_to_json(settings);
  nlohmann::json overrides = nlohmann::json::object();
  for (const auto& [k, v] : spec.overrides) overrides[k] = v;
  meta["overrides"] = overrides;
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& tr : res.trials) {
    trials.push_back({{"problem", tr.problem},
                      {"optimizer", tr.optimizer},
                      {"trial", tr.trial},
                      {"seed", tr.seed},
                      {"evals_used", tr.result.evals_used},
                      {"best_value", tr.result.best_value},
                      {"census", tr.result.census}});
  }
  meta["trial_results"] = trials;
  res.metadata = meta;

  write_file(spec.out_dir / "summary.csv", emit_summary(res.rows, Format::Csv));
  write_file(spec.out_dir / "summary.json", emit_summary(res.rows, Format::Json));
  write_file(spec.out_dir / "metadata.json", meta.dump(2) + "\n");
  for (const auto& tr : res.trials) {
    const std::string stem = tr.problem + "_" + tr.optimizer + "_" + std::to_string(tr.trial);
    write_file(spec.out_dir / "traces" / (stem + ".tsv"), emit_trace(tr.result));
    if (spec.log_points) write_file(spec.out_dir / "traces" / (stem + ".points.tsv"), emit_points(tr.result));
  }
  return res;
}

}  // namespace ctsopt::harness
