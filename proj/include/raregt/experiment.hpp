#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "raregt/measures.hpp"

namespace raregt {

enum class ExperimentKind { aep, gt_vs_better, cross, classify, bounds };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& name);

struct ExperimentSpec {
  std::filesystem::path profile_path;
  ExperimentKind experiment = ExperimentKind::aep;
  std::vector<std::uint64_t> n_values;
  std::uint64_t seeds = 1;
  double epsilon = 0.1;
  std::filesystem::path output;

  // Optional knobs; defaults reproduce the documented experiments.
  std::uint64_t base_seed = 1;
  std::optional<std::uint64_t> K;  // overrides select_params
  std::optional<std::uint64_t> M;
  std::uint64_t gt_truncation = 30;
  Source classify_source = Source::q;  // source of the test string z
  bool record_timing = false;          // runtime_ms is left empty otherwise
};

/// Reads an experiment spec. Relative paths are resolved against `base_dir`.
/// Throws ConfigError on malformed input.
ExperimentSpec spec_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

struct ReportRow {
  std::string experiment;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::string estimator;
  double value = 0.0;
  double oracle_value = 0.0;
  double abs_error = 0.0;
  std::optional<std::uint64_t> K;
  std::optional<std::uint64_t> M;
  double epsilon = 0.0;
  double runtime_ms = 0.0;
};

struct Report {
  std::vector<ReportRow> rows;
  std::vector<std::string> summary;
};

/// Seed of the `stream`-th string inside one trial. Stream 0 is the trial
/// seed itself; trial t of an experiment uses seed base_seed + t.
std::uint64_t stream_seed(std::uint64_t trial_seed, std::uint64_t stream);

/// Runs every (n, seed) trial, in parallel on up to `threads` workers (0 means
/// hardware concurrency). Rows come back ordered by n, then seed, then
/// estimator, regardless of scheduling. Throws GranularityError if some n is
/// not a multiple of the profile granularity.
Report run_experiment(const ExperimentSpec& spec, const ScaledProfile& profile, unsigned threads = 0);

/// CSV with header row, one line per ReportRow and '#'-prefixed summary lines.
void write_csv(std::ostream& os, const Report& report, bool record_timing);

/// Parallelism cap from RARE_GT_THREADS, or 0 when unset.
unsigned threads_from_env();

}  // namespace raregt
