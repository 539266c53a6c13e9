#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "trianneal/timeseries.hpp"

namespace trianneal {

enum class Method { Ta, Qa, QaH, Sqa };

std::string to_string(Method method);
Method parse_method(const std::string& text);

struct ExperimentSpec {
  int lx = 6;
  int ly = 6;
  double j = 1.0;
  double jx = 0.9;
  Method method = Method::Ta;
  int chains = 64;
  int steps_per_window = 1000;
  int n_cuts = 1;
  std::uint64_t seed = 1;
  std::string out_dir = "results";

  double t_max = 5.0;
  double t_min = 0.05;
  double dt = 0.05;
  double h_max = 5.0;
  double dh = 0.05;
  double temperature = 0.05;
  double h_site_max = 10.0;
  int points_per_decade = 20;
  int threads = 0;  // 0: hardware concurrency

  // Throws std::invalid_argument describing the first problem found.
  void validate() const;
  // "ta", "qa", "qa-h" or "sqa-<n>".
  std::string label() const;
  std::int64_t total_mcs() const;
};

// Applies one key=value setting. Throws on unknown keys or malformed values.
void apply_setting(ExperimentSpec& spec, const std::string& key, const std::string& value);

// Flat key=value text, '#' starts a comment.
ExperimentSpec parse_config(std::istream& in, ExperimentSpec spec = {});
ExperimentSpec load_config(const std::filesystem::path& path, ExperimentSpec spec = {});

// Single chain k with seed chain_seed(spec.seed, k).
TimeSeries run_chain(const ExperimentSpec& spec, int chain);

// All chains, fanned out over worker threads; result k belongs to chain k.
std::vector<TimeSeries> run_chains(const ExperimentSpec& spec);

struct AggregateRow {
  std::int64_t mcs = 0;
  double mean_energy = 0.0;
  double stderr_energy = 0.0;
  std::vector<double> p_sector;  // N_D = 0, 2, ..., Lx
  double p_undefined = 0.0;
};

// Per-sample-index mean, standard error and sector proportions. All series
// must share one sample grid.
std::vector<AggregateRow> aggregate(const std::vector<TimeSeries>& chains, int lx);

void write_chain_csv(std::ostream& out, const std::string& method, int chain, const TimeSeries& series);
void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows, int lx);

// Reads a per-chain CSV written by write_chain_csv.
TimeSeries read_chain_csv(std::istream& in);

struct RunSummary {
  std::filesystem::path out_dir;
  std::vector<AggregateRow> rows;
  double wall_seconds = 0.0;
};

// Validates, runs every chain, writes chain_XXX.csv, aggregate.csv and
// manifest.json under spec.out_dir.
RunSummary run_experiment(const ExperimentSpec& spec);

struct VerifyOptions {
  double j = 1.0;
  double jx = 0.9;
  bool corrupt_coupling = false;  // negative control for the stripe identity
  std::uint64_t seed = 7;
};

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool passed() const;
};

VerifyReport verify(const VerifyOptions& options);

std::string code_version();

}  // namespace trianneal
