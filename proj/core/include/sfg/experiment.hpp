#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sfg/tail.hpp"

namespace sfg {

// Parsed experiment configuration. The on-disk form is a JSON object with a
// fixed schema; unknown keys are rejected.
struct ExperimentConfig {
  std::string experiment;  // out-tail | in-tail | regimes | thinning | crossing |
                           // backbone | chains | isolated | components
  int d = 2;
  double s = 0.0;
  double beta = 0.0;
  double lambda = 1.0;
  std::vector<double> n_grid;   // one entry when a single "n" was given
  std::vector<double> alphas{0.0};
  std::int64_t replications = 1;
  std::int64_t draws = 100000;  // tail experiments
  std::uint64_t seed = 0;
  int threads = 0;              // 0 = hardware concurrency
  std::string output_dir = "out";
  TailMethod method = TailMethod::loglog_ccdf;
  QuantileWindow window;
  std::int64_t pairs_per_instance = 200;
  int depth_cap = -1;
  std::int64_t full_replications = 0;
  std::int64_t max_points = 50'000'000;
};

ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig parse_config_file(const std::string& path);
std::string canonical_config_text(const ExperimentConfig& config);
std::string config_hash(const ExperimentConfig& config);  // 16 hex digits

struct Violation {
  std::string field;
  std::string message;
  bool warning = false;  // warnings do not block a run
};

// Pure check; errors (warning = false) make the config unrunnable.
std::vector<Violation> validate(const ExperimentConfig& config);

struct RunManifest {
  std::string config_hash;
  std::string version;
  std::string started;
  std::string finished;
  std::string output_dir;             // the run directory actually used
  std::string seed_derivation;        // rule used for per-replication streams
  std::vector<std::uint64_t> replication_seeds;  // listed when <= 1000
  std::vector<std::string> files;
  bool ok = true;
  std::vector<std::string> failures;
};

// Executes the experiment, writing results.csv, summary.json, plot files and
// manifest.json into a fresh hash-named directory under the config's output
// dir (or out_dir_override). Result files are byte-identical across reruns
// of the same (config, seed, version); the manifest carries timestamps.
RunManifest run_experiment(const ExperimentConfig& config,
                           const std::string& out_dir_override = "");

// A named (x, y[, yerr]) table written as a whitespace-separated .dat file.
struct PlotSeries {
  std::string name;       // file stem
  int columns = 2;        // 2 or 3
  std::vector<double> x, y, yerr;
};

void emit_plot_data(const std::vector<PlotSeries>& series, const std::string& dir,
                    std::vector<std::string>* files = nullptr);

}  // namespace sfg
