#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mstates/correlation.hpp"
#include "mstates/spectral.hpp"

namespace mstates {

struct RunConfig {
  std::filesystem::path input;
  std::optional<std::filesystem::path> sectors;
  std::filesystem::path output_dir = "out";
  std::size_t epoch_length = 40;
  std::vector<CorrelationKind> kinds = {CorrelationKind::Pearson,
                                        CorrelationKind::Distance};
  std::size_t n_states = 5;
  double zero_threshold = kDefaultZeroThreshold;
  std::size_t hist_bins = 50;
  double hist_lo = -1.0;
  double hist_hi = 1.0;
  std::uint64_t seed = 42;
  std::size_t goe_trials = 10;
  unsigned threads = 0;  // 0 = one per hardware thread
  bool full_horizon = true;
  bool drop_incomplete = false;
};

/// Throws ValidationError when a field is out of range.
void validate(const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);

/// Overlays the keys present in `j` onto `base`. Unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});

/// Products written by a stage, relative to the output directory.
struct StageOutput {
  std::vector<std::string> products;
  /// Optional sub-step timings, merged into the manifest as "<stage>.<key>".
  nlohmann::json timings_ms = nlohmann::json::object();
};

// Each stage reads the products of the stages before it from
// config.output_dir, so any stage can be re-run on its own.
StageOutput stage_ingest(const RunConfig& config);
StageOutput stage_correlate(const RunConfig& config);
StageOutput stage_spectra(const RunConfig& config);
StageOutput stage_moments(const RunConfig& config);
StageOutput stage_cluster(const RunConfig& config);
StageOutput stage_transitions(const RunConfig& config);
/// n = 0 takes the stock count from returns.csv.
StageOutput stage_goe_baseline(const RunConfig& config, std::size_t n = 0);

/// Runs every stage in order and writes manifest.json. On failure the
/// products of this run are removed, a manifest with status "failed" is
/// written, and the error is rethrown prefixed with the stage name.
nlohmann::json run_pipeline(const RunConfig& config);

/// Names of the products, for tests and tooling.
std::string matrix_product(CorrelationKind kind, std::size_t epoch_index);

}  // namespace mstates
