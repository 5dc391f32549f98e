// mstates: correlation, spectral and market-state analysis of price panels.
//
//   mstates run --input prices.csv --out results/
//   mstates ingest --input prices.csv --out results/
//   mstates correlate --out results/ --epoch-length 40
//   ...
//
// Exit codes: 0 success, 1 validation error, 2 runtime/numeric error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mstates/error.hpp"
#include "mstates/matrix_io.hpp"
#include "mstates/pipeline.hpp"

namespace {

using mstates::RunConfig;
using mstates::StageOutput;

// Flags left unset fall back to the JSON config, then to RunConfig defaults.
struct Flags {
  std::string config;
  std::optional<std::string> input;
  std::optional<std::string> sectors;
  std::optional<std::string> output_dir;
  std::optional<std::size_t> epoch_length;
  std::optional<std::vector<std::string>> kinds;
  std::optional<std::size_t> n_states;
  std::optional<double> zero_threshold;
  std::optional<std::size_t> hist_bins;
  std::optional<double> hist_lo;
  std::optional<double> hist_hi;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> goe_trials;
  std::optional<unsigned> threads;
  bool no_full_horizon = false;
  bool drop_incomplete = false;
  std::size_t goe_n = 0;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file; flags override it");
  cmd->add_option("-i,--input", f.input, "Wide price CSV (date + one column per ticker)");
  cmd->add_option("--sectors", f.sectors, "Optional ticker,sector sidecar CSV");
  cmd->add_option("-o,--out", f.output_dir, "Output directory (default: out)");
  cmd->add_option("-L,--epoch-length", f.epoch_length, "Epoch length in return days (default 40)");
  cmd->add_option("--kinds", f.kinds, "Correlation kinds: pearson, distance (default both)")
      ->delimiter(',');
  cmd->add_option("-n,--n-states", f.n_states, "Number of market states (default 5)");
  cmd->add_option("--zero-threshold", f.zero_threshold, "Zero-eigenvalue threshold (default 1e-8)");
  cmd->add_option("--bins", f.hist_bins, "Histogram bins (default 50)");
  cmd->add_option("--hist-lo", f.hist_lo, "Histogram lower edge (default -1)");
  cmd->add_option("--hist-hi", f.hist_hi, "Histogram upper edge (default 1)");
  cmd->add_option("--seed", f.seed, "Seed for the GOE baseline (default 42)");
  cmd->add_option("--goe-trials", f.goe_trials, "GOE matrices to sample (default 10)");
  cmd->add_option("-j,--threads", f.threads, "Worker threads, 0 = all cores (default 0)");
  cmd->add_flag("--no-full-horizon", f.no_full_horizon, "Skip the full-horizon matrices");
  cmd->add_flag("--drop-incomplete", f.drop_incomplete,
                "Drop tickers with missing prices instead of failing");
}

RunConfig resolve(const Flags& f) {
  RunConfig c;
  if (!f.config.empty())
    c = mstates::config_from_json(nlohmann::json::parse(mstates::read_file(f.config)), c);
  if (f.input) c.input = *f.input;
  if (f.sectors) c.sectors = *f.sectors;
  if (f.output_dir) c.output_dir = *f.output_dir;
  if (f.epoch_length) c.epoch_length = *f.epoch_length;
  if (f.kinds) {
    c.kinds.clear();
    for (const auto& k : *f.kinds) c.kinds.push_back(mstates::parse_kind(k));
  }
  if (f.n_states) c.n_states = *f.n_states;
  if (f.zero_threshold) c.zero_threshold = *f.zero_threshold;
  if (f.hist_bins) c.hist_bins = *f.hist_bins;
  if (f.hist_lo) c.hist_lo = *f.hist_lo;
  if (f.hist_hi) c.hist_hi = *f.hist_hi;
  if (f.seed) c.seed = *f.seed;
  if (f.goe_trials) c.goe_trials = *f.goe_trials;
  if (f.threads) c.threads = *f.threads;
  if (f.no_full_horizon) c.full_horizon = false;
  if (f.drop_incomplete) c.drop_incomplete = true;
  return c;
}

void print_products(const StageOutput& out) {
  for (const auto& p : out.products) std::cout << p << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pearson and distance correlation analysis of price panels, "
               "with epoch spectra and market-state clustering"};
  app.require_subcommand(1);
  Flags flags;

  auto* run = app.add_subcommand("run", "Run the full pipeline and write manifest.json");
  auto* ingest = app.add_subcommand("ingest", "Load prices and write returns.csv");
  auto* correlate = app.add_subcommand("correlate", "Per-epoch and full-horizon correlation matrices");
  auto* spectra = app.add_subcommand("spectra", "Eigenvalues and participation ratios");
  auto* moments = app.add_subcommand("moments", "Element histograms and moments");
  auto* cluster = app.add_subcommand("cluster", "Ward clustering into market states");
  auto* trans = app.add_subcommand("transitions", "Market-state transition counts");
  auto* goe = app.add_subcommand("baseline-goe", "GOE participation-ratio baseline");
  for (auto* cmd : {run, ingest, correlate, spectra, moments, cluster, trans, goe})
    add_common(cmd, flags);
  goe->add_option("--size", flags.goe_n, "Matrix dimension (default: stock count in returns.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const RunConfig config = resolve(flags);
    if (run->parsed()) {
      const auto manifest = mstates::run_pipeline(config);
      std::cout << "wrote " << manifest.at("products").size() << " products to "
                << config.output_dir.string() << " (" << manifest.at("counts").dump()
                << ")\n";
    } else if (ingest->parsed()) {
      print_products(mstates::stage_ingest(config));
    } else if (correlate->parsed()) {
      print_products(mstates::stage_correlate(config));
    } else if (spectra->parsed()) {
      print_products(mstates::stage_spectra(config));
    } else if (moments->parsed()) {
      print_products(mstates::stage_moments(config));
    } else if (cluster->parsed()) {
      print_products(mstates::stage_cluster(config));
    } else if (trans->parsed()) {
      print_products(mstates::stage_transitions(config));
    } else if (goe->parsed()) {
      print_products(mstates::stage_goe_baseline(config, flags.goe_n));
    }
  } catch (const mstates::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
