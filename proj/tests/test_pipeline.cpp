#include <doctest.h>

#include <filesystem>
#include <map>

#include "mstates/error.hpp"
#include "mstates/matrix_io.hpp"
#include "mstates/pipeline.hpp"
#include "synthetic.hpp"

namespace fs = std::filesystem;
using namespace mstates;

namespace {

// Every product file (manifest excluded, it carries timings) -> contents.
std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), dir).generic_string();
    if (rel == "manifest.json") continue;
    out[rel] = read_file(entry.path());
  }
  return out;
}

RunConfig small_config(const fs::path& dir, const fs::path& input) {
  RunConfig c;
  c.input = input;
  c.output_dir = dir / "out";
  c.n_states = 2;
  c.goe_trials = 2;
  c.threads = 1;
  return c;
}

}  // namespace

TEST_CASE("5 tickers x 130 days, L = 40: three epochs per kind") {
  const auto dir = synthetic::scratch_dir("pipe_small");
  synthetic::write_prices_csv(synthetic::factor_panel(5, 130, 1), dir / "prices.csv");
  const auto manifest = run_pipeline(small_config(dir, dir / "prices.csv"));

  CHECK(manifest.at("status") == "ok");
  CHECK(manifest.at("counts").at("epochs") == 3);
  std::size_t matrices = 0;
  for (const auto& p : manifest.at("products")) {
    const auto path = p.at("path").get<std::string>();
    CHECK(fs::exists(dir / "out" / path));
    CHECK(p.at("sha256") == sha256_file(dir / "out" / path));
    if (path.find("_epoch_") != std::string::npos) ++matrices;
  }
  CHECK(matrices == 6);
  for (const char* name : {"fig1_summary.csv", "fig2_hist.csv", "fig3_eigs.csv", "fig4_pr.csv",
                           "fig6_moments.csv", "fig7_xi_pearson.csv", "fig8_dendrogram_distance.csv",
                           "fig9_states_pearson.csv", "fig10_transitions_distance.csv",
                           "fig11_state_pearson_2.csv", "market_states_distance.json",
                           "goe_baseline.json", "manifest.json"})
    CHECK_MESSAGE(fs::exists(dir / "out" / name), name);
  CHECK(manifest.at("input").at("sha256") == sha256_file(dir / "prices.csv"));
  CHECK(manifest.at("timings_ms").contains("correlate.distance.epochs"));
}

TEST_CASE("same config twice gives byte-identical products") {
  const auto dir = synthetic::scratch_dir("pipe_twice");
  synthetic::write_prices_csv(synthetic::factor_panel(6, 200, 2), dir / "prices.csv");
  auto config = small_config(dir, dir / "prices.csv");
  run_pipeline(config);
  const auto first = snapshot(config.output_dir);
  fs::remove_all(config.output_dir);
  config.threads = 3;
  run_pipeline(config);
  CHECK(first == snapshot(config.output_dir));
}

TEST_CASE("stages re-run from serialized products equal the single-shot run") {
  const auto dir = synthetic::scratch_dir("pipe_stages");
  synthetic::write_prices_csv(synthetic::factor_panel(6, 250, 3), dir / "prices.csv");
  auto config = small_config(dir, dir / "prices.csv");
  run_pipeline(config);
  const auto single = snapshot(config.output_dir);

  config.output_dir = dir / "staged";
  stage_ingest(config);
  stage_correlate(config);
  stage_spectra(config);
  stage_moments(config);
  stage_cluster(config);
  stage_transitions(config);
  stage_goe_baseline(config);
  CHECK(single == snapshot(config.output_dir));
}

TEST_CASE("a failing stage removes its products and records the failure") {
  const auto dir = synthetic::scratch_dir("pipe_fail");
  synthetic::write_prices_csv(synthetic::factor_panel(4, 100, 4), dir / "prices.csv");
  auto config = small_config(dir, dir / "prices.csv");
  config.n_states = 50;  // more states than epochs: cluster stage fails
  CHECK_THROWS_WITH_AS(run_pipeline(config), doctest::Contains("stage 'cluster'"),
                       ValidationError);
  const auto manifest = nlohmann::json::parse(read_file(config.output_dir / "manifest.json"));
  CHECK(manifest.at("status") == "failed");
  CHECK(manifest.at("failed_stage") == "cluster");
  CHECK_FALSE(fs::exists(config.output_dir / "returns.csv"));
  CHECK_FALSE(fs::exists(config.output_dir / "fig3_eigs.csv"));
}

TEST_CASE("constant stock aborts Pearson with a numeric error") {
  const auto dir = synthetic::scratch_dir("pipe_flat");
  write_file(dir / "prices.csv",
             "date,A,B\n1,1,5\n2,2,5\n3,1.5,5\n4,1.7,5\n5,1.2,5\n");
  auto config = small_config(dir, dir / "prices.csv");
  config.epoch_length = 2;
  CHECK_THROWS_WITH_AS(run_pipeline(config), doctest::Contains("'B'"), NumericError);
}

TEST_CASE("config JSON overlay") {
  const auto c = config_from_json(
      nlohmann::json{{"epoch_length", 20}, {"kinds", {"dcc"}}, {"sectors", "s.csv"}});
  CHECK(c.epoch_length == 20);
  CHECK(c.kinds == std::vector<CorrelationKind>{CorrelationKind::Distance});
  CHECK(c.sectors == fs::path("s.csv"));
  CHECK(c.n_states == 5);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"bogus", 1}}), ValidationError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"epoch_length", "x"}}), ValidationError);
  const auto back = config_from_json(to_json(c));
  CHECK(to_json(back) == to_json(c));

  RunConfig bad;
  bad.epoch_length = 1;
  CHECK_THROWS_AS(validate(bad), ValidationError);
}

TEST_CASE("sector sidecar groups tickers") {
  const auto dir = synthetic::scratch_dir("pipe_sectors");
  synthetic::write_prices_csv(synthetic::factor_panel(4, 90, 6), dir / "prices.csv");
  write_file(dir / "sectors.csv", "ticker,sector\nS1,IT\nS2,FI\nS3,IT\nS4,FI\n");
  auto config = small_config(dir, dir / "prices.csv");
  config.sectors = dir / "sectors.csv";
  stage_ingest(config);
  const auto info = nlohmann::json::parse(read_file(config.output_dir / "ingest.json"));
  CHECK(info.at("sectors").at("S3") == "IT");
  const auto returns = load_returns(config.output_dir / "returns.csv");
  CHECK(returns.tickers == std::vector<std::string>{"S2", "S4", "S1", "S3"});
}
