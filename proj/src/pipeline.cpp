#include "mstates/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "mstates/clustering.hpp"
#include "mstates/error.hpp"
#include "mstates/matrix_io.hpp"
#include "mstates/parallel.hpp"
#include "mstates/stats.hpp"
#include "mstates/timeseries.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace mstates {

namespace {

constexpr const char* kReturns = "returns.csv";
constexpr const char* kIngestInfo = "ingest.json";
constexpr const char* kEpochs = "epochs.csv";
constexpr const char* kFig1Summary = "fig1_summary.csv";
constexpr const char* kFig2 = "fig2_hist.csv";
constexpr const char* kFig3 = "fig3_eigs.csv";
constexpr const char* kFig4 = "fig4_pr.csv";
constexpr const char* kFig6 = "fig6_moments.csv";
constexpr const char* kGoe = "goe_baseline.json";
constexpr const char* kManifest = "manifest.json";

std::string kind_name(CorrelationKind kind) { return std::string(to_string(kind)); }

std::string fig7_product(CorrelationKind k) { return "fig7_xi_" + kind_name(k) + ".csv"; }
std::string fig8_product(CorrelationKind k) { return "fig8_dendrogram_" + kind_name(k) + ".csv"; }
std::string fig9_product(CorrelationKind k) { return "fig9_states_" + kind_name(k) + ".csv"; }
std::string fig10_product(CorrelationKind k) { return "fig10_transitions_" + kind_name(k) + ".csv"; }
std::string states_product(CorrelationKind k) { return "market_states_" + kind_name(k) + ".json"; }
std::string fig11_product(CorrelationKind k, std::size_t state) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "fig11_state_%s_%zu.csv", kind_name(k).c_str(), state);
  return buf;
}

struct EpochRecord {
  std::size_t index = 0;
  std::size_t day_begin = 0;
  std::size_t day_end = 0;
  std::string first_date;
  std::string last_date;
};

// Splits a product CSV into header-checked rows.
std::vector<std::vector<std::string>> read_csv_rows(
    const fs::path& path, const std::vector<std::string>& expected_header) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != expected_header)
    throw ValidationError(path.string() + ": unexpected header");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() != expected_header.size())
      throw ValidationError(path.string() + ": ragged row");
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::size_t parse_count(const std::string& text, const fs::path& path) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty() || text.front() == '-')
    throw ValidationError(path.string() + ": bad integer '" + text + "'");
  return static_cast<std::size_t>(value);
}

std::vector<EpochRecord> read_epochs(const fs::path& dir) {
  const fs::path path = dir / kEpochs;
  std::vector<EpochRecord> out;
  for (const auto& row : read_csv_rows(
           path, {"epoch", "day_begin", "day_end", "first_date", "last_date"})) {
    out.push_back({parse_count(row[0], path), parse_count(row[1], path),
                   parse_count(row[2], path), row[3], row[4]});
  }
  if (out.empty()) throw ValidationError(path.string() + ": no epochs");
  return out;
}

std::vector<CorrelationMatrix> read_epoch_matrices(
    const fs::path& dir, CorrelationKind kind,
    const std::vector<EpochRecord>& epochs) {
  std::vector<CorrelationMatrix> out;
  out.reserve(epochs.size());
  for (const auto& e : epochs) {
    out.push_back(read_correlation_matrix(dir / matrix_product(kind, e.index)));
    if (out.back().kind != kind || out.back().epoch_index != e.index)
      throw ValidationError(matrix_product(kind, e.index) +
                            ": header does not match file name");
  }
  return out;
}

CorrelationOptions correlation_options(const RunConfig& config) {
  CorrelationOptions options;
  options.threads = config.threads;
  return options;
}

}  // namespace

std::string matrix_product(CorrelationKind kind, std::size_t epoch_index) {
  if (epoch_index == kFullHorizon) return "matrices/" + kind_name(kind) + "_full.csv";
  char buf[64];
  std::snprintf(buf, sizeof buf, "matrices/%s_epoch_%03zu.csv",
                kind_name(kind).c_str(), epoch_index);
  return buf;
}

void validate(const RunConfig& config) {
  if (config.epoch_length < 2) throw ValidationError("epoch length must be >= 2");
  if (config.n_states < 1) throw ValidationError("n_states must be >= 1");
  if (config.hist_bins < 1) throw ValidationError("histogram bins must be >= 1");
  if (!(config.hist_lo < config.hist_hi))
    throw ValidationError("histogram range must satisfy lo < hi");
  if (config.kinds.empty()) throw ValidationError("no correlation kinds selected");
  if (config.goe_trials < 1) throw ValidationError("goe_trials must be >= 1");
  if (config.output_dir.empty()) throw ValidationError("output directory is empty");
}

json to_json(const RunConfig& c) {
  json kinds = json::array();
  for (auto k : c.kinds) kinds.push_back(kind_name(k));
  return {
      {"input", c.input.string()},
      {"sectors", c.sectors ? json(c.sectors->string()) : json(nullptr)},
      {"output_dir", c.output_dir.string()},
      {"epoch_length", c.epoch_length},
      {"kinds", kinds},
      {"n_states", c.n_states},
      {"zero_threshold", c.zero_threshold},
      {"hist_bins", c.hist_bins},
      {"hist_lo", c.hist_lo},
      {"hist_hi", c.hist_hi},
      {"seed", c.seed},
      {"goe_trials", c.goe_trials},
      {"threads", c.threads},
      {"full_horizon", c.full_horizon},
      {"drop_incomplete", c.drop_incomplete},
  };
}

RunConfig config_from_json(const json& j, RunConfig c) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "input") c.input = value.get<std::string>();
      else if (key == "sectors")
        c.sectors = value.is_null() ? std::nullopt
                                    : std::optional<fs::path>(value.get<std::string>());
      else if (key == "output_dir") c.output_dir = value.get<std::string>();
      else if (key == "epoch_length") c.epoch_length = value.get<std::size_t>();
      else if (key == "kinds") {
        c.kinds.clear();
        for (const auto& k : value) c.kinds.push_back(parse_kind(k.get<std::string>()));
      }
      else if (key == "n_states") c.n_states = value.get<std::size_t>();
      else if (key == "zero_threshold") c.zero_threshold = value.get<double>();
      else if (key == "hist_bins") c.hist_bins = value.get<std::size_t>();
      else if (key == "hist_lo") c.hist_lo = value.get<double>();
      else if (key == "hist_hi") c.hist_hi = value.get<double>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "goe_trials") c.goe_trials = value.get<std::size_t>();
      else if (key == "threads") c.threads = value.get<unsigned>();
      else if (key == "full_horizon") c.full_horizon = value.get<bool>();
      else if (key == "drop_incomplete") c.drop_incomplete = value.get<bool>();
      else throw ValidationError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad config value: ") + e.what());
  }
  return c;
}

StageOutput stage_ingest(const RunConfig& config) {
  validate(config);
  if (config.input.empty()) throw ValidationError("no input file given");
  const fs::path dir = config.output_dir;
  fs::create_directories(dir);

  LoadReport report;
  LoadOptions options;
  options.drop_incomplete_tickers = config.drop_incomplete;
  PricePanel panel = load_prices(config.input, options, &report);

  if (config.sectors) {
    panel.sectors = load_sectors(*config.sectors);
    // Group tickers by sector so matrices show sector blocks; stable within a sector.
    std::vector<std::size_t> order(panel.stock_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto sector_of = [&](std::size_t i) {
      auto it = panel.sectors.find(panel.tickers[i]);
      return it == panel.sectors.end() ? std::string("~unassigned") : it->second;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return sector_of(a) < sector_of(b);
    });
    PricePanel sorted = panel;
    for (std::size_t r = 0; r < order.size(); ++r) {
      sorted.tickers[r] = panel.tickers[order[r]];
      sorted.prices.row(static_cast<Eigen::Index>(r)) =
          panel.prices.row(static_cast<Eigen::Index>(order[r]));
    }
    panel = std::move(sorted);
  }

  const ReturnPanel returns = compute_returns(panel);
  write_returns_csv(returns, dir / kReturns);

  json sectors = json::object();
  for (const auto& ticker : panel.tickers) {
    auto it = panel.sectors.find(ticker);
    if (it != panel.sectors.end()) sectors[ticker] = it->second;
  }
  const json info = {
      {"input_sha256", sha256_file(config.input)},
      {"stocks", panel.stock_count()},
      {"price_days", panel.day_count()},
      {"return_days", returns.day_count()},
      {"first_date", panel.dates.front()},
      {"last_date", panel.dates.back()},
      {"dropped_tickers", report.dropped_tickers},
      {"sectors", sectors},
  };
  write_file(dir / kIngestInfo, info.dump(2) + "\n");
  return {{kReturns, kIngestInfo}};
}

StageOutput stage_correlate(const RunConfig& config) {
  validate(config);
  const fs::path dir = config.output_dir;
  const ReturnPanel returns = load_returns(dir / kReturns);
  const std::vector<Epoch> epochs = slice_epochs(returns, config.epoch_length);
  fs::create_directories(dir / "matrices");
  StageOutput out;

  std::string epochs_csv = "epoch,day_begin,day_end,first_date,last_date\n";
  for (const auto& e : epochs)
    epochs_csv += std::to_string(e.index) + "," + std::to_string(e.day_begin) + "," +
                  std::to_string(e.day_end) + "," + e.first_date + "," +
                  e.last_date + "\n";
  write_file(dir / kEpochs, epochs_csv);
  out.products.push_back(kEpochs);

  const auto options = correlation_options(config);
  std::string summary = "kind,mean_off_diagonal,min_off_diagonal,max_off_diagonal\n";
  for (const auto kind : config.kinds) {
    auto since = [](auto start) {
      return std::chrono::duration<double, std::milli>(
                 std::chrono::steady_clock::now() - start)
          .count();
    };
    if (config.full_horizon) {
      const auto full_start = std::chrono::steady_clock::now();
      const auto full = correlation_matrix(returns, kind, options);
      write_correlation_matrix(full, dir / matrix_product(kind, kFullHorizon));
      out.products.push_back(matrix_product(kind, kFullHorizon));
      const auto upper = upper_triangle(full.values);
      double lo = 0.0, hi = 0.0;
      if (!upper.empty()) {
        lo = *std::min_element(upper.begin(), upper.end());
        hi = *std::max_element(upper.begin(), upper.end());
      }
      summary += kind_name(kind) + "," + format_double(mean_off_diagonal(full.values)) +
                 "," + format_double(lo) + "," + format_double(hi) + "\n";
      out.timings_ms[kind_name(kind) + ".full_horizon"] = since(full_start);
    }
    const auto epochs_start = std::chrono::steady_clock::now();
    for (const auto& epoch : epochs) {
      const auto matrix = correlation_matrix(epoch, kind, returns.tickers, options);
      write_correlation_matrix(matrix, dir / matrix_product(kind, epoch.index));
      out.products.push_back(matrix_product(kind, epoch.index));
    }
    out.timings_ms[kind_name(kind) + ".epochs"] = since(epochs_start);
  }
  if (config.full_horizon) {
    write_file(dir / kFig1Summary, summary);
    out.products.push_back(kFig1Summary);
  }
  return out;
}

StageOutput stage_spectra(const RunConfig& config) {
  validate(config);
  const fs::path dir = config.output_dir;
  const auto epochs = read_epochs(dir);
  std::string eigs = "epoch,kind,index,eigenvalue,participation_ratio\n";
  std::string prs =
      "epoch,kind,e_max,pr_e_max,mean_pr,zero_count,clamped_negatives,negative_eigenvalues\n";
  for (const auto kind : config.kinds) {
    const auto matrices = read_epoch_matrices(dir, kind, epochs);
    std::vector<Spectrum> spectra(matrices.size());
    parallel_for(matrices.size(), config.threads,
                 [&](std::size_t e) { spectra[e] = eigendecompose(matrices[e]); });
    for (const auto& s : spectra) {
      const std::string prefix = std::to_string(s.epoch_index) + "," + kind_name(kind) + ",";
      for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k)
        eigs += prefix + std::to_string(k + 1) + "," + format_double(s.eigenvalues(k)) +
                "," + format_double(s.participation_ratios(k)) + "\n";
      const auto sum = spectrum_summary(s, config.zero_threshold);
      prs += prefix + format_double(sum.e_max) + "," + format_double(sum.pr_e_max) +
             "," + format_double(sum.mean_pr) + "," + std::to_string(sum.zero_count) +
             "," + std::to_string(s.clamped_negatives) + "," +
             std::to_string(s.negative_eigenvalues) + "\n";
    }
  }
  write_file(dir / kFig3, eigs);
  write_file(dir / kFig4, prs);
  return {{kFig3, kFig4}};
}

StageOutput stage_moments(const RunConfig& config) {
  validate(config);
  const fs::path dir = config.output_dir;
  const auto epochs = read_epochs(dir);

  // (epoch, kind) -> (E_max, PR_Emax) from the spectra stage.
  std::map<std::pair<std::size_t, std::string>, std::pair<std::string, std::string>> spectral;
  const fs::path fig4 = dir / kFig4;
  for (const auto& row : read_csv_rows(
           fig4, {"epoch", "kind", "e_max", "pr_e_max", "mean_pr", "zero_count",
                  "clamped_negatives", "negative_eigenvalues"}))
    spectral[{parse_count(row[0], fig4), row[1]}] = {row[2], row[3]};

  std::string hist =
      "epoch,kind,bin,lower,upper,count\n";
  std::string moments =
      "epoch,kind,first_date,last_date,mu,sigma,gamma1,gamma2,degenerate,e_max,pr_e_max\n";
  for (const auto kind : config.kinds) {
    const auto matrices = read_epoch_matrices(dir, kind, epochs);
    for (std::size_t e = 0; e < matrices.size(); ++e) {
      const auto& m = matrices[e];
      const std::string prefix = std::to_string(m.epoch_index) + "," + kind_name(kind) + ",";
      const auto h = histogram(m, config.hist_bins, config.hist_lo, config.hist_hi);
      hist += prefix + "underflow,," + format_double(h.lo) + "," +
              std::to_string(h.underflow) + "\n";
      for (std::size_t b = 0; b < h.counts.size(); ++b)
        hist += prefix + std::to_string(b + 1) + "," + format_double(h.bin_lower(b)) +
                "," + format_double(h.bin_upper(b)) + "," + std::to_string(h.counts[b]) +
                "\n";
      hist += prefix + "overflow," + format_double(h.hi) + ",," +
              std::to_string(h.overflow) + "\n";

      const auto mo = matrix_moments(m);
      const auto it = spectral.find({m.epoch_index, kind_name(kind)});
      if (it == spectral.end())
        throw ValidationError(std::string(kFig4) + ": no spectrum for epoch " +
                              std::to_string(m.epoch_index) + " (" + kind_name(kind) +
                              "); run the spectra stage first");
      moments += prefix + epochs[e].first_date + "," + epochs[e].last_date + "," +
                 format_double(mo.mu) + "," + format_double(mo.sigma) + "," +
                 format_double(mo.gamma1) + "," + format_double(mo.gamma2) + "," +
                 (mo.degenerate ? "1" : "0") + "," + it->second.first + "," +
                 it->second.second + "\n";
    }
  }
  write_file(dir / kFig2, hist);
  write_file(dir / kFig6, moments);
  return {{kFig2, kFig6}};
}

StageOutput stage_cluster(const RunConfig& config) {
  validate(config);
  const fs::path dir = config.output_dir;
  const auto epochs = read_epochs(dir);
  if (epochs.size() < 2)
    throw ValidationError("clustering needs at least 2 epochs, got " +
                          std::to_string(epochs.size()));
  if (config.n_states > epochs.size())
    throw ValidationError("n_states " + std::to_string(config.n_states) +
                          " exceeds the epoch count " + std::to_string(epochs.size()));
  StageOutput out;
  for (const auto kind : config.kinds) {
    const auto matrices = read_epoch_matrices(dir, kind, epochs);
    const auto xi = epoch_distance_matrix(matrices, config.threads);
    json xi_header = {{"type", "epoch_distance_matrix"},
                      {"kind", kind_name(kind)},
                      {"norm_convention", kEpochNormConvention},
                      {"epochs", epochs.size()}};
    write_matrix_file(dir / fig7_product(kind), xi_header, xi.values);
    out.products.push_back(fig7_product(kind));

    const auto dendrogram = ward_linkage(xi);
    std::string dendro = "left,right,height,size\n";
    for (const auto& m : dendrogram.merges)
      dendro += std::to_string(m.left) + "," + std::to_string(m.right) + "," +
                format_double(m.height) + "," + std::to_string(m.size) + "\n";
    write_file(dir / fig8_product(kind), dendro);
    out.products.push_back(fig8_product(kind));

    const auto raw = cut(dendrogram, config.n_states);
    const auto model = build_market_states(raw, matrices);

    std::string states = "epoch,first_date,last_date,state\n";
    json labels = json::array();
    for (std::size_t e = 0; e < epochs.size(); ++e) {
      states += std::to_string(epochs[e].index) + "," + epochs[e].first_date + "," +
                epochs[e].last_date + "," + std::to_string(model.labels[e]) + "\n";
      labels.push_back({{"epoch", epochs[e].index},
                        {"first_date", epochs[e].first_date},
                        {"last_date", epochs[e].last_date},
                        {"state", model.labels[e]}});
    }
    write_file(dir / fig9_product(kind), states);
    out.products.push_back(fig9_product(kind));

    json files = json::array();
    for (std::size_t s = 0; s < model.n_states; ++s) {
      json header = {{"type", "market_state_matrix"},
                     {"kind", kind_name(kind)},
                     {"state", s + 1},
                     {"size", model.state_sizes[s]},
                     {"mean_off_diagonal", model.state_means[s]},
                     {"tickers", model.tickers}};
      write_matrix_file(dir / fig11_product(kind, s + 1), header,
                        model.state_matrices[s]);
      out.products.push_back(fig11_product(kind, s + 1));
      files.push_back(fig11_product(kind, s + 1));
    }

    const json report = {
        {"kind", kind_name(kind)},
        {"n_states", model.n_states},
        {"state_means", model.state_means},
        {"state_sizes", model.state_sizes},
        {"state_matrix_files", files},
        {"labels", labels},
        {"linkage", "ward-lance-williams"},
        {"height_convention", "sqrt-of-squared-ward-distance"},
        {"norm_convention", kEpochNormConvention},
    };
    write_file(dir / states_product(kind), report.dump(2) + "\n");
    out.products.push_back(states_product(kind));
  }
  return out;
}

StageOutput stage_transitions(const RunConfig& config) {
  validate(config);
  const fs::path dir = config.output_dir;
  StageOutput out;
  for (const auto kind : config.kinds) {
    const fs::path path = dir / fig9_product(kind);
    std::vector<std::size_t> labels;
    for (const auto& row :
         read_csv_rows(path, {"epoch", "first_date", "last_date", "state"}))
      labels.push_back(parse_count(row[3], path));
    const auto report = json::parse(read_file(dir / states_product(kind)));
    const auto tm = transitions(labels, report.at("n_states").get<std::size_t>());

    std::string csv = "from\\to";
    for (std::size_t b = 1; b <= tm.n_states(); ++b) csv += "," + std::to_string(b);
    csv += "\n";
    for (std::size_t a = 0; a < tm.n_states(); ++a) {
      csv += std::to_string(a + 1);
      for (std::size_t b = 0; b < tm.n_states(); ++b)
        csv += "," + std::to_string(tm.counts(static_cast<Eigen::Index>(a),
                                              static_cast<Eigen::Index>(b)));
      csv += "\n";
    }
    write_file(dir / fig10_product(kind), csv);
    out.products.push_back(fig10_product(kind));
  }
  return out;
}

StageOutput stage_goe_baseline(const RunConfig& config, std::size_t n) {
  validate(config);
  const fs::path dir = config.output_dir;
  fs::create_directories(dir);
  if (n == 0) n = load_returns(dir / kReturns).stock_count();
  const double mean_pr = goe_pr_baseline(n, config.goe_trials, config.seed, config.threads);
  const json j = {{"n", n},
                  {"trials", config.goe_trials},
                  {"seed", config.seed},
                  {"mean_participation_ratio", mean_pr},
                  {"n_over_3", static_cast<double>(n) / 3.0}};
  write_file(dir / kGoe, j.dump(2) + "\n");
  return {{kGoe}};
}

json run_pipeline(const RunConfig& config) {
  validate(config);
  const fs::path dir = config.output_dir;
  fs::create_directories(dir);

  using Stage = std::function<StageOutput()>;
  const std::vector<std::pair<std::string, Stage>> stages = {
      {"ingest", [&] { return stage_ingest(config); }},
      {"correlate", [&] { return stage_correlate(config); }},
      {"spectra", [&] { return stage_spectra(config); }},
      {"moments", [&] { return stage_moments(config); }},
      {"cluster", [&] { return stage_cluster(config); }},
      {"transitions", [&] { return stage_transitions(config); }},
      {"baseline-goe", [&] { return stage_goe_baseline(config); }},
  };

  json manifest;
  manifest["tool"] = "mstates";
  manifest["config"] = to_json(config);
  manifest["conventions"] = {
      {"returns", "simple (p[t+1] - p[t]) / p[t], labelled by the later day"},
      {"epochs", "non-overlapping, trailing remainder dropped"},
      {"distance_covariance", "biased V-statistic (double centring)"},
      {"element_statistics", "strict upper triangle, population moments"},
      {"histogram_bins", "half-open [lo, hi), last bin closed"},
      {"epoch_distance_norm", kEpochNormConvention},
      {"dendrogram_height", "sqrt-of-squared-ward-distance"},
      {"eigenvector_sign", "largest-magnitude component positive"},
  };
  json timings = json::object();
  std::vector<std::pair<std::string, std::string>> written;  // (stage, product)

  std::string current;
  try {
    for (const auto& [name, stage] : stages) {
      current = name;
      const auto start = std::chrono::steady_clock::now();
      const StageOutput result = stage();
      const auto stop = std::chrono::steady_clock::now();
      timings[name] = std::chrono::duration<double, std::milli>(stop - start).count();
      for (const auto& p : result.products) written.emplace_back(name, p);
      for (const auto& [key, value] : result.timings_ms.items())
        timings[name + "." + key] = value;
    }
  } catch (const std::exception& e) {
    for (const auto& [stage, product] : written) {
      std::error_code ec;
      fs::remove(dir / product, ec);
    }
    manifest["status"] = "failed";
    manifest["failed_stage"] = current;
    manifest["error"] = e.what();
    manifest["timings_ms"] = timings;
    write_file(dir / kManifest, manifest.dump(2) + "\n");
    const std::string message = "stage '" + current + "': " + e.what();
    if (dynamic_cast<const ValidationError*>(&e)) throw ValidationError(message);
    if (dynamic_cast<const NumericError*>(&e)) throw NumericError(message);
    throw std::runtime_error(message);
  }

  const auto info = json::parse(read_file(dir / kIngestInfo));
  manifest["status"] = "ok";
  manifest["input"] = {{"path", config.input.string()},
                       {"sha256", info.at("input_sha256")}};
  manifest["counts"] = {{"stocks", info.at("stocks")},
                        {"return_days", info.at("return_days")},
                        {"epochs", read_epochs(dir).size()}};
  json products = json::array();
  for (const auto& [stage, product] : written)
    products.push_back(
        {{"path", product}, {"stage", stage}, {"sha256", sha256_file(dir / product)}});
  manifest["products"] = products;
  manifest["timings_ms"] = timings;
  write_file(dir / kManifest, manifest.dump(2) + "\n");
  return manifest;
}

}  // namespace mstates
