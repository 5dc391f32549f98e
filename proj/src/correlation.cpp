#include "mstates/correlation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "mstates/distance_kernels.hpp"
#include "mstates/error.hpp"
#include "mstates/matrix_io.hpp"
#include "mstates/parallel.hpp"

namespace mstates {

std::string_view to_string(CorrelationKind kind) {
  return kind == CorrelationKind::Pearson ? "pearson" : "distance";
}

CorrelationKind parse_kind(std::string_view text) {
  if (text == "pearson" || text == "pcc") return CorrelationKind::Pearson;
  if (text == "distance" || text == "dcc") return CorrelationKind::Distance;
  throw ValidationError("unknown correlation kind '" + std::string(text) + "'");
}

namespace {

// (x - mean) / ||x - mean||; empty when the series is constant.
std::vector<double> standardize(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  std::vector<double> z(x.size());
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    z[i] = x[i] - mean;
    norm_sq += z[i] * z[i];
  }
  if (norm_sq == 0.0) return {};
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& v : z) v *= inv;
  return z;
}

double dot_clamped(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return std::clamp(s, -1.0, 1.0);
}

// dcov^2 / sqrt(dvar_x * dvar_y), clamped into [0, 1].
double dcor_from_parts(double dcov_sq, double dvar_x, double dvar_y) {
  if (dcov_sq <= 0.0) return 0.0;
  return std::clamp(std::sqrt(dcov_sq / std::sqrt(dvar_x * dvar_y)), 0.0, 1.0);
}

void require_same_length(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw ValidationError("series lengths differ (" + std::to_string(x.size()) +
                          " vs " + std::to_string(y.size()) + ")");
  if (x.size() < 2)
    throw ValidationError("series need at least 2 observations");
}

double raw_dcov_sq(std::span<const double> x, std::span<const double> y) {
  if (x.size() <= CorrelationOptions{}.dense_max_length)
    return kernels::dense_dcov_sq(kernels::double_centered_distances(x),
                                  kernels::double_centered_distances(y));
  return kernels::sorted_dcov_sq(kernels::prepare_sorted(x),
                                 kernels::prepare_sorted(y));
}

std::span<const double> row_span(const RowMatrix& m, Eigen::Index i) {
  return {m.data() + i * m.cols(), static_cast<std::size_t>(m.cols())};
}

std::string epoch_label(std::size_t epoch_index) {
  return epoch_index == kFullHorizon ? std::string("full-horizon")
                                     : "epoch " + std::to_string(epoch_index);
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  require_same_length(x, y);
  const auto zx = standardize(x);
  if (zx.empty()) throw NumericError("pearson: first series has zero variance");
  const auto zy = standardize(y);
  if (zy.empty()) throw NumericError("pearson: second series has zero variance");
  return dot_clamped(zx, zy);
}

double distance_covariance_sq(std::span<const double> x,
                              std::span<const double> y) {
  require_same_length(x, y);
  return std::max(0.0, raw_dcov_sq(x, y));
}

DistanceCorrelation distance_correlation(std::span<const double> x,
                                         std::span<const double> y) {
  require_same_length(x, y);
  if (kernels::is_constant(x) || kernels::is_constant(y))
    return {0.0, true};
  const double dvar_x = raw_dcov_sq(x, x);
  const double dvar_y = raw_dcov_sq(y, y);
  if (dvar_x <= 0.0 || dvar_y <= 0.0) return {0.0, true};
  return {dcor_from_parts(raw_dcov_sq(x, y), dvar_x, dvar_y), false};
}

CorrelationMatrix correlation_matrix(const RowMatrix& series,
                                     CorrelationKind kind,
                                     const std::vector<std::string>& tickers,
                                     std::size_t epoch_index,
                                     const CorrelationOptions& options) {
  const Eigen::Index n = series.rows();
  const std::size_t length = static_cast<std::size_t>(series.cols());
  if (static_cast<std::size_t>(n) != tickers.size())
    throw ValidationError("ticker count does not match series rows");
  if (n < 1) throw ValidationError("correlation matrix needs at least 1 series");
  if (length < 2)
    throw ValidationError("correlation needs at least 2 observations per series");

  CorrelationMatrix out;
  out.kind = kind;
  out.epoch_index = epoch_index;
  out.tickers = tickers;
  out.values = Eigen::MatrixXd::Identity(n, n);
  const auto count = static_cast<std::size_t>(n);

  if (kind == CorrelationKind::Pearson) {
    std::vector<std::vector<double>> z(count);
    for (std::size_t i = 0; i < count; ++i) {
      z[i] = standardize(row_span(series, static_cast<Eigen::Index>(i)));
      if (z[i].empty())
        throw NumericError("constant series for ticker '" + tickers[i] +
                           "' in " + epoch_label(epoch_index) +
                           "; Pearson correlation undefined");
    }
    parallel_for(count, options.threads, [&](std::size_t i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        const double r = dot_clamped(z[i], z[j]);
        out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r;
        out.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = r;
      }
    });
    return out;
  }

  std::vector<char> degenerate(count, 0);
  std::vector<double> dvar(count, 0.0);
  const bool dense = length <= options.dense_max_length;
  std::vector<Eigen::MatrixXd> centered(dense ? count : 0);
  std::vector<kernels::SortedSeries> sorted(dense ? 0 : count);

  // Each series is centred (or sorted) once and reused across its pairings.
  parallel_for(count, options.threads, [&](std::size_t i) {
    const auto x = row_span(series, static_cast<Eigen::Index>(i));
    if (dense) {
      centered[i] = kernels::double_centered_distances(x);
      dvar[i] = kernels::dense_dcov_sq(centered[i], centered[i]);
    } else {
      sorted[i] = kernels::prepare_sorted(x);
      dvar[i] = kernels::sorted_dcov_sq(sorted[i], sorted[i]);
    }
    degenerate[i] = kernels::is_constant(x) || dvar[i] <= 0.0;
  });

  std::vector<std::size_t> clamps(count, 0);
  parallel_for(count, options.threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      double value = 0.0;
      if (!degenerate[i] && !degenerate[j]) {
        const double raw = dense ? kernels::dense_dcov_sq(centered[i], centered[j])
                                 : kernels::sorted_dcov_sq(sorted[i], sorted[j]);
        if (raw < 0.0) ++clamps[i];
        value = dcor_from_parts(raw, dvar[i], dvar[j]);
      }
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
      out.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = value;
    }
  });

  for (std::size_t i = 0; i < count; ++i) {
    if (degenerate[i]) out.degenerate_tickers.push_back(tickers[i]);
    out.clamp_events += clamps[i];
  }
  return out;
}

CorrelationMatrix correlation_matrix(const Epoch& epoch, CorrelationKind kind,
                                     const std::vector<std::string>& tickers,
                                     const CorrelationOptions& options) {
  auto out = correlation_matrix(epoch.returns, kind, tickers, epoch.index, options);
  out.first_date = epoch.first_date;
  out.last_date = epoch.last_date;
  return out;
}

CorrelationMatrix correlation_matrix(const ReturnPanel& panel,
                                     CorrelationKind kind,
                                     const CorrelationOptions& options) {
  auto out = correlation_matrix(panel.returns, kind, panel.tickers, kFullHorizon,
                                options);
  if (!panel.dates.empty()) {
    out.first_date = panel.dates.front();
    out.last_date = panel.dates.back();
  }
  return out;
}

double mean_off_diagonal(const Eigen::MatrixXd& values) {
  const Eigen::Index n = values.rows();
  if (n < 2) return 0.0;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) sum += values(i, j);
  return sum / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

EpochDistanceMatrix epoch_distance_matrix(
    std::span<const CorrelationMatrix> matrices, unsigned threads) {
  EpochDistanceMatrix out;
  const std::size_t k = matrices.size();
  if (k == 0) throw ValidationError("no correlation matrices to compare");
  out.kind = matrices.front().kind;
  const Eigen::Index n = matrices.front().size();
  for (const auto& m : matrices) {
    if (m.kind != out.kind)
      throw ValidationError("epoch distance matrix needs a single correlation kind");
    if (m.size() != n || m.values.cols() != n)
      throw ValidationError("correlation matrices differ in dimension");
  }

  // Pack strict upper triangles so each distance is a flat vector norm.
  const Eigen::Index m = n * (n - 1) / 2;
  Eigen::MatrixXd packed(m, static_cast<Eigen::Index>(k));
  for (std::size_t e = 0; e < k; ++e) {
    Eigen::Index p = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j)
        packed(p++, static_cast<Eigen::Index>(e)) = matrices[e].values(i, j);
  }

  out.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k),
                                     static_cast<Eigen::Index>(k));
  parallel_for(k, threads, [&](std::size_t a) {
    const auto ai = static_cast<Eigen::Index>(a);
    for (Eigen::Index b = ai + 1; b < static_cast<Eigen::Index>(k); ++b) {
      const double d = (packed.col(ai) - packed.col(b)).norm();
      out.values(ai, b) = d;
      out.values(b, ai) = d;
    }
  });
  return out;
}

void write_correlation_matrix(const CorrelationMatrix& matrix,
                              const std::filesystem::path& path) {
  nlohmann::json header;
  header["type"] = "correlation_matrix";
  header["kind"] = to_string(matrix.kind);
  if (matrix.is_full_horizon())
    header["epoch"] = "full-horizon";
  else
    header["epoch"] = matrix.epoch_index;
  header["first_date"] = matrix.first_date;
  header["last_date"] = matrix.last_date;
  header["tickers"] = matrix.tickers;
  header["degenerate_tickers"] = matrix.degenerate_tickers;
  header["clamp_events"] = matrix.clamp_events;
  header["norm_convention"] = kEpochNormConvention;
  write_matrix_file(path, header, matrix.values);
}

CorrelationMatrix read_correlation_matrix(const std::filesystem::path& path) {
  auto file = read_matrix_file(path);
  const auto& h = file.header;
  CorrelationMatrix out;
  try {
    if (h.at("type") != "correlation_matrix")
      throw ValidationError(path.string() + ": not a correlation matrix file");
    out.kind = parse_kind(h.at("kind").get<std::string>());
    const auto& epoch = h.at("epoch");
    out.epoch_index = epoch.is_string() ? kFullHorizon : epoch.get<std::size_t>();
    out.first_date = h.value("first_date", "");
    out.last_date = h.value("last_date", "");
    out.tickers = h.at("tickers").get<std::vector<std::string>>();
    out.degenerate_tickers =
        h.value("degenerate_tickers", std::vector<std::string>{});
    out.clamp_events = h.value("clamp_events", std::size_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": bad header: " + e.what());
  }
  const auto n = static_cast<Eigen::Index>(out.tickers.size());
  if (file.values.rows() != n || file.values.cols() != n)
    throw ValidationError(path.string() + ": matrix shape does not match tickers");
  out.values = std::move(file.values);
  return out;
}

}  // namespace mstates
