#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mstates/timeseries.hpp"

namespace mstates {

enum class CorrelationKind { Pearson, Distance };

std::string_view to_string(CorrelationKind kind);
/// Accepts "pearson"/"pcc" and "distance"/"dcc" (case-sensitive lowercase).
CorrelationKind parse_kind(std::string_view text);

/// epoch_index value reserved for the whole return history.
inline constexpr std::size_t kFullHorizon = 0;

/// Norm convention used for the distance between correlation matrices.
inline constexpr std::string_view kEpochNormConvention = "strict-upper-triangle";

/// Pearson coefficient of two equal-length series, clamped to [-1, 1].
/// Throws NumericError when either series has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Biased (V-statistic) squared distance covariance via double centring.
/// Negative round-off is clamped to 0.
double distance_covariance_sq(std::span<const double> x,
                              std::span<const double> y);

struct DistanceCorrelation {
  double value = 0.0;
  /// Set when either series is constant; value is then 0.
  bool degenerate = false;
};

DistanceCorrelation distance_correlation(std::span<const double> x,
                                         std::span<const double> y);

struct CorrelationMatrix {
  CorrelationKind kind = CorrelationKind::Pearson;
  std::size_t epoch_index = kFullHorizon;
  std::string first_date;
  std::string last_date;
  std::vector<std::string> tickers;
  Eigen::MatrixXd values;
  /// Distance kind only: constant series whose off-diagonal row is forced to 0.
  std::vector<std::string> degenerate_tickers;
  /// Number of pairs whose squared distance covariance was clamped at 0.
  std::size_t clamp_events = 0;

  bool is_full_horizon() const { return epoch_index == kFullHorizon; }
  Eigen::Index size() const { return values.rows(); }
};

struct CorrelationOptions {
  unsigned threads = 1;
  /// Windows up to this length use the dense double-centring kernel;
  /// longer ones use the O(L log L) sorted kernel.
  std::size_t dense_max_length = 128;
};

/// Correlation matrix over the rows of `series` (N x L).
/// Pearson: throws NumericError naming the ticker if any row is constant.
CorrelationMatrix correlation_matrix(const RowMatrix& series,
                                     CorrelationKind kind,
                                     const std::vector<std::string>& tickers,
                                     std::size_t epoch_index,
                                     const CorrelationOptions& options = {});

CorrelationMatrix correlation_matrix(const Epoch& epoch, CorrelationKind kind,
                                     const std::vector<std::string>& tickers,
                                     const CorrelationOptions& options = {});

/// Full-horizon matrix over every return day.
CorrelationMatrix correlation_matrix(const ReturnPanel& panel,
                                     CorrelationKind kind,
                                     const CorrelationOptions& options = {});

/// Mean of the strict upper triangle.
double mean_off_diagonal(const Eigen::MatrixXd& values);

/// Pairwise Euclidean distances between epochs' correlation matrices.
struct EpochDistanceMatrix {
  CorrelationKind kind = CorrelationKind::Pearson;
  Eigen::MatrixXd values;  // K x K

  Eigen::Index size() const { return values.rows(); }
};

/// xi(a, b) = || upper(C_a) - upper(C_b) ||_2 over the strict upper triangle.
/// Throws ValidationError on mixed kinds or dimensions.
EpochDistanceMatrix epoch_distance_matrix(
    std::span<const CorrelationMatrix> matrices, unsigned threads = 1);

/// Matrix-file round trip (JSON header carries kind, epoch, tickers, dates).
void write_correlation_matrix(const CorrelationMatrix& matrix,
                              const std::filesystem::path& path);
CorrelationMatrix read_correlation_matrix(const std::filesystem::path& path);

}  // namespace mstates
