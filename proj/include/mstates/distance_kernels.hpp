#pragma once

// Building blocks for the distance covariance V-statistic. Two independent
// routes compute the same quantity:
//
//   dense   double-centre the L x L matrix |x_j - x_k| once per series and
//           take (1/L^2) * sum(A .* B) per pair. O(L^2) per pair, cache
//           friendly, used for epoch-sized windows.
//   sorted  expand dcov^2 = S1 + S2 - 2*S3; row sums come from prefix sums
//           over the sorted series and S1 from a Fenwick sweep in x order.
//           O(L log L) per pair, used for long horizons.
//
// Both return the raw (unclamped) value so callers can count round-off
// clamps.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mstates::kernels {

/// Double-centred pairwise absolute-distance matrix of a scalar series.
Eigen::MatrixXd double_centered_distances(std::span<const double> x);

/// (1/L^2) * sum_jk A_jk B_jk for two double-centred matrices of equal size.
double dense_dcov_sq(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Per-series data for the sorted route, computed once and reused across
/// every pairing of that series.
struct SortedSeries {
  std::vector<double> values;       // shifted by the series mean
  std::vector<std::size_t> order;   // indices sorted by value (stable)
  std::vector<std::size_t> rank;    // dense rank of values[j] among distinct values
  std::size_t distinct = 0;
  std::vector<double> row_sums;     // sum_k |x_j - x_k|
  double total = 0.0;               // sum of row_sums
};

SortedSeries prepare_sorted(std::span<const double> x);

double sorted_dcov_sq(const SortedSeries& x, const SortedSeries& y);

/// True when every element equals the first (all distances vanish).
bool is_constant(std::span<const double> x);

}  // namespace mstates::kernels
