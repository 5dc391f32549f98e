#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mstates/correlation.hpp"

namespace mstates {

/// One agglomeration step. Leaves are 1..K; the m-th merge (0-based) creates
/// node K + 1 + m. `left` is always the smaller of the two node ids.
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double height = 0.0;  // sqrt of the Ward (Lance-Williams) squared distance
  std::size_t size = 0;
};

struct Dendrogram {
  std::size_t leaf_count = 0;
  std::vector<Merge> merges;  // leaf_count - 1 entries
};

/// Relative tolerance under which two squared linkage distances are treated
/// as tied; ties go to the lexicographically smallest (left, right) pair.
inline constexpr double kWardTieTolerance = 1e-12;

/// Ward linkage via the Lance-Williams recurrence on squared distances.
/// Throws ValidationError for non-square, asymmetric, negative, non-finite
/// input or a non-zero diagonal.
Dendrogram ward_linkage(const Eigen::MatrixXd& distances);
Dendrogram ward_linkage(const EpochDistanceMatrix& xi);

/// Flat clustering with exactly n groups (the last n-1 merges undone).
/// Labels are 1..n, numbered by first appearance in epoch order.
std::vector<std::size_t> cut(const Dendrogram& dendrogram, std::size_t n);

struct MarketStateModel {
  CorrelationKind kind = CorrelationKind::Pearson;
  std::size_t n_states = 0;
  std::vector<std::string> tickers;
  std::vector<std::size_t> labels;       // per epoch, 1..n_states
  std::vector<double> state_means;       // ascending in state id
  std::vector<Eigen::MatrixXd> state_matrices;
  std::vector<std::size_t> state_sizes;
};

/// Averages the matrices of each cluster and renumbers clusters so that state
/// 1 has the lowest mean off-diagonal correlation. Input cluster ids may be
/// any positive integers; ties in the mean keep the cluster whose first epoch
/// comes earlier.
MarketStateModel build_market_states(std::span<const std::size_t> labels,
                                     std::span<const CorrelationMatrix> matrices);

struct TransitionMatrix {
  /// counts(a-1, b-1): steps t -> t+1 with label a then b.
  Eigen::Matrix<std::size_t, Eigen::Dynamic, Eigen::Dynamic> counts;

  std::size_t total() const { return counts.sum(); }
  std::size_t n_states() const { return static_cast<std::size_t>(counts.rows()); }
};

/// Counts consecutive-epoch transitions, self-transitions included.
/// n_states = 0 means "largest label". Labels must be in 1..n_states.
TransitionMatrix transitions(std::span<const std::size_t> labels,
                             std::size_t n_states = 0);

}  // namespace mstates
