#include "mstates/distance_kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace mstates::kernels {

bool is_constant(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(),
                     [&](double v) { return v == x.front(); });
}

Eigen::MatrixXd double_centered_distances(std::span<const double> x) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    a(j, j) = 0.0;
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const double d = std::abs(x[static_cast<std::size_t>(j)] -
                                x[static_cast<std::size_t>(k)]);
      a(j, k) = d;
      a(k, j) = d;
    }
  }
  // a is symmetric, so row means and column means coincide.
  const Eigen::VectorXd row_mean = a.rowwise().mean();
  const double grand_mean = row_mean.mean();
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < n; ++j)
      a(j, k) += grand_mean - row_mean(j) - row_mean(k);
  return a;
}

double dense_dcov_sq(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double n = static_cast<double>(a.rows());
  return a.cwiseProduct(b).sum() / (n * n);
}

SortedSeries prepare_sorted(std::span<const double> x) {
  SortedSeries s;
  const std::size_t n = x.size();
  const double mean =
      n == 0 ? 0.0 : std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  s.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) s.values[j] = x[j] - mean;

  s.order.resize(n);
  std::iota(s.order.begin(), s.order.end(), std::size_t{0});
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return s.values[a] < s.values[b];
                   });

  s.rank.assign(n, 0);
  std::size_t r = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (p > 0 && s.values[s.order[p]] != s.values[s.order[p - 1]]) ++r;
    s.rank[s.order[p]] = r;
  }
  s.distinct = n == 0 ? 0 : r + 1;

  // sum_k |x_j - x_k| from prefix sums over the sorted values.
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t p = 0; p < n; ++p)
    prefix[p + 1] = prefix[p] + s.values[s.order[p]];
  s.row_sums.assign(n, 0.0);
  for (std::size_t p = 0; p < n; ++p) {
    const double v = s.values[s.order[p]];
    const double below = static_cast<double>(p) * v - prefix[p];
    const double above =
        (prefix[n] - prefix[p + 1]) - static_cast<double>(n - 1 - p) * v;
    s.row_sums[s.order[p]] = below + above;
  }
  s.total = std::accumulate(s.row_sums.begin(), s.row_sums.end(), 0.0);
  return s;
}

namespace {

// Fenwick tree over y ranks holding count, sum x, sum y, sum xy.
class MomentFenwick {
 public:
  explicit MomentFenwick(std::size_t size) : tree_(size + 1) {}

  void add(std::size_t rank, double x, double y) {
    for (std::size_t i = rank + 1; i < tree_.size(); i += i & (~i + 1)) {
      tree_[i][0] += 1.0;
      tree_[i][1] += x;
      tree_[i][2] += y;
      tree_[i][3] += x * y;
    }
  }

  // Sums over ranks [0, rank].
  std::array<double, 4> prefix(std::size_t rank) const {
    std::array<double, 4> out{};
    for (std::size_t i = rank + 1; i > 0; i -= i & (~i + 1))
      for (int q = 0; q < 4; ++q) out[q] += tree_[i][q];
    return out;
  }

 private:
  std::vector<std::array<double, 4>> tree_;
};

}  // namespace

double sorted_dcov_sq(const SortedSeries& x, const SortedSeries& y) {
  const std::size_t n = x.values.size();
  if (n == 0) return 0.0;
  const double nd = static_cast<double>(n);

  // S1: sum over pairs k before j in x order of (x_j - x_k) |y_j - y_k|.
  MomentFenwick fenwick(y.distinct);
  std::array<double, 4> seen{};
  double pair_sum = 0.0;
  for (const std::size_t j : x.order) {
    const double xj = x.values[j];
    const double yj = y.values[j];
    const std::array<double, 4> low = fenwick.prefix(y.rank[j]);
    const std::array<double, 4> high = {seen[0] - low[0], seen[1] - low[1],
                                        seen[2] - low[2], seen[3] - low[3]};
    auto signed_sum = [&](const std::array<double, 4>& m) {
      return m[0] * xj * yj - xj * m[2] - yj * m[1] + m[3];
    };
    pair_sum += signed_sum(low) - signed_sum(high);
    fenwick.add(y.rank[j], xj, yj);
    seen[0] += 1.0;
    seen[1] += xj;
    seen[2] += yj;
    seen[3] += xj * yj;
  }
  const double s1 = 2.0 * pair_sum / (nd * nd);
  const double s2 = (x.total / (nd * nd)) * (y.total / (nd * nd));
  double cross = 0.0;
  for (std::size_t j = 0; j < n; ++j) cross += x.row_sums[j] * y.row_sums[j];
  const double s3 = cross / (nd * nd * nd);
  return s1 + s2 - 2.0 * s3;
}

}  // namespace mstates::kernels
