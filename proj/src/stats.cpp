#include "mstates/stats.hpp"

#include <cmath>
#include <numeric>

#include "mstates/error.hpp"

namespace mstates {

std::vector<double> upper_triangle(const Eigen::MatrixXd& values) {
  std::vector<double> out;
  const Eigen::Index n = values.rows();
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) out.push_back(values(i, j));
  return out;
}

Moments sample_moments(const std::vector<double>& values) {
  if (values.empty()) throw ValidationError("moments of an empty sample");
  Moments m;
  const double count = static_cast<double>(values.size());
  m.mu = std::accumulate(values.begin(), values.end(), 0.0) / count;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - m.mu;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= count;
  m3 /= count;
  m4 /= count;
  m.sigma = std::sqrt(m2);
  if (m2 == 0.0) {
    m.degenerate = true;
    return m;
  }
  m.gamma1 = m3 / std::pow(m2, 1.5);
  m.gamma2 = m4 / (m2 * m2) - 3.0;
  return m;
}

Moments matrix_moments(const CorrelationMatrix& matrix) {
  if (matrix.size() < 2)
    throw ValidationError("moments need a matrix with N >= 2");
  Moments m = sample_moments(upper_triangle(matrix.values));
  m.epoch_index = matrix.epoch_index;
  m.kind = matrix.kind;
  return m;
}

std::size_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0}) +
         underflow + overflow;
}

double Histogram::bin_lower(std::size_t bin) const {
  return lo + (hi - lo) * static_cast<double>(bin) /
                  static_cast<double>(counts.size());
}

double Histogram::bin_upper(std::size_t bin) const {
  return bin + 1 == counts.size() ? hi : bin_lower(bin + 1);
}

Histogram histogram(const std::vector<double>& values, std::size_t bins,
                    double lo, double hi) {
  if (bins == 0) throw ValidationError("histogram needs at least one bin");
  if (!(lo < hi)) throw ValidationError("histogram range must satisfy lo < hi");
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.counts.assign(bins, 0);
  for (double v : values) {
    if (v < lo) {
      ++h.underflow;
    } else if (v > hi) {
      ++h.overflow;
    } else if (v == hi) {
      ++h.counts.back();
    } else {
      auto bin = static_cast<std::size_t>((v - lo) / (hi - lo) *
                                          static_cast<double>(bins));
      if (bin >= bins) bin = bins - 1;
      // Guard against the scaled index landing one off an exact edge.
      while (bin > 0 && v < h.bin_lower(bin)) --bin;
      while (bin + 1 < bins && v >= h.bin_lower(bin + 1)) ++bin;
      ++h.counts[bin];
    }
  }
  return h;
}

Histogram histogram(const CorrelationMatrix& matrix, std::size_t bins,
                    double lo, double hi) {
  return histogram(upper_triangle(matrix.values), bins, lo, hi);
}

}  // namespace mstates
