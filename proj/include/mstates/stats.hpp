#pragma once

#include <cstddef>
#include <vector>

#include "mstates/correlation.hpp"

namespace mstates {

/// Population moments of the off-diagonal elements (each unordered pair once).
struct Moments {
  std::size_t epoch_index = kFullHorizon;
  CorrelationKind kind = CorrelationKind::Pearson;
  double mu = 0.0;
  double sigma = 0.0;
  double gamma1 = 0.0;  // skewness m3 / m2^1.5
  double gamma2 = 0.0;  // excess kurtosis m4 / m2^2 - 3
  bool degenerate = false;  // sigma == 0; gamma1 = gamma2 = 0
};

Moments matrix_moments(const CorrelationMatrix& matrix);

/// Moments of an arbitrary sample, same conventions.
Moments sample_moments(const std::vector<double>& values);

/// Counts over [lo, hi) split into equal bins; the last bin also takes hi.
struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::size_t> counts;
  std::size_t underflow = 0;  // value < lo
  std::size_t overflow = 0;   // value > hi

  std::size_t total() const;
  double bin_lower(std::size_t bin) const;
  double bin_upper(std::size_t bin) const;
};

/// Histogram of the strict upper triangle. Throws ValidationError when
/// bins == 0 or lo >= hi.
Histogram histogram(const CorrelationMatrix& matrix, std::size_t bins,
                    double lo, double hi);

Histogram histogram(const std::vector<double>& values, std::size_t bins,
                    double lo, double hi);

/// Strict upper triangle in row-major order.
std::vector<double> upper_triangle(const Eigen::MatrixXd& values);

}  // namespace mstates
