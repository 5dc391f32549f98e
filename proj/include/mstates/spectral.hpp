#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "mstates/correlation.hpp"

namespace mstates {

/// Eigenvalues with magnitude below this that come out negative are set to 0.
inline constexpr double kNegativeClampTolerance = 1e-10;
inline constexpr double kDefaultZeroThreshold = 1e-8;

struct Spectrum {
  std::size_t epoch_index = kFullHorizon;
  CorrelationKind kind = CorrelationKind::Pearson;
  Eigen::VectorXd eigenvalues;          // ascending
  Eigen::MatrixXd eigenvectors;         // column k pairs with eigenvalues(k)
  Eigen::VectorXd participation_ratios; // PR of column k
  /// Tiny negative eigenvalues (round-off) that were clamped to 0.
  std::size_t clamped_negatives = 0;
  /// Eigenvalues below -kNegativeClampTolerance, kept as computed. Distance
  /// correlation matrices are not guaranteed positive semidefinite.
  std::size_t negative_eigenvalues = 0;
};

struct SpectrumSummary {
  std::size_t epoch_index = kFullHorizon;
  CorrelationKind kind = CorrelationKind::Pearson;
  double e_max = 0.0;
  double pr_e_max = 0.0;
  std::size_t zero_count = 0;
  double mean_pr = 0.0;
};

/// Full symmetric eigendecomposition; each eigenvector is signed so its
/// largest-magnitude component (first on ties) is positive.
/// Throws ValidationError if the matrix is not exactly symmetric.
Spectrum eigendecompose(const CorrelationMatrix& matrix);
Spectrum eigendecompose(const Eigen::MatrixXd& matrix);

/// 1 / sum v_i^4 for a unit vector. Throws ValidationError when |v| deviates
/// from 1 by more than 1e-10.
double participation_ratio(std::span<const double> v);

/// Mean participation ratio over all eigenvectors of `trials` GOE matrices
/// (off-diagonal variance 1/N, diagonal variance 2/N). Trial t draws from its
/// own stream keyed by (seed, t), so the result is independent of `threads`.
double goe_pr_baseline(std::size_t n, std::size_t trials, std::uint64_t seed,
                       unsigned threads = 1);

SpectrumSummary spectrum_summary(const Spectrum& spectrum,
                                 double zero_threshold = kDefaultZeroThreshold);

}  // namespace mstates
