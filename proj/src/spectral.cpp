#include "mstates/spectral.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "mstates/error.hpp"
#include "mstates/parallel.hpp"

namespace mstates {

namespace {

double unchecked_pr(const Eigen::Ref<const Eigen::VectorXd>& v) {
  return 1.0 / v.array().square().square().sum();
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(best))) best = i;
  if (v(best) < 0.0) v = -v;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

Spectrum eigendecompose(const Eigen::MatrixXd& matrix) {
  const Eigen::Index n = matrix.rows();
  if (matrix.cols() != n) throw ValidationError("eigendecompose: matrix not square");
  if (n == 0) throw ValidationError("eigendecompose: empty matrix");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (matrix(i, j) != matrix(j, i))
        throw ValidationError("eigendecompose: matrix not symmetric at (" +
                              std::to_string(i) + ", " + std::to_string(j) + ")");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
  if (solver.info() != Eigen::Success)
    throw NumericError("eigendecompose: solver did not converge");

  Spectrum out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  out.participation_ratios.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double& lambda = out.eigenvalues(k);
    if (lambda < 0.0) {
      if (lambda >= -kNegativeClampTolerance) {
        lambda = 0.0;
        ++out.clamped_negatives;
      } else {
        ++out.negative_eigenvalues;
      }
    }
    fix_sign(out.eigenvectors.col(k));
    out.participation_ratios(k) = unchecked_pr(out.eigenvectors.col(k));
  }
  return out;
}

Spectrum eigendecompose(const CorrelationMatrix& matrix) {
  Spectrum out = eigendecompose(matrix.values);
  out.epoch_index = matrix.epoch_index;
  out.kind = matrix.kind;
  return out;
}

double participation_ratio(std::span<const double> v) {
  if (v.empty()) throw ValidationError("participation_ratio: empty vector");
  double norm_sq = 0.0;
  double fourth = 0.0;
  for (double c : v) {
    norm_sq += c * c;
    fourth += c * c * c * c;
  }
  if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-10)
    throw ValidationError("participation_ratio: vector is not unit length");
  return 1.0 / fourth;
}

double goe_pr_baseline(std::size_t n, std::size_t trials, std::uint64_t seed,
                       unsigned threads) {
  if (n < 2) throw ValidationError("GOE baseline needs N >= 2");
  if (trials < 1) throw ValidationError("GOE baseline needs at least one trial");

  std::vector<double> trial_sums(trials, 0.0);
  parallel_for(trials, threads, [&](std::size_t t) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(t)));
    std::normal_distribution<double> normal(0.0, 1.0);
    const double off_sd = std::sqrt(1.0 / static_cast<double>(n));
    const double diag_sd = std::sqrt(2.0 / static_cast<double>(n));
    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd h(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      h(i, i) = diag_sd * normal(rng);
      for (Eigen::Index j = i + 1; j < dim; ++j) {
        h(i, j) = off_sd * normal(rng);
        h(j, i) = h(i, j);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success)
      throw NumericError("GOE baseline: solver did not converge");
    double sum = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k)
      sum += unchecked_pr(solver.eigenvectors().col(k));
    trial_sums[t] = sum;
  });

  double total = 0.0;
  for (double s : trial_sums) total += s;
  return total / (static_cast<double>(trials) * static_cast<double>(n));
}

SpectrumSummary spectrum_summary(const Spectrum& spectrum,
                                 double zero_threshold) {
  SpectrumSummary out;
  out.epoch_index = spectrum.epoch_index;
  out.kind = spectrum.kind;
  const Eigen::Index n = spectrum.eigenvalues.size();
  if (n == 0) return out;
  out.e_max = spectrum.eigenvalues(n - 1);
  out.pr_e_max = spectrum.participation_ratios(n - 1);
  for (Eigen::Index k = 0; k < n; ++k)
    if (spectrum.eigenvalues(k) < zero_threshold) ++out.zero_count;
  out.mean_pr = spectrum.participation_ratios.mean();
  return out;
}

}  // namespace mstates
