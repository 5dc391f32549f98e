#include <doctest.h>

#include <cmath>
#include <random>

#include "mstates/error.hpp"
#include "mstates/spectral.hpp"
#include "synthetic.hpp"

using namespace mstates;

namespace {

Eigen::MatrixXd random_correlation(std::mt19937_64& rng, int n, int observations) {
  std::normal_distribution<double> normal;
  RowMatrix x(n, observations);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = normal(rng);
  std::vector<std::string> tickers(static_cast<std::size_t>(n), "t");
  return correlation_matrix(x, CorrelationKind::Pearson, tickers, 1).values;
}

}  // namespace

TEST_CASE("identity and 2x2 spectra") {
  const auto s = eigendecompose(Eigen::MatrixXd::Identity(4, 4));
  for (int k = 0; k < 4; ++k) CHECK(s.eigenvalues(k) == doctest::Approx(1.0));
  const auto summary = spectrum_summary(s);
  CHECK(summary.e_max == doctest::Approx(1.0));
  CHECK(summary.zero_count == 0);

  Eigen::MatrixXd two(2, 2);
  two << 1, 0.3, 0.3, 1;
  const auto t = eigendecompose(two);
  CHECK(t.eigenvalues(0) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(t.eigenvalues(1) == doctest::Approx(1.3).epsilon(1e-14));
  CHECK(t.participation_ratios(1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("all-ones correlation is a perfectly collective mode") {
  const int n = 7;
  const auto s = eigendecompose(Eigen::MatrixXd::Ones(n, n));
  const auto summary = spectrum_summary(s);
  CHECK(summary.e_max == doctest::Approx(n).epsilon(1e-13));
  CHECK(summary.pr_e_max == doctest::Approx(n).epsilon(1e-12));
  CHECK(summary.zero_count == n - 1);
  for (int i = 0; i < n; ++i) CHECK(s.eigenvectors(i, n - 1) > 0.0);
}

TEST_CASE("non-symmetric input is rejected") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
  m(0, 2) = 0.1;
  CHECK_THROWS_AS(eigendecompose(m), ValidationError);
}

TEST_CASE("participation ratio identities") {
  CHECK(participation_ratio(std::vector<double>{0, 1, 0, 0}) == 1.0);
  const int n = 9;
  std::vector<double> uniform(n, 1.0 / 3.0);
  CHECK(participation_ratio(uniform) == doctest::Approx(9.0).epsilon(1e-14));
  std::vector<double> pair(5, 0.0);
  pair[0] = pair[1] = 1.0 / std::sqrt(2.0);
  CHECK(participation_ratio(pair) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(participation_ratio(std::vector<double>{1, 1}), ValidationError);
}

TEST_CASE("spectral invariants on random correlation matrices") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial * 5;
    const Eigen::MatrixXd c = random_correlation(rng, n, 10 + trial * 3);
    const auto s = eigendecompose(c);

    CHECK(std::abs(s.eigenvalues.sum() - n) <= 1e-10 * n);
    for (int k = 1; k < n; ++k) CHECK(s.eigenvalues(k - 1) <= s.eigenvalues(k));
    CHECK(s.eigenvalues.minCoeff() >= -1e-10);

    const Eigen::MatrixXd gram = s.eigenvectors.transpose() * s.eigenvectors;
    CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-9);

    const Eigen::MatrixXd rebuilt =
        s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.transpose();
    CHECK((rebuilt - c).cwiseAbs().maxCoeff() <= 1e-8);

    for (int k = 0; k < n; ++k) {
      CHECK(s.participation_ratios(k) >= 1.0 - 1e-12);
      CHECK(s.participation_ratios(k) <= n + 1e-9);
    }

    // Rayleigh quotient with the uniform vector bounds E_max from below.
    const double mean_off = mean_off_diagonal(c);
    CHECK(spectrum_summary(s).e_max >= 1.0 + (n - 1) * mean_off - 1e-10);
  }
}

TEST_CASE("rank bound: L observations leave at least N - L + 1 zero modes") {
  std::mt19937_64 rng(12);
  const int n = 60, l = 15;
  const auto s = eigendecompose(random_correlation(rng, n, l));
  CHECK(spectrum_summary(s, 1e-8).zero_count >= static_cast<std::size_t>(n - l + 1));
}

TEST_CASE("PR bounds on fuzzed symmetric matrices") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 30;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m(i, j) = m(j, i) = normal(rng);
    const auto s = eigendecompose(m);
    CHECK(s.participation_ratios.minCoeff() >= 1.0 - 1e-12);
    CHECK(s.participation_ratios.maxCoeff() <= n + 1e-9);
  }
}

TEST_CASE("sign convention is deterministic") {
  std::mt19937_64 rng(2);
  const Eigen::MatrixXd c = random_correlation(rng, 10, 40);
  const auto a = eigendecompose(c);
  const auto b = eigendecompose(c);
  CHECK(a.eigenvectors == b.eigenvectors);
  for (int k = 0; k < 10; ++k) {
    Eigen::Index idx = 0;
    a.eigenvectors.col(k).cwiseAbs().maxCoeff(&idx);
    CHECK(a.eigenvectors(idx, k) > 0.0);
  }
}

TEST_CASE("GOE baseline") {
  SUBCASE("determinism and thread independence") {
    CHECK(goe_pr_baseline(20, 5, 9, 1) == goe_pr_baseline(20, 5, 9, 1));
    CHECK(goe_pr_baseline(20, 5, 9, 1) == goe_pr_baseline(20, 5, 9, 3));
    CHECK(goe_pr_baseline(20, 5, 9) != goe_pr_baseline(20, 5, 10));
  }
  SUBCASE("N = 2: Haar-random eigenvectors give mean PR sqrt(2)") {
    // v = (cos t, sin t), PR = 1 / (1 - sin^2(2t) / 2); its average over a
    // uniform angle is 1 / sqrt(1 - 1/2).
    CHECK(goe_pr_baseline(2, 100000, 3) == doctest::Approx(std::sqrt(2.0)).epsilon(0.01));
  }
  SUBCASE("moderate N is close to N/3") {
    const double pr = goe_pr_baseline(90, 20, 4);
    CHECK(pr == doctest::Approx(90.0 / 3.0).epsilon(0.05));
  }
  CHECK_THROWS_AS(goe_pr_baseline(1, 1, 0), ValidationError);
  CHECK_THROWS_AS(goe_pr_baseline(5, 0, 0), ValidationError);
}
