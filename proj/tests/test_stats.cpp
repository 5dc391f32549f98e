#include <doctest.h>

#include <algorithm>
#include <random>

#include "mstates/error.hpp"
#include "mstates/stats.hpp"

using namespace mstates;

namespace {

CorrelationMatrix from_upper(int n, const std::vector<double>& upper) {
  CorrelationMatrix m;
  m.values = Eigen::MatrixXd::Identity(n, n);
  std::size_t p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m.values(i, j) = m.values(j, i) = upper[p++];
  return m;
}

}  // namespace

TEST_CASE("constant off-diagonals are degenerate") {
  const auto m = matrix_moments(from_upper(4, std::vector<double>(6, 0.3)));
  CHECK(m.mu == doctest::Approx(0.3));
  CHECK(m.sigma == 0.0);
  CHECK(m.degenerate);
  CHECK(m.gamma1 == 0.0);
  CHECK(m.gamma2 == 0.0);
}

TEST_CASE("two-point distribution moments") {
  // N = 4 has 6 pairs: three at 0 and three at 1.
  const auto m = matrix_moments(from_upper(4, {0, 1, 0, 1, 0, 1}));
  CHECK(m.mu == 0.5);
  CHECK(m.sigma == 0.5);
  CHECK(m.gamma1 == 0.0);
  CHECK(m.gamma2 == -2.0);
  CHECK_FALSE(m.degenerate);
}

TEST_CASE("symmetric element sets have zero skewness") {
  // 10 pairs for N = 5, symmetric around 0.4.
  const auto m = matrix_moments(
      from_upper(5, {0.1, 0.2, 0.3, 0.35, 0.4, 0.4, 0.45, 0.5, 0.6, 0.7}));
  CHECK(std::abs(m.gamma1) < 1e-12);
  CHECK(m.mu == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("moments are invariant under ticker relabeling") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-0.2, 0.9);
  const int n = 12;
  std::vector<double> upper(n * (n - 1) / 2);
  for (auto& v : upper) v = u(rng);
  const auto base = from_upper(n, upper);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  CorrelationMatrix permuted = base;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) permuted.values(i, j) = base.values(perm[i], perm[j]);
  const auto a = matrix_moments(base);
  const auto b = matrix_moments(permuted);
  CHECK(a.mu == doctest::Approx(b.mu).epsilon(1e-13));
  CHECK(a.sigma == doctest::Approx(b.sigma).epsilon(1e-13));
  CHECK(a.gamma1 == doctest::Approx(b.gamma1).epsilon(1e-11));
  CHECK(a.gamma2 == doctest::Approx(b.gamma2).epsilon(1e-11));
}

TEST_CASE("histogram conventions") {
  const int n = 6;
  const auto half = histogram(from_upper(n, std::vector<double>(15, 0.5)), 2, 0.0, 1.0);
  CHECK(half.counts[0] == 0);
  CHECK(half.counts[1] == 15);

  // Bin edges of [0, 1) in 4 bins: 0, 0.25, 0.5, 0.75; hi itself lands in the last bin.
  const auto h = histogram(std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0, -0.1, 1.1}, 4, 0.0, 1.0);
  CHECK(h.counts == std::vector<std::size_t>{1, 1, 1, 2});
  CHECK(h.underflow == 1);
  CHECK(h.overflow == 1);
  CHECK(h.total() == 7);

  // Decimal edges that are not exact in binary still go to the higher bin.
  const auto tenths = histogram(std::vector<double>{0.1, 0.2, 0.3, 0.7}, 10, 0.0, 1.0);
  CHECK(tenths.counts[1] == 1);
  CHECK(tenths.counts[2] == 1);
  CHECK(tenths.counts[3] == 1);
  CHECK(tenths.counts[7] == 1);

  CHECK_THROWS_AS(histogram(std::vector<double>{}, 0, 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(histogram(std::vector<double>{}, 3, 1.0, 1.0), ValidationError);
}

TEST_CASE("histogram conserves counts and is roughly flat on uniform data") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  const int n = 120;
  std::vector<double> upper(n * (n - 1) / 2);
  for (auto& v : upper) v = u(rng);
  const auto h = histogram(from_upper(n, upper), 20, -1.0, 1.0);
  CHECK(h.total() == upper.size());

  // chi^2 with 19 degrees of freedom; 43.8 is the 0.999 quantile.
  const double inside = static_cast<double>(h.total() - h.underflow - h.overflow);
  const double expected = inside / 20.0;
  double chi2 = 0.0;
  for (auto c : h.counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < 43.8);
}
