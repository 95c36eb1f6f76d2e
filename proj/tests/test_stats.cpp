#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "xorlab/errors.hpp"
#include "xorlab/rng.hpp"
#include "xorlab/stats.hpp"

using namespace xorlab;

TEST_CASE("hypergeometric pmf values") {
  CHECK(hypergeo_pmf({10, 5, 10}, 5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hypergeo_pmf({4, 2, 2}, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(hypergeo_pmf({4, 2, 2}, 3) == 0.0);
  CHECK(hypergeo_pmf({10, 8, 5}, 2) == 0.0);
  CHECK_THROWS_AS(hypergeo_pmf({5, 6, 2}, 1), std::invalid_argument);
  CHECK_THROWS_AS(hypergeo_pmf({5, 2, 6}, 1), std::invalid_argument);
}

TEST_CASE("hypergeometric pmf against exact counting") {
  Rng rng(1);
  for (int rep = 0; rep < 100; ++rep) {
    const int m = 1 + static_cast<int>(rng.below(60));
    const int K = static_cast<int>(rng.below(static_cast<std::uint64_t>(m) + 1));
    const int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(m) + 1));
    for (int h = 0; h <= s; ++h) {
      const double ref = oracle::hypergeo_count_pmf(m, K, s, h);
      const double got = hypergeo_pmf({m, K, s}, h);
      if (ref == 0)
        CHECK(got == 0.0);
      else
        CHECK(std::abs(got - ref) <= 1e-10 * ref);
    }
  }
}

TEST_CASE("hypergeometric pmf normalises") {
  Rng rng(2);
  for (int rep = 0; rep < 100; ++rep) {
    const std::int64_t m = 1 + static_cast<std::int64_t>(rng.below(500));
    const HypergeoSpec spec{m, static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m) + 1)),
                            static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m) + 1))};
    double total = 0;
    for (std::int64_t h = spec.support_min(); h <= spec.support_max(); ++h) total += hypergeo_pmf(spec, h);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
  const HypergeoSpec large{1000000, 400000, 300000};
  const double p = hypergeo_pmf(large, 120000);
  CHECK(std::isfinite(p));
  CHECK(p > 0);
}

TEST_CASE("bound closed forms") {
  const HypergeoSpec full{50, 20, 50};
  CHECK(serfling_bound(full, 0.1) == doctest::Approx(2 * std::exp(-2 * 0.01 * 2500)));
  CHECK(hoeffding_bound({50, 20, 10}, 0.0) == 2.0);
  const HypergeoSpec spec{100, 50, 20};
  CHECK(chvatal_bound(spec, 0.2, TailSide::upper) ==
        doctest::Approx(std::exp(-20 * (0.7 * std::log(0.7 / 0.5) + 0.3 * std::log(0.3 / 0.5)))).epsilon(1e-14));
  CHECK(binary_kl(0.5, 0.5) == 0.0);
  CHECK(chvatal_bound(spec, 1e-9, TailSide::lower) == doctest::Approx(1.0));
  CHECK_THROWS_AS(chvatal_bound(spec, 0.5, TailSide::upper), std::invalid_argument);
  CHECK_THROWS_AS(chvatal_bound(spec, 0.0, TailSide::lower), std::invalid_argument);
  CHECK_THROWS_AS(chvatal_bound({100, 30, 20}, 0.3, TailSide::lower), std::invalid_argument);
  const HypergeoSpec s2{40, 10, 15};
  CHECK(serfling_bound(s2, 1.5) <= 2 * std::exp(-2.0 * 15 * 40 / 26) + 1e-15);
}

TEST_CASE("bounds dominate exact tails") {
  Rng rng(3);
  int chvatal_cases = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const std::int64_t m = 2 + static_cast<std::int64_t>(rng.below(499));
    const std::int64_t K = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m) + 1));
    const std::int64_t s = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m)));
    const HypergeoSpec spec{m, K, s};
    const double eps = 0.01 + 0.5 * rng.uniform();
    const double two = hypergeo_two_sided_tail(spec, eps);
    CHECK(serfling_bound(spec, eps) >= two);
    CHECK(hoeffding_bound(spec, eps) >= two);
    const double p = static_cast<double>(K) / m;
    for (TailSide side : {TailSide::upper, TailSide::lower}) {
      const double limit = side == TailSide::upper ? 1 - p : p;
      if (!(eps < limit)) continue;
      const double c = chvatal_bound(spec, eps, side);
      CHECK(c >= hypergeo_one_sided_tail(spec, eps, side));
      CHECK(c <= hoeffding_bound(spec, eps) / 2 + 1e-15);
      ++chvatal_cases;
    }
  }
  CHECK(chvatal_cases > 100);
}

TEST_CASE("Pearson coefficient") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y, z;
  for (double v : x) {
    y.push_back(2 * v + 1);
    z.push_back(-v);
  }
  CHECK(pearson_r(x, y) == doctest::Approx(1.0));
  CHECK(pearson_r(x, z) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(pearson_r(x, std::vector<double>(5, 3.0)), UndefinedCorrelation);
  CHECK_THROWS_AS(pearson_r(std::vector<double>{1}, std::vector<double>{2}), std::invalid_argument);
  CHECK_THROWS_AS(pearson_r(x, y = {1, 2}), std::invalid_argument);
}

TEST_CASE("Pearson coefficient against long double evaluation") {
  const std::vector<double> a{0.3, -1.2, 4.4, 2.0, 0.0, 7.5, -3.3, 1.1, 2.2, 5.9};
  const std::vector<double> b{1.0, 0.2, 3.9, 2.5, -0.4, 6.1, -2.0, 0.7, 3.3, 4.8};
  long double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= a.size();
  mb /= b.size();
  long double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  const double ref = static_cast<double>(sab / std::sqrt(saa * sbb));
  CHECK(std::abs(pearson_r(a, b) - ref) < 1e-12);
}

TEST_CASE("independent columns are nearly uncorrelated") {
  Rng rng(4);
  std::vector<double> a(10000), b(10000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = rng.uniform();
    b[i] = rng.uniform();
  }
  CHECK(std::abs(pearson_r(a, b)) <= 0.03);
}

TEST_CASE("mean, sd and sem") {
  const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  CHECK(mean(v) == 5.0);
  CHECK(sample_sd(v) == doctest::Approx(std::sqrt(32.0 / 7)));
  CHECK(sem(v) == doctest::Approx(std::sqrt(32.0 / 7) / std::sqrt(8.0)));
  CHECK(sem(std::vector<double>{1}) == 0.0);
  CHECK(mean(std::vector<double>{}) == 0.0);
}
