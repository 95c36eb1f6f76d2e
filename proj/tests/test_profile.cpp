#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "xorlab/errors.hpp"
#include "xorlab/fourier.hpp"
#include "xorlab/profile.hpp"
#include "xorlab/rng.hpp"
#include "xorlab/stats.hpp"

using namespace xorlab;

namespace {

Bits random_bits(std::size_t n, Rng& rng) {
  Bits x(n);
  for (auto& b : x) b = rng.bit();
  return x;
}

// Stream made of the window patterns in `counts`, each repeated counts[x]
// times, bit i of the pattern at offset i of its window.
Bits enumerate_windows(const std::vector<int>& counts, int window) {
  Bits x;
  for (std::uint32_t p = 0; p < counts.size(); ++p)
    for (int c = 0; c < counts[p]; ++c)
      for (int i = 0; i < window; ++i) x.push_back(static_cast<std::uint8_t>(p >> i & 1U));
  return x;
}

double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("short streams are rejected") {
  CHECK_THROWS_AS(modq_spectrum(Bits(64 * 8 - 1, 0), 2, 8), InsufficientData);
  CHECK_NOTHROW(modq_spectrum(Bits(64 * 8, 0), 2, 8));
  CHECK_THROWS_AS(modq_spectrum(Bits(4096, 0), 1, 8), std::invalid_argument);
  CHECK_THROWS_AS(modq_mass_profile(Bits(4096, 0), 2, 9, 8), std::invalid_argument);
}

TEST_CASE("null distribution of i.i.d. windows") {
  Rng rng(1);
  const int window = 8;
  const std::size_t M = 4096;
  const Bits x = random_bits(M * window, rng);
  const auto cum = modq_mass_profile(x, 2, 6, window);
  for (int k = 1; k <= 6; ++k) {
    double chars = 0;
    for (int l = 1; l <= k; ++l) chars += binom(window, l);
    // Each |c_a|^2 is approximately chi-square(1) / M.
    const double expect = chars / M;
    const double sigma = std::sqrt(2 * chars) / M;
    CHECK(std::abs(cum[static_cast<std::size_t>(k)] - expect) <= 3 * sigma);
  }
}

TEST_CASE("repeated window pattern is a point mass") {
  const int window = 6;
  std::vector<int> counts(64, 0);
  counts[0b101101] = 100;
  const Bits x = enumerate_windows(counts, window);
  const ModqSpectrum s = modq_spectrum(x, 2, window);
  CHECK(s.level_mass[0] == doctest::Approx(1.0));
  // Every character has modulus one on a point mass: 2^w - 1 nonempty ones.
  CHECK(cumulative_mass(s, window).back() == doctest::Approx(63.0).epsilon(1e-12));
  const ModqSpectrum s3 = modq_spectrum(x, 3, window);
  CHECK(cumulative_mass(s3, window).back() == doctest::Approx(std::pow(3.0, window) - 1).epsilon(1e-12));
}

TEST_CASE("mass is cumulative in k") {
  Rng rng(2);
  const LabeledStream s = gen_label_block(128, LabelBlockParams{0.03, 0.35, 0.65, 32}, 4);
  for (int q : {2, 3, 5}) {
    const auto cum = modq_mass_profile(s.x, q, 6);
    CHECK(cum[0] == 0.0);
    for (std::size_t k = 1; k < cum.size(); ++k) CHECK(cum[k] >= cum[k - 1]);
  }
}

TEST_CASE("window coordinate permutation leaves the profile unchanged") {
  Rng rng(3);
  const int window = 8;
  const LabeledStream s = gen_label_block(256, LabelBlockParams{0.03, 0.2, 0.7, 16}, 7);
  std::vector<int> perm(window);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::swap(perm[1], perm[5]);
  Bits y(s.x.size());
  const std::size_t M = s.x.size() / window;
  for (std::size_t w = 0; w < M; ++w)
    for (int i = 0; i < window; ++i) y[w * window + static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = s.x[w * window + static_cast<std::size_t>(i)];
  for (int q : {2, 3, 5}) {
    const auto a = modq_mass_profile(s.x, q, 6, window);
    const auto b = modq_mass_profile(y, q, 6, window);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-12 * std::max(1.0, a[k]));
  }
}

TEST_CASE("binary spectrum equals the transform of the window distribution") {
  // c_a = 2^w * P^(a) for the empirical window pmf P.
  Rng rng(4);
  for (int window = 1; window <= 4; ++window) {
    const std::uint32_t N = 1U << window;
    std::vector<int> counts(N);
    int total = 0;
    for (auto& c : counts) total += c = 1 + static_cast<int>(rng.below(40));
    total = std::max(total, 64);
    while (std::accumulate(counts.begin(), counts.end(), 0) < 64) ++counts[0];
    const int M = std::accumulate(counts.begin(), counts.end(), 0);
    std::vector<double> pmf(N);
    for (std::uint32_t x = 0; x < N; ++x) pmf[x] = static_cast<double>(counts[x]) / M;
    const MultilinearPoly P = wht(pmf);
    const ModqSpectrum s = modq_spectrum(enumerate_windows(counts, window), 2, window);
    const double scale = static_cast<double>(N) * N;
    for (int l = 0; l <= window; ++l) {
      double exact = 0;
      for (std::uint32_t a = 0; a < N; ++a)
        if (std::popcount(a) == l) exact += scale * P.coeffs[a] * P.coeffs[a];
      CHECK(std::abs(s.level_mass[static_cast<std::size_t>(l)] - exact) < 1e-10);
    }
    for (double rho : {0.0, 0.1, 0.5, 1.0})
      CHECK(std::abs(spectral_stability(s, rho, window) - scale * stab_rho(P, rho)) < 1e-6);
  }
}

TEST_CASE("sampled windows match the exact transform within sampling error") {
  // Windows drawn i.i.d. from a known pmf on {0,1}^3; for real characters
  // E|c_hat|^2 = c^2 + (1 - c^2) / M.
  const int window = 3;
  const std::vector<double> pmf{0.30, 0.05, 0.10, 0.05, 0.20, 0.05, 0.05, 0.20};
  std::vector<double> cdf(pmf.size());
  std::partial_sum(pmf.begin(), pmf.end(), cdf.begin());
  const MultilinearPoly P = wht(pmf);
  const std::size_t M = 2000;
  double expect = 0;
  for (std::uint32_t a = 1; a < 8; ++a) {
    const double c = 8 * P.coeffs[a];
    expect += c * c + (1 - c * c) / M;
  }
  Rng rng(5);
  std::vector<double> got;
  for (int rep = 0; rep < 200; ++rep) {
    Bits x;
    for (std::size_t w = 0; w < M; ++w) {
      const double u = rng.uniform();
      const std::uint32_t p = static_cast<std::uint32_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      for (int i = 0; i < window; ++i) x.push_back(static_cast<std::uint8_t>(std::min(p, 7U) >> i & 1U));
    }
    got.push_back(modq_mass_profile(x, 2, window, window).back());
  }
  CHECK(std::abs(mean(got) - expect) <= 3 * sem(got));
}

TEST_CASE("stability edge cases and monotonicity") {
  Rng rng(6);
  const LabeledStream s = gen_label_block(256, LabelBlockParams{0.03, 0.35, 0.65, 32}, 2);
  const ModqSpectrum sp = modq_spectrum(s.x, 2);
  CHECK(stream_stability(s.x, 0.0, 6) == doctest::Approx(sp.level_mass[0]));
  double all = 0;
  for (double v : sp.level_mass) all += v;
  CHECK(stream_stability(s.x, 1.0, 8) == doctest::Approx(all));
  double prev = -1;
  for (double rho = 0; rho <= 1.0001; rho += 0.1) {
    const double v = spectral_stability(sp, rho, 6);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(spectral_stability(modq_spectrum(s.x, 3), 0.1, 6), std::invalid_argument);
}

TEST_CASE("profile experiment tables") {
  ProfileConfig cfg;
  cfg.ns = {64};
  cfg.seeds = 3;
  cfg.label_grid = {LabelBlockParams{0.03, 0.35, 0.65, 32}};
  cfg.qs = {2, 3};
  cfg.kmax_values = {6};
  const auto blocks = profile_experiment(cfg);
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].mass.size() == 3 * 2 * 6);
  CHECK(blocks[0].stability.size() == 3 * 2);
  const CsvTable m = parse_csv(mass_csv(blocks[0]));
  CHECK(m.header == std::vector<std::string>{"context", "n", "seed", "q", "k", "degree_cap", "metric", "value"});
  CHECK(m.rows[0][6] == "cumulative_mass");
  const CsvTable st = parse_csv(stability_csv(blocks[0]));
  CHECK(st.header == std::vector<std::string>{"context", "n", "seed", "rho", "metric", "value"});
  CHECK(mass_csv(blocks[0]) == mass_csv(profile_experiment(cfg)[0]));
}

TEST_CASE("label-block profiles are stable across seeds") {
  ProfileConfig cfg;
  cfg.ns = {256};
  cfg.seeds = 60;
  cfg.qs = {2};
  cfg.rhos = {};
  const auto blocks = profile_experiment(cfg);
  std::vector<double> at6;
  for (const auto& r : blocks[0].mass)
    if (r.k == 6) at6.push_back(r.value);
  REQUIRE(at6.size() == 60);
  const double cv = sample_sd(at6) / mean(at6);
  MESSAGE("coefficient of variation of mass at k=6: " << cv);
  CHECK(cv <= 0.2);
}

TEST_CASE("correlation join") {
  const std::string pcg_text =
      "n,seed,context_mode,model,k,mdl_bits,cmdl_bits,pcg_bits,clamped,k_eff,params\n"
      "10,1,label-block,kgram,0,0,0,1,0,0,a\n"
      "10,1,label-block,kgram,2,0,0,3,0,2,a\n"
      "10,2,label-block,kgram,0,0,0,5,0,0,a\n"
      "10,3,label-block,kgram,0,0,0,7,0,0,a\n"
      "10,4,side,kgram,0,0,0,9,0,0,b\n";
  const std::string mass_text =
      "context,n,seed,q,k,degree_cap,metric,value\n"
      "label-block,10,1,2,1,6,cumulative_mass,0.3\n"
      "label-block,10,2,2,1,6,cumulative_mass,0.5\n"
      "label-block,10,3,2,1,6,cumulative_mass,0.7\n";
  const std::string stab_text =
      "context,n,seed,rho,metric,value\n"
      "label-block,10,1,0.1,stability,1\n"
      "label-block,10,2,0.1,stability,0\n"
      "label-block,10,3,0.1,stability,1\n";
  const auto rows = corr_with_pcg(parse_csv(pcg_text), parse_csv(mass_text), parse_csv(stab_text), "label-block");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].metric == "cumulative_mass");
  CHECK(rows[0].param == "q=2;k=1;degree_cap=6");
  CHECK(rows[0].r == doctest::Approx(1.0));  // top-k values 3, 5, 7
  CHECK(rows[0].count == 3);
  CHECK(rows[1].metric == "stability");
  CHECK(rows[1].r == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(parse_csv(corr_csv(rows)).header == std::vector<std::string>{"metric", "param", "r", "count"});

  CHECK_THROWS_AS(corr_with_pcg(parse_csv(pcg_text), parse_csv(mass_text), parse_csv(stab_text), "side"),
                  InsufficientData);
  const std::string mixed = pcg_text + "10,1,label-block,kgram,4,0,0,3,0,4,other\n";
  CHECK_THROWS_AS(corr_with_pcg(parse_csv(mixed), parse_csv(mass_text), parse_csv(stab_text), "label-block"),
                  std::invalid_argument);
}
