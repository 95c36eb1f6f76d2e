#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "xorlab/fourier.hpp"
#include "xorlab/rng.hpp"

using namespace xorlab;

namespace {

MultilinearPoly random_poly(int n, Rng& rng, double density = 1.0) {
  MultilinearPoly p(n);
  for (auto& c : p.coeffs)
    if (rng.uniform() < density) c = 2 * rng.uniform() - 1;
  return p;
}

AffineMap random_permutation_map(int n, Rng& rng) {
  std::vector<std::uint32_t> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0U);
  for (int i = n - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  AffineMap t;
  t.n = n;
  for (auto j : perm) t.rows.push_back(1U << j);
  t.offset = static_cast<std::uint32_t>(rng.below(1ULL << n));
  return t;
}

AffineMap random_map(int m, int n, Rng& rng) {
  AffineMap t;
  t.n = n;
  for (int i = 0; i < m; ++i) {
    std::uint32_t row = 0;
    while (row == 0) row = static_cast<std::uint32_t>(rng.below(1ULL << n));
    t.rows.push_back(row);
  }
  t.offset = static_cast<std::uint32_t>(rng.below(1ULL << m));
  return t;
}

}  // namespace

TEST_CASE("transform of constants and characters") {
  std::vector<double> ones(16, 1.0);
  const MultilinearPoly c = wht(ones);
  CHECK(c.coeff(0) == doctest::Approx(1.0));
  for (std::uint32_t s = 1; s < 16; ++s) CHECK(std::abs(c.coeff(s)) < 1e-15);

  std::vector<double> chi(16);
  for (std::uint32_t x = 0; x < 16; ++x) chi[x] = std::popcount(x & 0b1010U) & 1 ? -1.0 : 1.0;
  const MultilinearPoly d = wht(chi);
  for (std::uint32_t s = 0; s < 16; ++s) CHECK(std::abs(d.coeff(s) - (s == 0b1010U ? 1.0 : 0.0)) < 1e-15);
}

TEST_CASE("transform round trip and naive agreement") {
  Rng rng(1);
  std::vector<double> f(64);
  for (auto& v : f) v = rng.uniform() * 4 - 2;
  const MultilinearPoly p = wht(f);
  const auto back = p.values();
  double err = 0;
  for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(back[i] - f[i]));
  CHECK(err < 1e-10);
  const auto naive = oracle::naive_wht(f, 6);
  for (std::size_t s = 0; s < 64; ++s) CHECK(std::abs(naive[s] - p.coeffs[s]) < 1e-12);
  for (std::uint32_t x = 0; x < 64; x += 7) CHECK(std::abs(p.evaluate(x) - f[x]) < 1e-12);
}

TEST_CASE("transform rejects bad lengths") {
  std::vector<double> bad(12, 0.0);
  CHECK_THROWS_AS(wht(bad), std::invalid_argument);
  CHECK_THROWS_AS(wht(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("Parseval and degree") {
  Rng rng(2);
  const MultilinearPoly p = random_poly(7, rng, 0.3);
  const auto v = p.values();
  double mean_sq = 0;
  for (double x : v) mean_sq += x * x / v.size();
  CHECK(p.norm2() * p.norm2() == doctest::Approx(mean_sq).epsilon(1e-12));

  MultilinearPoly q(5);
  q.coeff(0b10110) = 0.5;
  q.coeff(0b00001) = 1;
  CHECK(q.degree() == 3);
  CHECK(MultilinearPoly(4).degree() == 0);
}

TEST_CASE("low-degree mass") {
  MultilinearPoly chi12(3);
  chi12.coeff(0b011) = 1;
  CHECK(mass_le_k(chi12, 1) == 0.0);
  CHECK(mass_le_k(chi12, 2) == 1.0);
  MultilinearPoly dict(3);
  dict.coeff(0b001) = 1;
  CHECK(mass_le_k(dict, 1) == 1.0);
  MultilinearPoly k(2);
  k.coeff(0) = 3;
  CHECK(mass_le_k(k, 2) == 0.0);
  CHECK(mass_le_k(k, 0, true) == 9.0);
  CHECK_THROWS_AS(mass_le_k(k, 3), std::invalid_argument);
  CHECK_THROWS_AS(mass_le_k(k, -1), std::invalid_argument);

  Rng rng(3);
  const MultilinearPoly p = random_poly(5, rng);
  for (int lvl = 0; lvl <= 5; ++lvl) {
    double direct = 0;
    for (std::uint32_t s = 1; s < 32; ++s)
      if (std::popcount(s) <= lvl) direct += p.coeffs[s] * p.coeffs[s];
    CHECK(std::abs(mass_le_k(p, lvl) - direct) < 1e-13);
  }
}

TEST_CASE("noise stability against correlated pairs") {
  Rng rng(4);
  for (int rep = 0; rep < 10; ++rep) {
    const MultilinearPoly p = random_poly(4, rng);
    CHECK(std::abs(stab_rho(p, 1.0) - p.norm2() * p.norm2()) < 1e-12);
    CHECK(std::abs(stab_rho(p, 0.0) - p.coeff(0) * p.coeff(0)) < 1e-15);
    for (double rho : {0.2, -0.5, 0.9}) CHECK(std::abs(stab_rho(p, rho) - oracle::stab_pairs(p, rho)) < 1e-10);
  }
  CHECK_THROWS_AS(stab_rho(MultilinearPoly(2), 1.5), std::invalid_argument);
}

TEST_CASE("affine map basics") {
  AffineMap t;
  t.n = 4;
  t.rows = {0b0011, 0b0110, 0b1000};
  CHECK(t.delta() == 2);
  CHECK_FALSE(t.is_permutation());
  CHECK(t.image_support(0b011) == 0b0101);
  t.offset = 0b100;
  CHECK(t.apply(0b0001) == 0b101);
  AffineMap perm;
  perm.n = 3;
  perm.rows = {0b010, 0b100, 0b001};
  CHECK(perm.is_permutation());
  CHECK(perm.delta() == 1);
}

TEST_CASE("pullback equals composition") {
  Rng rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const int m = 1 + static_cast<int>(rng.below(6));
    const int n = 1 + static_cast<int>(rng.below(6));
    const MultilinearPoly p = random_poly(m, rng);
    const AffineMap t = random_map(m, n, rng);
    const MultilinearPoly q = affine_pullback(p, t);
    std::vector<double> table(1U << n);
    for (std::uint32_t x = 0; x < table.size(); ++x) table[x] = oracle::eval(p, t.apply(x));
    const auto expected = oracle::naive_wht(table, n);
    for (std::size_t s = 0; s < expected.size(); ++s) CHECK(std::abs(q.coeffs[s] - expected[s]) < 1e-12);
  }
}

TEST_CASE("permutation pullback preserves mass and stability") {
  Rng rng(6);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + static_cast<int>(rng.below(7));
    const MultilinearPoly p = random_poly(n, rng);
    const MultilinearPoly q = affine_pullback(p, random_permutation_map(n, rng));
    for (int k = 0; k <= n; ++k) CHECK(std::abs(mass_le_k(q, k) - mass_le_k(p, k)) < 1e-10);
    for (double rho : {0.1, 0.2, 0.5}) CHECK(std::abs(stab_rho(q, rho) - stab_rho(p, rho)) < 1e-10);
  }
}

TEST_CASE("pullback degree dilation and sup norm") {
  Rng rng(7);
  for (int rep = 0; rep < 200; ++rep) {
    const int m = 1 + static_cast<int>(rng.below(8));
    const int n = 1 + static_cast<int>(rng.below(8));
    const MultilinearPoly p = random_poly(m, rng, 0.4);
    const AffineMap t = random_map(m, n, rng);
    const MultilinearPoly q = affine_pullback(p, t);
    CHECK(q.degree() <= t.delta() * p.degree());
    CHECK(q.sup_norm() <= p.sup_norm() + 1e-12);
  }
}

TEST_CASE("disjoint rows do not increase low-degree mass") {
  Rng rng(8);
  for (int rep = 0; rep < 100; ++rep) {
    // Split 8 inputs into m disjoint nonempty blocks.
    const int n = 8;
    const int m = 1 + static_cast<int>(rng.below(4));
    AffineMap t;
    t.n = n;
    t.rows.assign(static_cast<std::size_t>(m), 0);
    for (int j = 0; j < n; ++j) t.rows[static_cast<std::size_t>(j < m ? j : static_cast<int>(rng.below(static_cast<std::uint64_t>(m))))] |= 1U << j;
    t.offset = static_cast<std::uint32_t>(rng.below(1ULL << m));
    const MultilinearPoly p = random_poly(m, rng);
    const MultilinearPoly q = affine_pullback(p, t);
    for (int k = 0; k <= m; ++k) CHECK(mass_le_k(q, k) <= mass_le_k(p, k) + 1e-12);
  }
}

TEST_CASE("collision-aware mass bound with overlapping rows") {
  Rng rng(9);
  for (int rep = 0; rep < 200; ++rep) {
    const int m = 1 + static_cast<int>(rng.below(6));
    const int n = 1 + static_cast<int>(rng.below(6));
    const MultilinearPoly p = random_poly(m, rng);
    const AffineMap t = random_map(m, n, rng);
    const MultilinearPoly q = affine_pullback(p, t);
    for (int k = 0; k <= n; ++k) {
      CHECK(mass_le_k(q, k) <= collision_mass_bound(p, t, k) + 1e-10);
      CHECK(mass_le_k(q, k, true) <= collision_mass_bound(p, t, k, true) + 1e-10);
    }
  }
}

TEST_CASE("restriction with everything alive is the identity") {
  Rng rng(10);
  const MultilinearPoly p = random_poly(5, rng);
  const MultilinearPoly r = restrict_poly(p, 0b11111U, 0);
  for (std::size_t s = 0; s < p.coeffs.size(); ++s) CHECK(r.coeffs[s] == doctest::Approx(p.coeffs[s]));
}

TEST_CASE("restriction substitutes fixed values") {
  Rng rng(11);
  const MultilinearPoly p = random_poly(5, rng);
  const std::uint32_t alive = 0b10101, fixed = 0b01010;
  const MultilinearPoly r = restrict_poly(p, alive, fixed);
  for (std::uint32_t x = 0; x < 32; ++x) CHECK(std::abs(r.evaluate(x) - p.evaluate((x & alive) | fixed)) < 1e-12);
  for (std::uint32_t s = 0; s < 32; ++s)
    if (s & ~alive) CHECK(std::abs(r.coeffs[s]) < 1e-15);
}

TEST_CASE("restriction thinning moments by exhaustive enumeration") {
  Rng rng(12);
  for (int n = 1; n <= 4; ++n)
    for (double s : {0.25, 0.5, 0.75})
      for (int rep = 0; rep < 5; ++rep) {
        const MultilinearPoly p = random_poly(n, rng);
        const auto mom = oracle::restriction_moments(p, s);
        const std::uint32_t N = 1U << n;
        for (std::uint32_t S = 0; S < N; ++S) {
          const double first = std::pow(s, std::popcount(S)) * p.coeffs[S];
          double second = 0;
          const std::uint32_t rest = (N - 1) & ~S;
          for (std::uint32_t T = rest;; T = (T - 1) & rest) {
            second += std::pow(1 - s, std::popcount(T)) * p.coeffs[S | T] * p.coeffs[S | T];
            if (T == 0) break;
          }
          second *= std::pow(s, std::popcount(S));
          CHECK(std::abs(mom.first[S] - first) < 1e-9);
          CHECK(std::abs(mom.second[S] - second) < 1e-9);
        }
      }
}

TEST_CASE("random index parity bound") {
  MultilinearPoly full(4);
  full.coeff(0b1111) = 1;
  const ParityBoundCheck a = rand_index_parity_bound_check(full, 4, 1.0);
  CHECK(a.lhs == doctest::Approx(1.0));
  CHECK(a.rhs == doctest::Approx(1.0));

  Rng rng(13);
  const MultilinearPoly p = random_poly(4, rng);
  const ParityBoundCheck z = rand_index_parity_bound_check(p, 3, 0.0);
  double mean_abs = 0;
  for (double v : p.values()) mean_abs += std::abs(v) / 16;
  // With nothing alive U is empty and the inner product is p at the fixed point.
  CHECK(z.lhs == doctest::Approx(mean_abs).epsilon(1e-12));
  CHECK(z.rhs >= z.lhs);

  int cases = 0;
  for (double s : {0.3, 0.7})
    for (int rep = 0; rep < 50; ++rep) {
      const MultilinearPoly r = random_poly(4, rng);
      const int t = 1 + static_cast<int>(rng.below(4));
      const ParityBoundCheck c = rand_index_parity_bound_check(r, t, s);
      CHECK(c.holds());
      ++cases;
    }
  CHECK(cases == 100);
}

TEST_CASE("polynomial JSON dump") {
  MultilinearPoly p(2);
  p.coeff(1) = 0.5;
  const std::string j = p.to_json();
  CHECK(j.find("\"n\":2") != std::string::npos);
  CHECK(j.find("0.5") != std::string::npos);
}
