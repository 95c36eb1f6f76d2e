#pragma once

#include <cstdint>
#include <span>

namespace xorlab {

/// Population of m items, K of them marked, sample of s without replacement.
struct HypergeoSpec {
  std::int64_t m = 0;
  std::int64_t K = 0;
  std::int64_t s = 0;

  /// Throws std::invalid_argument unless 0 <= K <= m and 0 <= s <= m.
  void validate() const;
  std::int64_t support_min() const;
  std::int64_t support_max() const;
  double mean() const { return m == 0 ? 0.0 : static_cast<double>(s) * K / m; }
};

double log_choose(std::int64_t n, std::int64_t k);
double hypergeo_pmf(const HypergeoSpec& spec, std::int64_t h);

/// Exact Pr[|H - E H| >= eps s].
double hypergeo_two_sided_tail(const HypergeoSpec& spec, double eps);
enum class TailSide { upper, lower };
/// Exact Pr[H >= (p + eps) s] (upper) or Pr[H <= (p - eps) s] (lower), p = K/m.
double hypergeo_one_sided_tail(const HypergeoSpec& spec, double eps, TailSide side);

/// 2 exp(-2 eps^2 s m / (m - s + 1)).
double serfling_bound(const HypergeoSpec& spec, double eps);
/// 2 exp(-2 eps^2 s).
double hoeffding_bound(const HypergeoSpec& spec, double eps);
/// exp(-s D(p +/- eps || p)). Throws std::invalid_argument unless
/// 0 < eps < 1 - p (upper) or 0 < eps < p (lower).
double chvatal_bound(const HypergeoSpec& spec, double eps, TailSide side);
/// Binary KL divergence in nats.
double binary_kl(double a, double p);

/// Sample Pearson coefficient. Throws std::invalid_argument on length
/// mismatch or fewer than 2 points, UndefinedCorrelation on zero variance.
double pearson_r(std::span<const double> xs, std::span<const double> ys);

double mean(std::span<const double> xs);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double sample_sd(std::span<const double> xs);
double sem(std::span<const double> xs);

}  // namespace xorlab
