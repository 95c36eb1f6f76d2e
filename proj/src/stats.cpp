#include "xorlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xorlab/errors.hpp"

namespace xorlab {

void HypergeoSpec::validate() const {
  if (m < 0 || K < 0 || K > m || s < 0 || s > m) throw std::invalid_argument("invalid hypergeometric spec");
}

std::int64_t HypergeoSpec::support_min() const { return std::max<std::int64_t>(0, s - (m - K)); }
std::int64_t HypergeoSpec::support_max() const { return std::min(s, K); }

double log_choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -INFINITY;
  return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
         std::lgamma(static_cast<double>(n - k) + 1);
}

double hypergeo_pmf(const HypergeoSpec& spec, std::int64_t h) {
  spec.validate();
  if (h < spec.support_min() || h > spec.support_max()) return 0.0;
  return std::exp(log_choose(spec.K, h) + log_choose(spec.m - spec.K, spec.s - h) - log_choose(spec.m, spec.s));
}

namespace {

// Small slack so that boundary points count as inside the tail event.
constexpr double kEdge = 1e-12;

}  // namespace

double hypergeo_two_sided_tail(const HypergeoSpec& spec, double eps) {
  spec.validate();
  const double mu = spec.mean();
  double total = 0;
  for (std::int64_t h = spec.support_min(); h <= spec.support_max(); ++h)
    if (std::abs(static_cast<double>(h) - mu) >= eps * spec.s - kEdge) total += hypergeo_pmf(spec, h);
  return std::min(total, 1.0);
}

double hypergeo_one_sided_tail(const HypergeoSpec& spec, double eps, TailSide side) {
  spec.validate();
  const double p = spec.m == 0 ? 0.0 : static_cast<double>(spec.K) / spec.m;
  double total = 0;
  for (std::int64_t h = spec.support_min(); h <= spec.support_max(); ++h) {
    const double hd = static_cast<double>(h);
    const bool in = side == TailSide::upper ? hd >= (p + eps) * spec.s - kEdge : hd <= (p - eps) * spec.s + kEdge;
    if (in) total += hypergeo_pmf(spec, h);
  }
  return std::min(total, 1.0);
}

double serfling_bound(const HypergeoSpec& spec, double eps) {
  spec.validate();
  const double s = static_cast<double>(spec.s), m = static_cast<double>(spec.m);
  return 2.0 * std::exp(-2.0 * eps * eps * s * m / (m - s + 1.0));
}

double hoeffding_bound(const HypergeoSpec& spec, double eps) {
  spec.validate();
  return 2.0 * std::exp(-2.0 * eps * eps * static_cast<double>(spec.s));
}

double binary_kl(double a, double p) {
  auto term = [](double u, double v) { return u == 0 ? 0.0 : u * std::log(u / v); };
  return term(a, p) + term(1 - a, 1 - p);
}

double chvatal_bound(const HypergeoSpec& spec, double eps, TailSide side) {
  spec.validate();
  if (spec.m == 0) throw std::invalid_argument("empty population");
  const double p = static_cast<double>(spec.K) / spec.m;
  const double limit = side == TailSide::upper ? 1 - p : p;
  if (!(eps > 0 && eps < limit)) throw std::invalid_argument("eps outside the Chvatal range");
  const double a = side == TailSide::upper ? p + eps : p - eps;
  return std::exp(-static_cast<double>(spec.s) * binary_kl(a, p));
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double acc = 0;
  for (double v : xs) acc += v;
  return acc / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double mu = mean(xs);
  double acc = 0;
  for (double v : xs) acc += (v - mu) * (v - mu);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

double sem(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  return sample_sd(xs) / std::sqrt(static_cast<double>(xs.size()));
}

double pearson_r(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("pearson_r: length mismatch");
  if (xs.size() < 2) throw std::invalid_argument("pearson_r: need at least two points");
  const double mx = mean(xs), my = mean(ys);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) throw UndefinedCorrelation("pearson_r: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace xorlab
