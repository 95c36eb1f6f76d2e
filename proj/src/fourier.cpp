#include "xorlab/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace xorlab {
namespace {

int popcount(std::uint32_t v) { return std::popcount(v); }

void check_arity(int n) {
  if (n < 0 || n > kMaxFourierArity) throw std::invalid_argument("arity must lie in [0, 20]");
}

}  // namespace

MultilinearPoly::MultilinearPoly(int arity) : n(arity) {
  check_arity(arity);
  coeffs.assign(std::size_t{1} << arity, 0.0);
}

int MultilinearPoly::degree(double tol) const {
  int deg = 0;
  for (std::uint32_t s = 0; s < coeffs.size(); ++s)
    if (std::abs(coeffs[s]) > tol) deg = std::max(deg, popcount(s));
  return deg;
}

double MultilinearPoly::evaluate(std::uint32_t x) const {
  double v = 0;
  for (std::uint32_t s = 0; s < coeffs.size(); ++s) v += (popcount(s & x) & 1) ? -coeffs[s] : coeffs[s];
  return v;
}

std::vector<double> MultilinearPoly::values() const {
  std::vector<double> v = coeffs;
  fwht_inplace(v);
  return v;
}

double MultilinearPoly::norm2() const {
  double sum = 0;
  for (double c : coeffs) sum += c * c;
  return std::sqrt(sum);
}

double MultilinearPoly::sup_norm() const {
  double best = 0;
  for (double v : values()) best = std::max(best, std::abs(v));
  return best;
}

std::string MultilinearPoly::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["coeffs"] = coeffs;
  return j.dump();
}

void fwht_inplace(std::span<double> a) {
  const std::size_t size = a.size();
  if (size == 0 || (size & (size - 1)) != 0) throw std::invalid_argument("WHT length must be a power of two");
  for (std::size_t h = 1; h < size; h <<= 1)
    for (std::size_t i = 0; i < size; i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        const double u = a[j];
        const double v = a[j + h];
        a[j] = u + v;
        a[j + h] = u - v;
      }
}

MultilinearPoly wht(std::span<const double> values) {
  const std::size_t size = values.size();
  if (size == 0 || (size & (size - 1)) != 0) throw std::invalid_argument("WHT length must be a power of two");
  const int n = std::countr_zero(size);
  MultilinearPoly p(n);
  std::copy(values.begin(), values.end(), p.coeffs.begin());
  fwht_inplace(p.coeffs);
  const double scale = 1.0 / static_cast<double>(size);
  for (double& c : p.coeffs) c *= scale;
  return p;
}

double mass_le_k(const MultilinearPoly& p, int k, bool include_empty) {
  if (k < 0 || k > p.n) throw std::invalid_argument("level k must lie in [0, n]");
  double sum = 0;
  for (std::uint32_t s = include_empty ? 0 : 1; s < p.coeffs.size(); ++s)
    if (popcount(s) <= k) sum += p.coeffs[s] * p.coeffs[s];
  return sum;
}

double stab_rho(const MultilinearPoly& p, double rho) {
  if (!(rho >= -1.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [-1, 1]");
  std::vector<double> powers(static_cast<std::size_t>(p.n) + 1, 1.0);
  for (int i = 1; i <= p.n; ++i) powers[i] = powers[i - 1] * rho;
  double sum = 0;
  for (std::uint32_t s = 0; s < p.coeffs.size(); ++s) sum += powers[popcount(s)] * p.coeffs[s] * p.coeffs[s];
  return sum;
}

int AffineMap::delta() const {
  int d = 0;
  for (auto r : rows) d = std::max(d, popcount(r));
  return d;
}

bool AffineMap::is_permutation() const {
  if (m() != n) return false;
  std::uint32_t seen = 0;
  for (auto r : rows) {
    if (popcount(r) != 1 || (seen & r)) return false;
    seen |= r;
  }
  return true;
}

std::uint32_t AffineMap::apply(std::uint32_t x) const {
  std::uint32_t y = offset;
  for (int i = 0; i < m(); ++i)
    if (popcount(rows[i] & x) & 1) y ^= 1U << i;
  return y;
}

std::uint32_t AffineMap::image_support(std::uint32_t s) const {
  std::uint32_t j = 0;
  for (int i = 0; i < m(); ++i)
    if ((s >> i) & 1U) j ^= rows[i];
  return j;
}

namespace {

// J(S) for every S in [2^m], built by peeling the lowest set bit.
std::vector<std::uint32_t> all_image_supports(const AffineMap& t) {
  std::vector<std::uint32_t> j(std::size_t{1} << t.m(), 0);
  for (std::uint32_t s = 1; s < j.size(); ++s) j[s] = j[s & (s - 1)] ^ t.rows[std::countr_zero(s)];
  return j;
}

void check_map(const MultilinearPoly& p, const AffineMap& t) {
  if (p.n != t.m()) throw std::invalid_argument("polynomial arity must equal the map's output count");
  check_arity(t.n);
  for (auto r : t.rows)
    if (t.n < 32 && (r >> t.n) != 0) throw std::invalid_argument("affine row uses a variable outside [0, n)");
}

}  // namespace

MultilinearPoly affine_pullback(const MultilinearPoly& p, const AffineMap& t) {
  check_map(p, t);
  const auto j = all_image_supports(t);
  MultilinearPoly q(t.n);
  for (std::uint32_t s = 0; s < j.size(); ++s) {
    const double c = p.coeffs[s];
    if (c == 0.0) continue;
    q.coeffs[j[s]] += (popcount(s & t.offset) & 1) ? -c : c;
  }
  return q;
}

double collision_mass_bound(const MultilinearPoly& p, const AffineMap& t, int k, bool include_empty) {
  check_map(p, t);
  const auto j = all_image_supports(t);
  std::vector<std::uint32_t> multiplicity(std::size_t{1} << t.n, 0);
  for (auto u : j) ++multiplicity[u];
  std::uint32_t m_k = 0;
  for (std::uint32_t u = include_empty ? 0 : 1; u < multiplicity.size(); ++u)
    if (popcount(u) <= k) m_k = std::max(m_k, multiplicity[u]);
  double sum = 0;
  for (std::uint32_t s = 0; s < j.size(); ++s) {
    const int w = popcount(j[s]);
    if (w <= k && (include_empty || w >= 1)) sum += p.coeffs[s] * p.coeffs[s];
  }
  return m_k * sum;
}

MultilinearPoly restrict_poly(const MultilinearPoly& p, std::uint32_t alive_mask, std::uint32_t fixed_bits) {
  MultilinearPoly q(p.n);
  for (std::uint32_t s = 0; s < p.coeffs.size(); ++s) {
    const double c = p.coeffs[s];
    if (c == 0.0) continue;
    const std::uint32_t dead = s & ~alive_mask;
    q.coeffs[s & alive_mask] += (popcount(dead & fixed_bits) & 1) ? -c : c;
  }
  return q;
}

MultilinearPoly restrict_poly(const MultilinearPoly& p, const Restriction& rho) {
  if (rho.n() != p.n) throw std::invalid_argument("restriction arity does not match polynomial");
  std::uint32_t alive = 0, fixed = 0;
  for (int v = 0; v < p.n; ++v) {
    if (rho.alive(v)) alive |= 1U << v;
    else if (rho.fixed_value(v)) fixed |= 1U << v;
  }
  return restrict_poly(p, alive, fixed);
}

ParityBoundCheck rand_index_parity_bound_check(const MultilinearPoly& p, int t_star, double s) {
  if (p.n > 10) throw std::invalid_argument("exact restriction enumeration limited to n <= 10");
  if (t_star < 0 || t_star > p.n) throw std::invalid_argument("t_star must lie in [0, n]");
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("survival s must lie in [0, 1]");
  const int n = p.n;
  const std::uint32_t full = (1U << n) - 1;
  const std::uint32_t parity_vars = (1U << t_star) - 1;
  ParityBoundCheck out;
  for (std::uint32_t alive = 0; alive <= full; ++alive) {
    const int a = popcount(alive);
    const double w_alive = std::pow(s, a) * std::pow(1.0 - s, n - a);
    if (w_alive == 0.0) continue;
    const std::uint32_t dead = full & ~alive;
    const double w = w_alive / static_cast<double>(1U << (n - a));
    const std::uint32_t u = alive & parity_vars;
    // enumerate every assignment of the dead variables (submasks of dead)
    std::uint32_t fixed = dead;
    for (;;) {
      const auto q = restrict_poly(p, alive, fixed);
      out.lhs += w * std::abs(q.coeffs[u]);
      if (fixed == 0) break;
      fixed = (fixed - 1) & dead;
    }
  }
  const int deg = p.degree();
  for (int j = 0; j <= std::min(deg, t_star); ++j)
    out.prob_small += std::exp(std::lgamma(t_star + 1.0) - std::lgamma(j + 1.0) - std::lgamma(t_star - j + 1.0)) *
                      std::pow(s, j) * std::pow(1.0 - s, t_star - j);
  out.prob_small = std::min(out.prob_small, 1.0);
  out.rhs = p.norm2() * std::sqrt(out.prob_small);
  return out;
}

}  // namespace xorlab
