#include "xorlab/restrictions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "xorlab/csv.hpp"
#include "xorlab/errors.hpp"
#include "xorlab/rng.hpp"

namespace xorlab {

int Restriction::alive_count() const {
  return static_cast<int>(std::count(status.begin(), status.end(), VarStatus::alive));
}

double Restriction::survival() const { return std::pow(p, d); }

double path_rate(int m, int d, double alpha) {
  if (d < 1) throw std::invalid_argument("restriction depth d must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (m < 2) throw std::invalid_argument("restriction path needs m >= 2");
  return std::pow(static_cast<double>(m), -alpha / d);
}

Restriction sample_restriction_rate(int n, int d, double rate, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("negative variable count");
  if (d < 1) throw std::invalid_argument("restriction depth d must be >= 1");
  if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("survival rate must lie in [0, 1]");
  Restriction r;
  r.d = d;
  r.p = rate;
  r.seed = seed;
  r.status.resize(static_cast<std::size_t>(n));
  Rng rng(seed, 0xA11E);
  for (auto& s : r.status) {
    bool alive = true;
    for (int round = 0; round < d && alive; ++round) alive = rng.bernoulli(rate);
    s = alive ? VarStatus::alive : (rng.bit() ? VarStatus::fixed1 : VarStatus::fixed0);
  }
  return r;
}

Restriction sample_restriction(int n, int d, double alpha, int m, std::uint64_t seed) {
  return sample_restriction_rate(n, d, path_rate(m, d, alpha), seed);
}

std::uint8_t RestrictedXor::fixed_clause_residual(int clause) const {
  const auto& c = base.clauses.at(static_cast<std::size_t>(clause));
  std::uint8_t acc = c.rhs;
  for (int v : c.vars) {
    if (rho.alive(v)) throw std::invalid_argument("clause has an alive variable");
    acc ^= rho.fixed_value(v);
  }
  return acc;
}

RestrictedXor apply_restriction(const XorInstance& x, const Restriction& rho) {
  if (rho.n() != x.n) throw std::invalid_argument("restriction arity does not match instance");
  RestrictedXor r{x, rho, {}, {}, {}};
  for (int v = 0; v < x.n; ++v)
    if (rho.alive(v)) r.alive_vars.push_back(v);
  for (int i = 0; i < x.m(); ++i) {
    const auto& c = x.clauses[static_cast<std::size_t>(i)];
    ReducedClause red;
    red.rhs = c.rhs;
    for (int v : c.vars) {
      if (rho.alive(v)) red.alive_vars.push_back(v);
      else red.rhs ^= rho.fixed_value(v);
    }
    if (red.alive_vars.empty()) continue;
    r.unfixed_clauses.push_back(i);
    r.reduced.push_back(std::move(red));
  }
  return r;
}

double survival_probability(int t_star, int d, double p) {
  if (t_star < 0) throw std::invalid_argument("t_star must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (t_star == 0) return 0.0;
  const double s = std::pow(p, d);
  if (s >= 1.0) return 1.0;
  return -std::expm1(static_cast<double>(t_star) * std::log1p(-s));
}

namespace {

using Row = std::vector<std::uint64_t>;

Row incidence_row(const XorClause& c, std::size_t words) {
  Row r(words, 0);
  for (int v : c.vars) r[static_cast<std::size_t>(v) / 64] ^= 1ULL << (v % 64);
  return r;
}

}  // namespace

std::optional<KernelWitness> row_kernel_min_weight(const RestrictedXor& x, int max_rows) {
  const int rows_n = static_cast<int>(x.unfixed_clauses.size());
  if (max_rows > 24) throw SizeExceeded("kernel search is limited to 24 rows");
  if (rows_n > max_rows) throw SizeExceeded("unfixed clause count exceeds max_rows");
  const std::size_t words = (static_cast<std::size_t>(x.base.n) + 63) / 64;
  std::vector<Row> rows;
  for (int ci : x.unfixed_clauses) rows.push_back(incidence_row(x.base.clauses[static_cast<std::size_t>(ci)], words));

  Row acc(words);
  std::vector<int> idx;
  for (int w = 1; w <= rows_n; ++w) {
    idx.resize(static_cast<std::size_t>(w));
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      std::fill(acc.begin(), acc.end(), 0);
      for (int i : idx)
        for (std::size_t k = 0; k < words; ++k) acc[k] ^= rows[static_cast<std::size_t>(i)][k];
      if (std::all_of(acc.begin(), acc.end(), [](std::uint64_t v) { return v == 0; })) {
        KernelWitness kw;
        kw.weight = w;
        for (int i : idx) kw.clauses.push_back(x.unfixed_clauses[static_cast<std::size_t>(i)]);
        return kw;
      }
      // next combination in lexicographic order
      int pos = w - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == rows_n - w + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int j = pos + 1; j < w; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return std::nullopt;
}

double live_parity_bias_check(const RestrictedXor& x, const KernelWitness& mu, std::uint64_t samples,
                              std::uint64_t seed) {
  if (mu.clauses.empty()) throw std::invalid_argument("kernel witness has empty support");
  if (samples == 0) throw std::invalid_argument("samples must be >= 1");
  const std::size_t words = (static_cast<std::size_t>(x.base.n) + 63) / 64;
  Row acc(words, 0);
  for (int ci : mu.clauses) {
    if (!std::binary_search(x.unfixed_clauses.begin(), x.unfixed_clauses.end(), ci))
      throw std::invalid_argument("kernel witness uses a fixed clause");
    const auto r = incidence_row(x.base.clauses.at(static_cast<std::size_t>(ci)), words);
    for (std::size_t k = 0; k < words; ++k) acc[k] ^= r[k];
  }
  if (!std::all_of(acc.begin(), acc.end(), [](std::uint64_t v) { return v == 0; }))
    throw std::invalid_argument("witness is not in the kernel of A_C^T");
  // Only the RHS coordinates in supp(mu) enter the parity; the rest of b and
  // the incidence are held fixed.
  Rng rng(seed, 0xB1A5);
  std::uint64_t ones = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::uint8_t parity = 0;
    for (std::size_t j = 0; j < mu.clauses.size(); ++j) parity ^= rng.bit();
    ones += parity;
  }
  return std::abs(static_cast<double>(ones) / static_cast<double>(samples) - 0.5);
}

std::vector<RestrictionRow> restriction_experiment(const RestrictionExperimentConfig& cfg) {
  std::vector<RestrictionRow> out;
  auto ns = cfg.ns;
  std::sort(ns.begin(), ns.end());
  for (int n : ns) {
    for (int i = 0; i < cfg.seeds; ++i) {
      const std::uint64_t seed = cfg.seed_base + static_cast<std::uint64_t>(i);
      const auto x = gen_uniform_rhs_xor(n, cfg.gamma, seed);
      const auto rho = sample_restriction(n, cfg.d, cfg.alpha, x.m(), seed);
      const auto rx = apply_restriction(x, rho);
      RestrictionRow row;
      row.n = n;
      row.m = x.m();
      row.d = cfg.d;
      row.alpha = cfg.alpha;
      row.p = rho.p;
      row.seed = seed;
      row.alive_vars = static_cast<int>(rx.alive_vars.size());
      row.unfixed_clauses = static_cast<int>(rx.unfixed_clauses.size());
      if (row.unfixed_clauses <= cfg.max_rows) {
        row.kernel_searched = true;
        const auto kw = row_kernel_min_weight(rx, cfg.max_rows);
        row.min_kernel_weight = kw ? kw->weight : 0;
      }
      out.push_back(row);
    }
  }
  return out;
}

std::string restriction_csv(const std::vector<RestrictionRow>& rows) {
  CsvWriter w({"n", "m", "d", "alpha", "p", "seed", "alive_vars", "unfixed_clauses", "min_kernel_weight"});
  for (const auto& r : rows)
    w.row({r.n, r.m, r.d, r.alpha, r.p, r.seed, r.alive_vars, r.unfixed_clauses, r.min_kernel_weight});
  return w.str();
}

}  // namespace xorlab
