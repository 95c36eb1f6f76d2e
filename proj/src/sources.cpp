#include "xorlab/sources.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <tuple>

#include "xorlab/csv.hpp"
#include "xorlab/rng.hpp"
#include "xorlab/stats.hpp"

namespace xorlab {

namespace {

void check_prob(double v, const char* name) {
  if (!(v >= 0 && v <= 1)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

std::size_t stream_length(int n, int length_mult) {
  if (n < 1 || length_mult < 1) throw std::invalid_argument("n and length_mult must be positive");
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(length_mult);
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, int n) { return derive_seed(seed, static_cast<std::uint64_t>(n)); }

LabeledStream gen_label_block(int n, const LabelBlockParams& params, std::uint64_t seed) {
  check_prob(params.label_p, "label_p");
  check_prob(params.p0, "p0");
  check_prob(params.p1, "p1");
  const std::size_t L = stream_length(n, params.length_mult);
  Rng rng(seed, 0x1ABE1);
  LabeledStream s;
  s.mode = ContextMode::label_block;
  s.x.resize(L);
  s.ctx.resize(L);
  std::uint8_t c = rng.bit();
  for (std::size_t t = 0; t < L; ++t) {
    if (t > 0 && rng.bernoulli(params.label_p)) c ^= 1U;
    s.ctx[t] = c;
    s.x[t] = rng.bernoulli(c ? params.p1 : params.p0) ? 1 : 0;
  }
  return s;
}

LabeledStream gen_side(int n, const SideParams& params, std::uint64_t seed) {
  check_prob(params.epsilon, "epsilon");
  check_prob(params.p_run, "p_run");
  if (params.max_run < 1) throw std::invalid_argument("max_run must be positive");
  const std::size_t L = stream_length(n, params.length_mult);
  Rng rng(seed, 0x51DE);
  LabeledStream s;
  s.mode = ContextMode::side;
  s.x.resize(L);
  s.ctx.resize(L);
  std::uint8_t cur = rng.bit();
  int run = 0;
  for (std::size_t t = 0; t < L; ++t) {
    if (t > 0) {
      const bool flip = rng.bernoulli(params.p_run);
      if (flip || run >= params.max_run) {
        cur ^= 1U;
        run = 0;
      }
    }
    ++run;
    s.ctx[t] = cur;
    s.x[t] = cur ^ (rng.bernoulli(params.epsilon) ? 1 : 0);
  }
  return s;
}

Bits gen_parity_history(const HistoryParams& params, std::uint64_t seed) {
  check_prob(params.eps, "eps");
  check_prob(params.p_hist, "p_hist");
  if (params.max_lag < 1 || params.max_lag > 31) throw std::invalid_argument("max_lag must lie in [1, 31]");
  if (params.initial_lags >> params.max_lag) throw std::invalid_argument("initial lag set exceeds max_lag");
  Rng rng(seed, 0x4157);
  auto refresh = [&] { return std::uint32_t{1} << rng.below(static_cast<std::uint64_t>(params.max_lag)); };
  const std::size_t L = params.length;
  const std::size_t warm = std::min(L, static_cast<std::size_t>(params.max_lag));
  Bits x(L);
  for (std::size_t t = 0; t < warm; ++t) x[t] = rng.bit();
  std::uint32_t lags = params.initial_lags != 0 ? params.initial_lags : refresh();
  for (std::size_t t = warm; t < L; ++t) {
    if (rng.bernoulli(params.p_hist)) lags = refresh();
    std::uint8_t v = 0;
    for (int l = 1; l <= params.max_lag; ++l)
      if (lags & (std::uint32_t{1} << (l - 1))) v ^= x[t - static_cast<std::size_t>(l)];
    x[t] = v ^ (rng.bernoulli(params.eps) ? 1 : 0);
  }
  return x;
}

double binary_entropy(double p) {
  if (p <= 0 || p >= 1) return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

double label_conditional_entropy(const LabeledStream& s) {
  if (s.x.empty()) return 0.0;
  double count[2] = {0, 0}, ones[2] = {0, 0};
  for (std::size_t t = 0; t < s.x.size(); ++t) {
    const int c = s.ctx[t] & 1;
    count[c] += 1;
    ones[c] += s.x[t] & 1;
  }
  const double L = static_cast<double>(s.x.size());
  double h = 0;
  for (int c = 0; c < 2; ++c)
    if (count[c] > 0) h += count[c] / L * binary_entropy(ones[c] / count[c]);
  return h;
}

double residual_entropy(const LabeledStream& s) {
  if (s.x.empty()) return 0.0;
  double ones = 0;
  for (std::size_t t = 0; t < s.x.size(); ++t) ones += (s.x[t] ^ s.ctx[t]) & 1;
  return binary_entropy(ones / static_cast<double>(s.x.size()));
}

SprExperiment spr_experiment(const SprConfig& cfg) {
  if (cfg.kmax < 0) throw std::invalid_argument("kmax must be nonnegative");
  SprExperiment e;
  std::map<std::pair<int, int>, std::vector<double>> groups;
  for (int n : cfg.ns) {
    for (int i = 0; i < cfg.seeds; ++i) {
      const std::uint64_t seed = cfg.seed_base + static_cast<std::uint64_t>(i);
      HistoryParams hp;
      hp.eps = cfg.eps;
      hp.p_hist = cfg.p_hist;
      hp.max_lag = cfg.max_lag;
      hp.length = stream_length(n, cfg.length_mult);
      const Bits x = gen_parity_history(hp, stream_seed(seed, n));
      for (int k = 0; k <= cfg.kmax; ++k) {
        const double loss = kgram_code_len(x, k) / static_cast<double>(x.size());
        e.rows.push_back({n, seed, k, loss});
        groups[{n, k}].push_back(loss);
      }
    }
  }
  for (const auto& [key, vals] : groups) e.aggregates.push_back({key.first, key.second, mean(vals), sem(vals), vals.size()});
  return e;
}

std::string spr_csv(const SprExperiment& e) {
  CsvWriter w({"n", "seed", "k", "logloss"});
  for (const auto& r : e.rows) w.row({r.n, r.seed, r.k, r.logloss});
  return w.str();
}

std::string spr_aggregate_csv(const SprExperiment& e) {
  CsvWriter w({"n", "k", "mean_logloss", "sem_logloss", "count"});
  for (const auto& a : e.aggregates) w.row({a.n, a.k, a.mean, a.sem, a.count});
  return w.str();
}

std::string label_params_tag(const LabelBlockParams& p) {
  return "label_p=" + format_number(p.label_p) + ";p0=" + format_number(p.p0) + ";p1=" + format_number(p.p1);
}

std::string side_params_tag(const SideParams& p) {
  return "epsilon=" + format_number(p.epsilon) + ";p_run=" + format_number(p.p_run) +
         ";max_run=" + std::to_string(p.max_run);
}

PcgExperiment pcg_experiment(const PcgConfig& cfg) {
  if (!cfg.lz && cfg.ks.empty()) throw std::invalid_argument("kgram model needs at least one k");
  for (int k : cfg.ks)
    if (k < 0 || k > 24) throw std::invalid_argument("k must lie in [0, 24]");
  PcgExperiment e;
  const bool label = cfg.mode == ContextMode::label_block;
  const std::size_t combos = label ? cfg.label_grid.size() : cfg.side_grid.size();
  std::vector<int> ks = cfg.lz ? std::vector<int>{0} : cfg.ks;
  // (params index, n) -> per-seed top-k values
  std::map<std::pair<std::size_t, int>, std::vector<double>> topk;
  std::vector<std::string> tags(combos);
  for (std::size_t c = 0; c < combos; ++c)
    tags[c] = label ? label_params_tag(cfg.label_grid[c]) : side_params_tag(cfg.side_grid[c]);

  for (std::size_t c = 0; c < combos; ++c) {
    for (int n : cfg.ns) {
      for (int i = 0; i < cfg.seeds; ++i) {
        const std::uint64_t seed = cfg.seed_base + static_cast<std::uint64_t>(i);
        const LabeledStream s = label ? gen_label_block(n, cfg.label_grid[c], stream_seed(seed, n))
                                      : gen_side(n, cfg.side_grid[c], stream_seed(seed, n));
        e.entropy.push_back({n, seed, tags[c], label ? label_conditional_entropy(s) : residual_entropy(s)});
        // The thinnest stream any model sees.
        std::size_t shortest = s.x.size();
        for (std::size_t len : conditional_stream_lengths(s.ctx, cfg.mode))
          if (len > 0) shortest = std::min(shortest, len);
        double best = -INFINITY;
        for (int k : ks) {
          int k_eff = k;
          if (!cfg.lz) {
            if (cfg.auto_clamp_k) k_eff = clamp_k_for_length(k, shortest, cfg.warn_k_ratio);
            if (static_cast<double>(shortest) / std::ldexp(1.0, k_eff) < cfg.warn_k_ratio) ++e.thin_context_warnings;
          }
          const CodeModel model = cfg.lz ? CodeModel{LzModel{cfg.lz_cfg}} : CodeModel{KgramModel{k_eff}};
          PcgRow row;
          row.n = n;
          row.seed = seed;
          row.params = tags[c];
          row.mode = cfg.mode;
          row.model = model_name(model);
          row.k = k;
          row.k_eff = k_eff;
          row.result = pcg(s.x, s.ctx, cfg.mode, model, cfg.clamp_nonneg);
          if (cfg.assert_nonneg_tol && row.result.pcg < -*cfg.assert_nonneg_tol) e.assert_failures.push_back(e.rows.size());
          best = std::max(best, row.result.pcg);
          e.rows.push_back(std::move(row));
        }
        topk[{c, n}].push_back(best);
      }
    }
  }
  for (const auto& [key, vals] : topk)
    e.topk.push_back({tags[key.first], key.second, mean(vals), sample_sd(vals), sem(vals), vals.size()});
  return e;
}

std::string pcg_csv(const PcgExperiment& e) {
  CsvWriter w({"n", "seed", "context_mode", "model", "k", "mdl_bits", "cmdl_bits", "pcg_bits", "clamped", "k_eff",
               "params"});
  for (const auto& r : e.rows)
    w.row({r.n, r.seed, to_string(r.mode), r.model, r.k, r.result.mdl, r.result.cmdl, r.result.pcg,
           r.result.clamped ? 1 : 0, r.k_eff, r.params});
  return w.str();
}

std::string pcg_topk_csv(const PcgExperiment& e) {
  CsvWriter w({"params", "n", "mean_pcg_topk", "std_pcg_topk", "sem_pcg_topk", "count"});
  for (const auto& t : e.topk) w.row({t.params, t.n, t.mean, t.sd, t.sem, t.count});
  return w.str();
}

std::string pcg_scale_csv(const PcgExperiment& e) {
  CsvWriter w({"n", "mean_pcg_topk", "std_pcg_topk", "sem_pcg_topk", "count"});
  for (const auto& t : e.topk) {
    if (t.params != e.topk.front().params) throw std::invalid_argument("scale table needs a single parameter set");
    w.row({t.n, t.mean, t.sd, t.sem, t.count});
  }
  return w.str();
}

std::string entropy_csv(const PcgExperiment& e, const std::string& metric) {
  CsvWriter w({"n", "seed", "params", "metric", "value"});
  for (const auto& r : e.entropy) w.row({r.n, r.seed, r.params, metric, r.value});
  return w.str();
}

}  // namespace xorlab
