#include "xorlab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "xorlab/errors.hpp"
#include "xorlab/stats.hpp"

namespace xorlab {

ModqSpectrum modq_spectrum(std::span<const std::uint8_t> x, int q, int window) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  if (window < 1 || window > 12) throw std::invalid_argument("window must lie in [1, 12]");
  if (x.size() < kMinWindowsPerStream * static_cast<std::size_t>(window))
    throw InsufficientData("stream shorter than 64 windows");

  const std::size_t M = x.size() / static_cast<std::size_t>(window);
  std::size_t size = 1;
  for (int i = 0; i < window; ++i) size *= static_cast<std::size_t>(q);

  // Empirical window distribution placed on {0,1}^window inside Z_q^window.
  // Coordinate i of an index is its i-th base-q digit.
  std::vector<std::complex<double>> t(size);
  for (std::size_t w = 0; w < M; ++w) {
    std::size_t idx = 0, stride = 1;
    for (int i = 0; i < window; ++i, stride *= static_cast<std::size_t>(q))
      if (x[w * window + static_cast<std::size_t>(i)] & 1U) idx += stride;
    t[idx] += 1.0 / static_cast<double>(M);
  }

  std::vector<std::complex<double>> roots(static_cast<std::size_t>(q));
  for (int j = 0; j < q; ++j) roots[static_cast<std::size_t>(j)] = std::polar(1.0, 2 * std::numbers::pi * j / q);

  // Separable DFT, one axis at a time.
  std::vector<std::complex<double>> in(static_cast<std::size_t>(q)), out(static_cast<std::size_t>(q));
  std::size_t stride = 1;
  for (int axis = 0; axis < window; ++axis, stride *= static_cast<std::size_t>(q)) {
    const std::size_t block = stride * static_cast<std::size_t>(q);
    for (std::size_t base = 0; base < size; base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        for (int v = 0; v < q; ++v) in[static_cast<std::size_t>(v)] = t[base + off + static_cast<std::size_t>(v) * stride];
        for (int a = 0; a < q; ++a) {
          std::complex<double> acc = 0;
          for (int v = 0; v < q; ++v) acc += in[static_cast<std::size_t>(v)] * roots[static_cast<std::size_t>((a * v) % q)];
          out[static_cast<std::size_t>(a)] = acc;
        }
        for (int a = 0; a < q; ++a) t[base + off + static_cast<std::size_t>(a) * stride] = out[static_cast<std::size_t>(a)];
      }
    }
  }

  ModqSpectrum s;
  s.q = q;
  s.window = window;
  s.windows = M;
  s.level_mass.assign(static_cast<std::size_t>(window) + 1, 0.0);
  for (std::size_t idx = 0; idx < size; ++idx) {
    int support = 0;
    for (std::size_t r = idx; r > 0; r /= static_cast<std::size_t>(q))
      if (r % static_cast<std::size_t>(q) != 0) ++support;
    s.level_mass[static_cast<std::size_t>(support)] += std::norm(t[idx]);
  }
  return s;
}

std::vector<double> cumulative_mass(const ModqSpectrum& s, int kmax) {
  if (kmax < 0 || kmax > s.window) throw std::invalid_argument("kmax must lie in [0, window]");
  std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
  for (int k = 1; k <= kmax; ++k) out[static_cast<std::size_t>(k)] = out[static_cast<std::size_t>(k) - 1] + s.level_mass[static_cast<std::size_t>(k)];
  return out;
}

std::vector<double> modq_mass_profile(std::span<const std::uint8_t> x, int q, int kmax, int window) {
  return cumulative_mass(modq_spectrum(x, q, window), kmax);
}

double spectral_stability(const ModqSpectrum& s, double rho, int kmax) {
  if (s.q != 2) throw std::invalid_argument("stability uses the q = 2 spectrum");
  if (!(rho >= -1 && rho <= 1)) throw std::invalid_argument("rho must lie in [-1, 1]");
  if (kmax < 0 || kmax > s.window) throw std::invalid_argument("kmax must lie in [0, window]");
  double acc = 0, w = 1;
  for (int l = 0; l <= kmax; ++l, w *= rho) acc += w * s.level_mass[static_cast<std::size_t>(l)];
  return acc;
}

double stream_stability(std::span<const std::uint8_t> x, double rho, int kmax, int window) {
  return spectral_stability(modq_spectrum(x, 2, window), rho, kmax);
}

std::vector<ProfileBlock> profile_experiment(const ProfileConfig& cfg) {
  const bool label = cfg.mode == ContextMode::label_block;
  const std::size_t combos = label ? cfg.label_grid.size() : cfg.side_grid.size();
  const std::string context = to_string(cfg.mode);
  for (int k : cfg.kmax_values)
    if (k < 0 || k > cfg.window) throw std::invalid_argument("kmax value must lie in [0, window]");
  std::vector<ProfileBlock> blocks;
  for (std::size_t c = 0; c < combos; ++c) {
    ProfileBlock b;
    b.params = label ? label_params_tag(cfg.label_grid[c]) : side_params_tag(cfg.side_grid[c]);
    for (int n : cfg.ns) {
      for (int i = 0; i < cfg.seeds; ++i) {
        const std::uint64_t seed = cfg.seed_base + static_cast<std::uint64_t>(i);
        const LabeledStream s = label ? gen_label_block(n, cfg.label_grid[c], stream_seed(seed, n))
                                      : gen_side(n, cfg.side_grid[c], stream_seed(seed, n));
        ModqSpectrum binary;
        bool have_binary = false;
        for (int q : cfg.qs) {
          const ModqSpectrum spec = modq_spectrum(s.x, q, cfg.window);
          if (q == 2) {
            binary = spec;
            have_binary = true;
          }
          for (int cap : cfg.kmax_values) {
            const auto cum = cumulative_mass(spec, cap);
            for (int k = 1; k <= cap; ++k) b.mass.push_back({context, n, seed, q, k, cap, cum[static_cast<std::size_t>(k)]});
          }
        }
        if (!have_binary) binary = modq_spectrum(s.x, 2, cfg.window);
        const int cap = cfg.kmax_values.empty() ? cfg.window : cfg.kmax_values.back();
        for (double rho : cfg.rhos) b.stability.push_back({context, n, seed, rho, spectral_stability(binary, rho, cap)});
      }
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

std::string mass_csv(const ProfileBlock& b) {
  CsvWriter w({"context", "n", "seed", "q", "k", "degree_cap", "metric", "value"});
  for (const auto& r : b.mass) w.row({r.context, r.n, r.seed, r.q, r.k, r.degree_cap, "cumulative_mass", r.value});
  return w.str();
}

std::string stability_csv(const ProfileBlock& b) {
  CsvWriter w({"context", "n", "seed", "rho", "metric", "value"});
  for (const auto& r : b.stability) w.row({r.context, r.n, r.seed, r.rho, "stability", r.value});
  return w.str();
}

namespace {

using JoinKey = std::tuple<std::string, long long, unsigned long long>;

double to_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("not a number: " + s);
  return v;
}

JoinKey key_of(const CsvTable& t, const std::vector<std::string>& row, std::size_t ctx_col) {
  return {row[ctx_col], std::stoll(row[t.column("n")]), std::stoull(row[t.column("seed")])};
}

}  // namespace

std::vector<CorrRow> corr_with_pcg(const CsvTable& pcg, const CsvTable& mass, const CsvTable& stability,
                                   const std::string& context) {
  // Per-seed top-k PCG. A table mixing several parameter sets cannot be
  // joined on (context, n, seed) alone.
  std::map<JoinKey, double> top;
  std::map<JoinKey, std::string> params_of;
  const std::size_t pcg_ctx = pcg.column("context_mode");
  const std::size_t pcg_val = pcg.column("pcg_bits");
  std::size_t pcg_params = pcg.header.size();
  for (std::size_t i = 0; i < pcg.header.size(); ++i)
    if (pcg.header[i] == "params") pcg_params = i;
  for (const auto& row : pcg.rows) {
    if (row[pcg_ctx] != context) continue;
    const JoinKey key = key_of(pcg, row, pcg_ctx);
    const std::string params = pcg_params < row.size() ? row[pcg_params] : "";
    auto [it, fresh] = params_of.emplace(key, params);
    if (!fresh && it->second != params) throw std::invalid_argument("PCG table mixes parameter sets for one seed");
    const double v = to_double(row[pcg_val]);
    auto [t, inserted] = top.emplace(key, v);
    if (!inserted) t->second = std::max(t->second, v);
  }

  // (metric, param) -> joined (pcg, value) pairs, in key order.
  std::map<std::pair<std::string, std::string>, std::pair<std::vector<double>, std::vector<double>>> series;
  auto add = [&](const std::string& metric, const std::string& param, const JoinKey& key, double v) {
    const auto it = top.find(key);
    if (it == top.end()) return;
    auto& s = series[{metric, param}];
    s.first.push_back(it->second);
    s.second.push_back(v);
  };
  {
    const std::size_t c = mass.column("context");
    for (const auto& row : mass.rows) {
      if (row[c] != context) continue;
      const std::string param = "q=" + row[mass.column("q")] + ";k=" + row[mass.column("k")] +
                                ";degree_cap=" + row[mass.column("degree_cap")];
      add(row[mass.column("metric")], param, key_of(mass, row, c), to_double(row[mass.column("value")]));
    }
  }
  {
    const std::size_t c = stability.column("context");
    for (const auto& row : stability.rows) {
      if (row[c] != context) continue;
      add(row[stability.column("metric")], "rho=" + row[stability.column("rho")], key_of(stability, row, c),
          to_double(row[stability.column("value")]));
    }
  }
  std::vector<CorrRow> out;
  for (const auto& [key, s] : series) {
    if (s.first.size() < 2) continue;
    try {
      out.push_back({key.first, key.second, pearson_r(s.first, s.second), s.first.size()});
    } catch (const UndefinedCorrelation&) {
    }
  }
  if (series.empty()) throw InsufficientData("no profile rows join the PCG table");
  return out;
}

std::string corr_csv(const std::vector<CorrRow>& rows) {
  CsvWriter w({"metric", "param", "r", "count"});
  for (const auto& r : rows) w.row({r.metric, r.param, r.r, r.count});
  return w.str();
}

}  // namespace xorlab
