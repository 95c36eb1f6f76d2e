#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xorlab/coding.hpp"

namespace xorlab {

/// Bit stream plus its context: label bits (label-block) or a side stream.
struct LabeledStream {
  Bits x;
  Bits ctx;
  ContextMode mode = ContextMode::label_block;
};

struct LabelBlockParams {
  double label_p = 0.03;
  double p0 = 0.35;
  double p1 = 0.65;
  int length_mult = 64;
};

struct SideParams {
  double epsilon = 0.03;
  double p_run = 0.05;
  int max_run = 128;
  int length_mult = 64;
};

struct HistoryParams {
  double eps = 0.05;
  double p_hist = 0.06;
  int max_lag = 3;
  std::size_t length = 0;
  /// Lag set in force after warm-up, as a bitmask (bit l-1 = lag l). 0 draws
  /// it like a refresh does.
  std::uint32_t initial_lags = 0;
};

/// Seed of the stream for (run seed, n). Shared by the PCG and profile
/// experiments so both see the same bits.
std::uint64_t stream_seed(std::uint64_t seed, int n);

/// L = length_mult * n. C_0 is unbiased and C_t flips w.p. label_p;
/// X_t ~ Bernoulli(p1) when C_t = 1, else Bernoulli(p0).
LabeledStream gen_label_block(int n, const LabelBlockParams& params, std::uint64_t seed);

/// Run-structured side stream S (switch w.p. p_run per step, forced switch
/// once a run reaches max_run) and X = S xor Bernoulli(epsilon).
LabeledStream gen_side(int n, const SideParams& params, std::uint64_t seed);

/// Parity history x_t = (xor_{l in T} x_{t-l}) xor Bernoulli(eps) after a
/// warm-up of max_lag unbiased bits. With probability p_hist per step the lag
/// set is refreshed to a single lag drawn uniformly from {1..max_lag}.
Bits gen_parity_history(const HistoryParams& params, std::uint64_t seed);

/// Plug-in w0 H2(X | C=0) + w1 H2(X | C=1).
double label_conditional_entropy(const LabeledStream& s);
/// Plug-in H2 of the residual X xor S.
double residual_entropy(const LabeledStream& s);
double binary_entropy(double p);

struct SprConfig {
  std::vector<int> ns;
  int seeds = 0;
  std::uint64_t seed_base = 0;
  int kmax = 8;
  double eps = 0.05;
  double p_hist = 0.06;
  int max_lag = 3;
  int length_mult = 32;
};

struct SprRow {
  int n = 0;
  std::uint64_t seed = 0;
  int k = 0;
  double logloss = 0;  // bits per symbol
};

struct SprAggregate {
  int n = 0;
  int k = 0;
  double mean = 0;
  double sem = 0;
  std::size_t count = 0;
};

struct SprExperiment {
  std::vector<SprRow> rows;
  std::vector<SprAggregate> aggregates;
};

SprExperiment spr_experiment(const SprConfig& cfg);
std::string spr_csv(const SprExperiment& e);
std::string spr_aggregate_csv(const SprExperiment& e);

struct PcgConfig {
  std::vector<int> ns;
  int seeds = 0;
  std::uint64_t seed_base = 0;
  ContextMode mode = ContextMode::label_block;
  bool lz = false;                   // model lz instead of kgram
  std::vector<int> ks{0, 2, 4, 8};   // kgram orders
  Lz78Config lz_cfg;
  std::vector<LabelBlockParams> label_grid{LabelBlockParams{}};
  std::vector<SideParams> side_grid{SideParams{}};
  double warn_k_ratio = 16;
  bool auto_clamp_k = false;
  bool clamp_nonneg = false;
  std::optional<double> assert_nonneg_tol;
};

struct PcgRow {
  int n = 0;
  std::uint64_t seed = 0;
  std::string params;  // "label_p=..;p0=..;p1=.." or "epsilon=..;p_run=..;max_run=.."
  ContextMode mode = ContextMode::label_block;
  std::string model;
  int k = 0;      // requested order
  int k_eff = 0;  // after auto-clamp
  PcgResult result;
};

struct PcgTopk {
  std::string params;
  int n = 0;
  double mean = 0, sd = 0, sem = 0;
  std::size_t count = 0;
};

struct EntropyRow {
  int n = 0;
  std::uint64_t seed = 0;
  std::string params;
  double value = 0;
};

struct PcgExperiment {
  std::vector<PcgRow> rows;
  std::vector<PcgTopk> topk;        // per (params, n): max over k per seed, then mean/sd/sem
  std::vector<EntropyRow> entropy;  // label conditional or side residual entropy
  std::size_t thin_context_warnings = 0;
  std::vector<std::size_t> assert_failures;  // indices into rows
};

std::string label_params_tag(const LabelBlockParams& p);
std::string side_params_tag(const SideParams& p);

PcgExperiment pcg_experiment(const PcgConfig& cfg);

/// n,seed,context_mode,model,k,mdl_bits,cmdl_bits,pcg_bits,clamped,k_eff,params
std::string pcg_csv(const PcgExperiment& e);
/// params,n,mean_pcg_topk,std_pcg_topk,sem_pcg_topk,count
std::string pcg_topk_csv(const PcgExperiment& e);
/// n,mean_pcg_topk,std_pcg_topk,sem_pcg_topk,count for a single parameter set.
std::string pcg_scale_csv(const PcgExperiment& e);
std::string entropy_csv(const PcgExperiment& e, const std::string& metric);

}  // namespace xorlab
