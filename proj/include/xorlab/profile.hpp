#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "xorlab/coding.hpp"
#include "xorlab/csv.hpp"
#include "xorlab/sources.hpp"

namespace xorlab {

constexpr int kDefaultWindow = 8;
constexpr std::size_t kMinWindowsPerStream = 64;

/// Empirical mod-q spectrum of the window function. The stream is cut into
/// M = |x| / window non-overlapping windows; bits sit in Z_q as {0, 1}.
/// level_mass[l] = sum over a in Z_q^window with |supp(a)| = l of |c_a|^2,
/// c_a = (1/M) sum_w omega_q^<a, w>.
struct ModqSpectrum {
  int q = 2;
  int window = kDefaultWindow;
  std::size_t windows = 0;
  std::vector<double> level_mass;
};

/// Throws InsufficientData if |x| < 64 window, std::invalid_argument for
/// q < 2 or window outside [1, 12].
ModqSpectrum modq_spectrum(std::span<const std::uint8_t> x, int q, int window = kDefaultWindow);

/// Cumulative mass at k = 0..kmax (entry 0 is 0; level 0 is excluded).
std::vector<double> modq_mass_profile(std::span<const std::uint8_t> x, int q, int kmax, int window = kDefaultWindow);
std::vector<double> cumulative_mass(const ModqSpectrum& s, int kmax);

/// sum_{l <= kmax} rho^l level_mass[l] over q = 2 characters, level 0 included.
double stream_stability(std::span<const std::uint8_t> x, double rho, int kmax, int window = kDefaultWindow);
double spectral_stability(const ModqSpectrum& s, double rho, int kmax);

struct ProfileConfig {
  std::vector<int> ns;
  int seeds = 0;
  std::uint64_t seed_base = 0;
  ContextMode mode = ContextMode::label_block;
  std::vector<LabelBlockParams> label_grid{LabelBlockParams{}};
  std::vector<SideParams> side_grid{SideParams{}};
  std::vector<int> qs{2, 3, 5};
  std::vector<int> kmax_values{6};
  std::vector<double> rhos{0.1, 0.2};
  int window = kDefaultWindow;
};

struct MassRow {
  std::string context;
  int n = 0;
  std::uint64_t seed = 0;
  int q = 0;
  int k = 0;
  int degree_cap = 0;
  double value = 0;
};

struct StabilityRow {
  std::string context;
  int n = 0;
  std::uint64_t seed = 0;
  double rho = 0;
  double value = 0;
};

/// One block per grid point; streams match those of pcg_experiment for the
/// same (params, n, seed).
struct ProfileBlock {
  std::string params;
  std::vector<MassRow> mass;
  std::vector<StabilityRow> stability;
};

std::vector<ProfileBlock> profile_experiment(const ProfileConfig& cfg);

/// context,n,seed,q,k,degree_cap,metric,value (metric = cumulative_mass)
std::string mass_csv(const ProfileBlock& b);
/// context,n,seed,rho,metric,value (metric = stability)
std::string stability_csv(const ProfileBlock& b);

struct CorrRow {
  std::string metric;
  std::string param;
  double r = 0;
  std::size_t count = 0;
};

/// Joins per-seed top-k PCG (max over k of pcg_bits, from a pcg_estimate
/// table) with mass and stability tables on (context, n, seed) and returns
/// Pearson r per (metric, parameter). Parameters whose columns have zero
/// variance are skipped. Throws InsufficientData if nothing joins.
std::vector<CorrRow> corr_with_pcg(const CsvTable& pcg, const CsvTable& mass, const CsvTable& stability,
                                   const std::string& context);
/// metric,param,r,count
std::string corr_csv(const std::vector<CorrRow>& rows);

}  // namespace xorlab
